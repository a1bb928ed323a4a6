"""Once-extended assignments: groupoid-valued boundaries, profunctors for
cobordisms, coend composition, and natural-transformation matrices for
windows.

A profunctor here is contravariant on the left: `lact[(g, b)]` transports a
basis element of (tgt g, y) to one of (src g, y), and `ract[(b, h)]`
transports (x, src h) to (x, tgt h).  For a cobordism the basis over a pair
of boundary colourings is the set of classes of fillings relative to the
boundary, and the transports act by expanding boundary homotopies with
identities on the interior.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .colouring import Colouring, enumerate_relative, value_of_ref
from .errors import BoundaryError
from .finalg.crossed import CrossedComplex
from .homotopy import (
    CrsResult,
    crs_pi1,
    holonomy_act,
    invert_homotopy,
    rel_classes,
)
from .simpset import Stratification, Window
from .tqft import theta_product, _counts


@dataclass
class Profunctor:
    left: CrsResult
    right: CrsResult
    basis: dict  # (li, ri) -> tuple of element ids
    lact: dict  # (left arrow, elem) -> elem
    ract: dict  # (elem, right arrow) -> elem
    sizes: dict = field(default_factory=dict)  # elem -> class size (cobordism case)
    reps: dict = field(default_factory=dict)  # elem -> representative filling or node
    members: dict = field(default_factory=dict)  # elem -> class member nodes (coend case)

    def pairs(self):
        return sorted(self.basis)

    def elements(self):
        return tuple(e for p in self.pairs() for e in self.basis[p])

    def dim(self, li, ri):
        return len(self.basis.get((li, ri), ()))

    def transport(self, eta, b, zeta):
        """basis(tgt eta, src zeta) -> basis(src eta, tgt zeta)."""
        return self.ract[(self.lact[(eta, b)], zeta)]

    def check_functorial(self) -> bool:
        GL, GR = self.left.groupoid, self.right.groupoid
        for (li, ri), els in self.basis.items():
            for b in els:
                if self.lact[(GL.ident[li], b)] != b:
                    return False
                if self.ract[(b, GR.ident[ri])] != b:
                    return False
        for g1 in GL.arrows:
            for g2 in GL.arrows:
                if GL.tgt[g1] != GL.src[g2]:
                    continue
                g12 = GL.comp(g1, g2)
                for ri in GR.objects:
                    for b in self.basis.get((GL.tgt[g2], ri), ()):
                        if self.lact[(g12, b)] != self.lact[(g1, self.lact[(g2, b)])]:
                            return False
        for h1 in GR.arrows:
            for h2 in GR.arrows:
                if GR.tgt[h1] != GR.src[h2]:
                    continue
                h12 = GR.comp(h1, h2)
                for li in GL.objects:
                    for b in self.basis.get((li, GR.src[h1]), ()):
                        if self.ract[(b, h12)] != self.ract[(self.ract[(b, h1)], h2)]:
                            return False
        for g in GL.arrows:
            for h in GR.arrows:
                for b in self.basis.get((GL.tgt[g], GR.src[h]), ()):
                    if self.ract[(self.lact[(g, b)], h)] != self.lact[(g, self.ract[(b, h)])]:
                        return False
        return True


def identity_profunctor(crs: CrsResult) -> Profunctor:
    """The hom profunctor of a groupoid: basis(x, y) = arrows x -> y."""
    G = crs.groupoid
    basis = {
        (x, y): tuple(G.arrows_between(x, y)) for x in G.objects for y in G.objects
    }
    lact, ract = {}, {}
    for g in G.arrows:
        for (x, y), els in basis.items():
            for b in els:
                if G.tgt[g] == x:
                    lact[(g, b)] = G.comp(g, b)
                if G.src[g] == y:
                    ract[(b, g)] = G.comp(b, g)
    sizes = {b: 1 for els in basis.values() for b in els}
    return Profunctor(crs, crs, basis, lact, ract, sizes)


def cobordism_profunctor(M: Stratification, A: CrossedComplex) -> Profunctor:
    """The profunctor of a stratified cobordism with tagged in/out boundaries."""
    X = M.simpset
    in_gens, out_gens = M.tagged("in"), M.tagged("out")
    if in_gens & out_gens:
        raise BoundaryError("in and out subcomplexes must be disjoint")
    sub_in, sub_out = X.restrict(in_gens), X.restrict(out_gens)
    left, right = crs_pi1(sub_in, A), crs_pi1(sub_out, A)
    boundary = in_gens | out_gens
    basis, sizes, reps = {}, {}, {}
    class_of_key = {}
    for li, f in enumerate(left.colourings):
        for ri, fp in enumerate(right.colourings):
            fixed = dict(f.values)
            fixed.update(fp.values)
            fillings = enumerate_relative(X, A, fixed)
            classes, class_of = rel_classes(X, A, boundary, fillings)
            ids = []
            for ci, members in enumerate(classes):
                eid = (li, ri, ci)
                ids.append(eid)
                sizes[eid] = len(members)
                reps[eid] = fillings[members[0]]
            basis[(li, ri)] = tuple(ids)
            for key, ci in class_of.items():
                class_of_key[(li, ri, key)] = (li, ri, ci)
    lact, ract = {}, {}
    for eta in left.groupoid.arrows:
        si, ti = eta[0], eta[1]
        seq = left.arrow_reps[eta]
        for ri in right.groupoid.objects:
            for b in basis[(ti, ri)]:
                moved = holonomy_act(X, A, in_gens, seq, reps[b])
                lact[(eta, b)] = class_of_key[(si, ri, moved.key())]
    for zeta in right.groupoid.arrows:
        si, ti = zeta[0], zeta[1]
        inv_seq = invert_homotopy(right.arrow_reps[zeta])
        for li in left.groupoid.objects:
            for b in basis[(li, si)]:
                moved = holonomy_act(X, A, out_gens, inv_seq, reps[b])
                ract[(b, zeta)] = class_of_key[(li, ti, moved.key())]
    return Profunctor(left, right, basis, lact, ract, sizes, reps)


def _aligned(crs1: CrsResult, crs2: CrsResult) -> bool:
    keys1 = [c.key() for c in crs1.colourings]
    keys2 = [c.key() for c in crs2.colourings]
    return keys1 == keys2 and set(crs1.groupoid.arrows) == set(crs2.groupoid.arrows)


def reverse_profunctor(P: Profunctor) -> Profunctor:
    """The reverse profunctor, transporting along inverted arrows."""
    GL, GR = P.left.groupoid, P.right.groupoid
    basis = {(y, x): els for (x, y), els in P.basis.items()}
    lact, ract = {}, {}
    for h in GR.arrows:
        hinv = GR.inv(h)
        for (x, y), els in P.basis.items():
            if GR.tgt[h] != y:
                continue
            for b in els:
                lact[(h, b)] = P.ract[(b, hinv)]
    for g in GL.arrows:
        ginv = GL.inv(g)
        for (x, y), els in P.basis.items():
            if GL.src[g] != x:
                continue
            for b in els:
                ract[(b, g)] = P.lact[(ginv, b)]
    return Profunctor(P.right, P.left, basis, lact, ract, dict(P.sizes), dict(P.reps))


def compose_profunctors(P: Profunctor, Q: Profunctor) -> Profunctor:
    """Coend composite over the middle groupoid, by orbit identification."""
    if not _aligned(P.right, Q.left):
        raise BoundaryError("middle groupoids do not match")
    GL, GM, GR = P.left.groupoid, P.right.groupoid, Q.right.groupoid
    basis, lact, ract = {}, {}, {}
    node_class: dict = {}
    class_reps: dict = {}
    class_members: dict = {}
    for x in GL.objects:
        for z in GR.objects:
            nodes = []
            for y in GM.objects:
                for p in P.basis.get((x, y), ()):
                    for q in Q.basis.get((y, z), ()):
                        nodes.append((y, p, q))
            parent = {n: n for n in nodes}

            def find(n):
                while parent[n] != n:
                    parent[n] = parent[parent[n]]
                    n = parent[n]
                return n

            def union(a, b):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

            for h in GM.arrows:
                y1, y2 = GM.src[h], GM.tgt[h]
                for p in P.basis.get((x, y1), ()):
                    ph = P.ract[(p, h)]
                    for q in Q.basis.get((y2, z), ()):
                        hq = Q.lact[(h, q)]
                        union((y2, ph, q), (y1, p, hq))
            classes: dict = {}
            for n in nodes:
                classes.setdefault(find(n), []).append(n)
            ids = []
            for ci, root in enumerate(sorted(classes)):
                eid = (x, z, ci)
                ids.append(eid)
                class_reps[eid] = root
                class_members[eid] = tuple(sorted(classes[root]))
                for n in classes[root]:
                    node_class[(x, z, n)] = eid
            basis[(x, z)] = tuple(ids)
    for g in GL.arrows:
        for (x, z), ids in basis.items():
            if GL.tgt[g] != x:
                continue
            for eid in ids:
                y, p, q = class_reps[eid]
                lact[(g, eid)] = node_class[(GL.src[g], z, (y, P.lact[(g, p)], q))]
    for k in GR.arrows:
        for (x, z), ids in basis.items():
            if GR.src[k] != z:
                continue
            for eid in ids:
                y, p, q = class_reps[eid]
                ract[(eid, k)] = node_class[(x, GR.tgt[k], (y, p, Q.ract[(q, k)]))]
    return Profunctor(
        P.left, Q.right, basis, lact, ract, reps=class_reps, members=class_members
    )


def profunctor_iso_check(P: Profunctor, Q: Profunctor):
    """Equivariant family of basis bijections, or None.

    Requires identical boundary groupoids (same object and arrow ids).
    Images propagate through the transports, so the search branches only
    over orbit representatives.
    """
    GL, GR = P.left.groupoid, Q.left.groupoid
    if set(GL.arrows) != set(Q.left.groupoid.arrows):
        return None
    if set(P.right.groupoid.arrows) != set(Q.right.groupoid.arrows):
        return None
    for pair in set(P.basis) | set(Q.basis):
        if len(P.basis.get(pair, ())) != len(Q.basis.get(pair, ())):
            return None

    moves = []  # (pair, elem) -> (pair', elem') generators of the transport action
    GRo = P.right.groupoid

    def p_moves(pf, b, pair):
        out = []
        x, y = pair
        for g in GL.arrows:
            if GL.tgt[g] == x:
                out.append(((GL.src[g], y), pf.lact[(g, b)]))
        for h in GRo.arrows:
            if GRo.src[h] == y:
                out.append(((x, GRo.tgt[h]), pf.ract[(b, h)]))
        return out

    assignment = {}

    def propagate(pair, b, image):
        """Close the candidate under all transports; roll back on clash."""
        stack = [(pair, b, image)]
        added = []
        while stack:
            pr, e, im = stack.pop()
            if (pr, e) in assignment:
                if assignment[(pr, e)] != (pr, im):
                    for key in added:
                        del assignment[key]
                    return None
                continue
            assignment[(pr, e)] = (pr, im)
            added.append((pr, e))
            x, y = pr
            for g in GL.arrows:
                if GL.tgt[g] == x:
                    stack.append(((GL.src[g], y), P.lact[(g, e)], Q.lact[(g, im)]))
            for h in GRo.arrows:
                if GRo.src[h] == y:
                    stack.append(((x, GRo.tgt[h]), P.ract[(e, h)], Q.ract[(im, h)]))
        return added

    slots = [(pair, e) for pair in sorted(P.basis) for e in P.basis[pair]]

    def injective():
        images = set()
        for (pr, e), (pr2, im) in assignment.items():
            if (pr2, im) in images:
                return False
            images.add((pr2, im))
        return True

    def backtrack(k):
        while k < len(slots) and slots[k] in assignment:
            k += 1
        if k == len(slots):
            return injective()
        pair, e = slots[k]
        used = {im for (pr, _), (pr2, im) in assignment.items() if pr2 == pair}
        for im in Q.basis[pair]:
            if im in used:
                continue
            added = propagate(pair, e, im)
            if added is None:
                continue
            if injective() and backtrack(k + 1):
                return True
            for key in added:
                del assignment[key]
        return False

    if backtrack(0):
        return {slot: assignment[slot][1] for slot in slots}
    return None


# -- natural transformations -------------------------------------------------------


@dataclass
class NatTransform:
    top: Profunctor
    bottom: Profunctor
    blocks: dict  # (li, ri) -> matrix: rows top basis, cols bottom basis

    def entry(self, pair, i, j):
        return self.blocks[pair][i][j]

    def is_identity(self) -> bool:
        for pair, m in self.blocks.items():
            tb, bb = self.top.basis[pair], self.bottom.basis[pair]
            if len(tb) != len(bb):
                return False
            for i in range(len(tb)):
                for j in range(len(bb)):
                    if m[i][j] != Fraction(int(i == j)):
                        return False
        return True

    def naturality_check(self) -> bool:
        """phi(transported b) against transported phi(b), over all arrow pairs."""
        GL = self.top.left.groupoid
        GR = self.top.right.groupoid
        tindex = {
            (pair, b): i for pair in self.top.basis for i, b in enumerate(self.top.basis[pair])
        }
        bindex = {
            (pair, b): j
            for pair in self.bottom.basis
            for j, b in enumerate(self.bottom.basis[pair])
        }
        for eta in GL.arrows:
            for zeta in GR.arrows:
                src_pair = (GL.tgt[eta], GR.src[zeta])
                dst_pair = (GL.src[eta], GR.tgt[zeta])
                for b in self.top.basis.get(src_pair, ()):
                    tb = self.top.transport(eta, b, zeta)
                    for bp in self.bottom.basis.get(src_pair, ()):
                        tbp = self.bottom.transport(eta, bp, zeta)
                        lhs = self.blocks[dst_pair][tindex[(dst_pair, tb)]][
                            bindex[(dst_pair, tbp)]
                        ]
                        rhs = self.blocks[src_pair][tindex[(src_pair, b)]][
                            bindex[(src_pair, bp)]
                        ]
                        if lhs != rhs:
                            return False
        return True


def _frame_assignment(W: Window, A, H_top: Colouring, H_bottom: Colouring) -> dict:
    """Fixed values on the frame of W from fillings of its top and bottom."""
    fixed = {}

    def put(g, v):
        if g in fixed and fixed[g] != v:
            raise BoundaryError("inconsistent frame colouring")
        fixed[g] = v

    top_simp = W.top_cob.simpset
    bottom_simp = W.bottom_cob.simpset
    for g, zg in W.top_map.items():
        if top_simp.dim_of[g] >= 2 and top_simp.dim_of[g] > A.truncation:
            continue
        put(zg, H_top.values[g])
    for g, zg in W.bottom_map.items():
        if bottom_simp.dim_of[g] >= 2 and bottom_simp.dim_of[g] > A.truncation:
            continue
        put(zg, H_bottom.values[g])
    for proj in (W.east_proj, W.west_proj):
        for zg, ref in proj.items():
            d = W.simpset.dim_of[zg]
            if d >= 2 and d > A.truncation:
                continue
            put(zg, value_of_ref(top_simp, A, H_top.values, ref))
    return fixed


def window_nat_transform(W: Window, A: CrossedComplex) -> NatTransform:
    """Matrix blocks of the 2-cell of a window, per boundary colouring pair.

    The entry at (class of top filling H, class of bottom filling H') is the
    count of fillings of the window support extending the frame colouring
    assembled from H and H' (sides extended constantly), weighted by the
    relative Theta product of the support and the content of the class of H'
    relative to the boundary.
    """
    top = cobordism_profunctor(W.top_cob, A)
    bottom = cobordism_profunctor(W.bottom_cob, A)
    if not _aligned(top.left, bottom.left) or not _aligned(top.right, bottom.right):
        raise BoundaryError("window top and bottom have different boundaries")
    Z = W.simpset
    frame = W.frame_gens()
    theta_support = theta_product(A, _counts(Z, frame))
    bottom_rel = theta_product(
        A, _counts(W.bottom_cob.simpset, W.bottom_cob.boundary_gens())
    )
    blocks = {}
    for pair in top.pairs():
        rows, cols = top.basis[pair], bottom.basis[pair]
        m = []
        for b in rows:
            H_t = top.reps[b]
            row = []
            for bp in cols:
                H_b = bottom.reps[bp]
                fixed = _frame_assignment(W, A, H_t, H_b)
                n = len(enumerate_relative(Z, A, fixed))
                row.append(n * theta_support * bottom.sizes[bp] * bottom_rel)
            m.append(row)
        blocks[pair] = m
    return NatTransform(top, bottom, blocks)


def vertical_compose_nat(a: NatTransform, b: NatTransform) -> NatTransform:
    """Blockwise matrix product of 2-cells sharing their middle profunctor."""
    for pair in a.bottom.basis:
        if a.bottom.basis[pair] != b.top.basis.get(pair, ()):
            raise BoundaryError("middle profunctors of the 2-cells do not match")
    blocks = {}
    for pair, rows in a.top.basis.items():
        mids, cols = a.bottom.basis[pair], b.bottom.basis[pair]
        blocks[pair] = [
            [
                sum(a.blocks[pair][i][k] * b.blocks[pair][k][j] for k in range(len(mids)))
                for j in range(len(cols))
            ]
            for i in range(len(rows))
        ]
    return NatTransform(a.top, b.bottom, blocks)


def horizontal_compose_nat(a: NatTransform, b: NatTransform) -> NatTransform:
    """2-cell between composite profunctors, entrywise over the coend classes.

    An entry sums the products of the factor entries over the members of the
    column class that share the middle object of the row representative.
    """
    top = compose_profunctors(a.top, b.top)
    bottom = compose_profunctors(a.bottom, b.bottom)

    def block_entry(nt, pair, r, c):
        ri = nt.top.basis[pair].index(r)
        ci = nt.bottom.basis[pair].index(c)
        return nt.blocks[pair][ri][ci]

    blocks = {}
    for pair, rows in top.basis.items():
        x, z = pair
        cols = bottom.basis[pair]
        m = []
        for row in rows:
            y, p, q = top.reps[row]
            out_row = []
            for col in cols:
                total = Fraction(0)
                for (y2, p2, q2) in bottom.members[col]:
                    if y2 != y:
                        continue
                    total += block_entry(a, (x, y), p, p2) * block_entry(b, (y, z), q, q2)
                out_row.append(total)
            m.append(out_row)
        blocks[pair] = m
    return NatTransform(top, bottom, blocks)


def decategorified_matrix(P: Profunctor, M: Stratification, A) -> list:
    """Class-pair matrix of filling counts weighted as the state sum at s=0."""
    theta_rel = theta_product(A, _counts(M.simpset, M.boundary_gens()))
    theta_out = theta_product(A, _counts(M.simpset.restrict(M.tagged("out"))))
    lcomps = P.left.components()
    rcomps = P.right.components()
    out = []
    for lc in lcomps:
        row = []
        for rc in rcomps:
            li, ri = lc[0], rc[0]
            n = sum(P.sizes[b] for b in P.basis[(li, ri)])
            row.append(n * theta_rel * len(rc) * theta_out)
        out.append(row)
    return out
