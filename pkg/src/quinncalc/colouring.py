"""Colourings of finite simplicial sets by finite crossed complexes.

A colouring assigns an object to each vertex generator, a compatible arrow
to each edge generator and, for 2 <= n <= truncation, a level-n element to
each n-generator whose boundary equals the homotopy addition label of its
faces.  Degenerate simplices implicitly carry identities.

Adopted homotopy addition convention (gated by the nerve-count oracles in
the test suite):
    n=2:   f(d2 c) . f(d0 c) . f(d1 c)^-1
    n=3:   (f(d0 c) <| f(01)^-1) . f(d2 c) . f(d1 c)^-1 . f(d3 c)^-1
    n>=4:  (f(d0 c) <| f(01)^-1) . prod_{j=1..n} f(dj c)^((-1)^j)
where f(01) is the value on the leading edge d_2 d_3 ... d_n c.
"""
from __future__ import annotations

from .errors import BoundaryError
from .finalg.crossed import CrossedComplex
from .simpset import SimpSet, SimplexRef


class Colouring:
    """Values on the nondegenerate generators of X, one level at a time."""

    def __init__(self, X: SimpSet, A: CrossedComplex, values: dict):
        self.X = X
        self.A = A
        self.values = values  # gen -> object | arrow | (obj, element)

    def value(self, g):
        return self.values[g]

    def base_obj(self, g):
        """Image of the leading vertex of the generator g."""
        return self.values[self.X.initial_vertex(g)]

    def value_of_ref(self, ref: SimplexRef):
        """Value on a possibly degenerate simplex (identities on degeneracies)."""
        return value_of_ref(self.X, self.A, self.values, ref)

    def key(self):
        return colouring_key(self.X, self.A, self.values)

    def restrict(self, gens) -> dict:
        return {g: self.values[g] for g in gens}

    def as_dict(self):
        levels: dict[str, dict] = {}
        verts = {}
        for g in self.X.all_gens():
            d = self.X.dim_of[g]
            if d >= 2 and d > self.A.truncation:
                continue
            if d == 0:
                verts[str(g)] = self.values[g]
            elif d == 1:
                levels.setdefault("1", {})[str(g)] = self.values[g]
            else:
                levels.setdefault(str(d), {})[str(g)] = self.values[g][1]
        return {"vertices": verts, "levels": levels}

    def __eq__(self, other):
        return (
            isinstance(other, Colouring)
            and self.X is other.X
            and self.values == other.values
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Colouring({self.values})"


def colouring_key(X: SimpSet, A: CrossedComplex, values: dict) -> tuple:
    """Canonical sort key: value indices in generator declaration order."""
    out = []
    for g in X.all_gens():
        d = X.dim_of[g]
        if d > A.truncation and d >= 2:
            out.append(0)  # implicit identity above the truncation
            continue
        v = values[g]
        if d == 0:
            out.append(A.base.obj_index(v))
        elif d == 1:
            out.append(A.base.arr_index(v))
        else:
            x, e = v
            out.append(A.fibre(d, x).index(e))
    return tuple(out)


def value_of_ref(X: SimpSet, A: CrossedComplex, values: dict, ref: SimplexRef):
    d = X.ref_dim(ref)
    if ref.word:
        if d == 1:
            return A.base.ident[values[ref.core]]
        base = values[X.initial_vertex(ref)]
        return A.identity_elem(d, base)
    if d >= 2 and d > A.truncation:
        base = values[X.initial_vertex(ref)]
        return A.identity_elem(d, base)
    return values[ref.core]


def eval_edge_word(X: SimpSet, A: CrossedComplex, values: dict, word) -> object:
    """Compose edge values along a word of (edge ref, sign) pairs."""
    out = None
    for ref, sign in word:
        a = value_of_ref(X, A, values, ref)
        if sign < 0:
            a = A.base.inv(a)
        out = a if out is None else A.base.comp(out, a)
    return out


def hal_word(X: SimpSet, c) -> list:
    """The homotopy addition label of c as (face ref, sign, twist) terms.

    `twist` is either None or a word of (edge ref, sign) pairs acting on the
    term from the right.
    """
    n = X.dim_of[c]
    ref = SimplexRef(c, ())
    faces = [X.face_of_ref(ref, i) for i in range(n + 1)]
    if n == 2:
        return [(faces[2], 1, None), (faces[0], 1, None), (faces[1], -1, None)]
    twist = [(X.edge01_ref(c), -1)]
    if n == 3:
        return [
            (faces[0], 1, twist),
            (faces[2], 1, None),
            (faces[1], -1, None),
            (faces[3], -1, None),
        ]
    terms = [(faces[0], 1, twist)]
    terms.extend((faces[j], (-1) ** j, None) for j in range(1, n + 1))
    return terms


def boundary_label(X: SimpSet, A: CrossedComplex, values: dict, c):
    """The homotopy addition label of the n-generator c, n >= 2.

    Returns an A1 loop for n = 2 and a level-(n-1) element for n >= 3, based
    at the image of the leading vertex of c.
    """
    n = X.dim_of[c]
    if n < 2:
        raise ValueError("labels are defined for generators of dimension >= 2")
    terms = hal_word(X, c)
    if n == 2:
        word = [(ref, sign) for ref, sign, _ in terms]
        return eval_edge_word(X, A, values, word)
    out = None
    for ref, sign, twist in terms:
        v = value_of_ref(X, A, values, ref)
        if twist is not None:
            arrow = eval_edge_word(X, A, values, twist)
            v = A.act_elem(n - 1, v, arrow)
        v = A.pow_elem(n - 1, v, sign)
        out = v if out is None else A.mul(n - 1, out, v)
    return out


def _label_consistent(X, A, values, c):
    """Whether the boundary condition at c can be (or is) met."""
    n = X.dim_of[c]
    label = boundary_label(X, A, values, c)
    if n == 2:
        if A.truncation < 2:
            base = values[X.initial_vertex(c)]
            return label == A.base.ident[base]
        base = values[X.initial_vertex(c)]
        return label in {
            A.bdry_of(2, (base, e)) for e in A.fibre(2, base).elements
        }
    if n > A.truncation + 1:
        return True
    if n == A.truncation + 1:
        base = values[X.initial_vertex(c)]
        return label == A.identity_elem(n - 1, base)
    base = values[X.initial_vertex(c)]
    return label in {A.bdry_of(n, (base, e)) for e in A.fibre(n, base).elements}


def _level_domain(X, A, values, c):
    """All admissible level-n values at the generator c, given lower levels."""
    n = X.dim_of[c]
    base = values[X.initial_vertex(c)]
    label = boundary_label(X, A, values, c)
    F = A.fibre(n, base)
    return [(base, e) for e in F.elements if A.bdry_of(n, (base, e)) == label]


def enumerate_colourings(X: SimpSet, A: CrossedComplex, fixed: dict | None = None):
    """All colourings of X by A, in canonical order.

    `fixed` pins values on some generators (they must form consistent data);
    the result is the list of total colourings extending it.
    """
    fixed = fixed or {}
    for g in fixed:
        if g not in X.dim_of:
            raise BoundaryError(f"fixed value on unknown generator {g!r}")
    results = []
    values: dict = {}
    last_level = min(X.dim, A.truncation)
    top_constraint_dim = min(X.dim, A.truncation + 1)

    # generators of dimension n+1 whose boundary label becomes checkable once
    # all their dimension-n faces are assigned; keyed by the last such face
    def triggers(n):
        out: dict[int, list] = {}
        immediate = []
        for c in X.gens(n + 1):
            needed = set()
            ref = SimplexRef(c, ())
            for i in range(n + 2):
                f = X.face_of_ref(ref, i)
                if not f.word:
                    needed.add(f.core)
            if not needed:
                immediate.append(c)
            else:
                last = max(X.gens(n).index(g) for g in needed)
                out.setdefault(last, []).append(c)
        return immediate, out

    def assign_level(n):
        if n > last_level:
            results.append(Colouring(X, A, dict(values)))
            return
        gens = X.gens(n)
        has_checks = 2 <= n + 1 <= top_constraint_dim
        check_now, trigger_map = triggers(n) if has_checks else ([], {})
        for c in check_now:
            if not _label_consistent(X, A, values, c):
                return

        def walk(k):
            if k == len(gens):
                assign_level(n + 1)
                return
            g = gens[k]
            if n == 0:
                domain = A.objects if g not in fixed else (fixed[g],)
                if g in fixed and fixed[g] not in set(A.objects):
                    return
            elif n == 1:
                s, t = X.edge_ends(g)
                domain = A.base.arrows_between(values[s], values[t])
                if g in fixed:
                    domain = [a for a in domain if a == fixed[g]]
            else:
                domain = _level_domain(X, A, values, g)
                if g in fixed:
                    domain = [v for v in domain if v == fixed[g]]
            for v in domain:
                values[g] = v
                ok = True
                for c in trigger_map.get(k, ()):
                    if not _label_consistent(X, A, values, c):
                        ok = False
                        break
                if ok:
                    walk(k + 1)
                del values[g]

        walk(0)

    assign_level(0)
    return results


def _check_fixed(X: SimpSet, A: CrossedComplex, fixed: dict):
    """Reject fixed boundary values that are not themselves a valid colouring.

    Only conditions fully determined by the fixed set are checked, so partial
    (non-face-closed) data passes through to the enumerator untouched.
    """
    objs = set(A.objects)
    for g, v in fixed.items():
        if X.dim_of[g] == 0 and v not in objs:
            raise BoundaryError(f"vertex value {v!r} is not an object")
    for g, v in fixed.items():
        d = X.dim_of[g]
        if d == 1:
            s, t = X.edge_ends(g)
            if s in fixed and t in fixed:
                if A.base.src.get(v) != fixed[s] or A.base.tgt.get(v) != fixed[t]:
                    raise BoundaryError(f"edge value at {g!r} has wrong endpoints")
        elif 2 <= d <= A.truncation:
            if X.subcomplex_closure({g}) - {g} <= set(fixed):
                label = boundary_label(X, A, fixed, g)
                if A.bdry_of(d, v) != label:
                    raise BoundaryError(f"value at {g!r} violates its boundary condition")


def enumerate_relative(X: SimpSet, A: CrossedComplex, fixed: dict):
    """Colourings extending given values on disjoint tagged subcomplexes."""
    _check_fixed(X, A, fixed)
    return enumerate_colourings(X, A, fixed=fixed)


def restrict_colouring(col: Colouring, sub: SimpSet) -> Colouring:
    """Restriction to a subcomplex sharing generator ids with col.X."""
    vals = {g: col.values[g] for g in sub.all_gens() if g in col.values}
    return Colouring(sub, col.A, vals)


def is_valid_colouring(col: Colouring) -> bool:
    X, A, values = col.X, col.A, col.values
    for g in X.all_gens():
        d = X.dim_of[g]
        if d == 0:
            if values[g] not in set(A.objects):
                return False
        elif d == 1:
            s, t = X.edge_ends(g)
            a = values[g]
            if A.base.src[a] != values[s] or A.base.tgt[a] != values[t]:
                return False
        elif d <= A.truncation:
            base = values[X.initial_vertex(g)]
            x, e = values[g]
            if x != base or e not in A.fibre(d, base):
                return False
            if A.bdry_of(d, values[g]) != boundary_label(X, A, values, g):
                return False
    n = A.truncation + 1
    if n <= X.dim:
        for g in X.gens(n):
            base = values[X.initial_vertex(g)]
            label = boundary_label(X, A, values, g)
            trivial = A.base.ident[base] if n == 2 else A.identity_elem(n - 1, base)
            if label != trivial:
                return False
    return True
