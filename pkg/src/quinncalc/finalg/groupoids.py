"""Finite groupoids as explicit arrow tables.

The composition convention is concatenation: `comp(a, b)` is defined exactly
when `tgt(a) == src(b)` and is the arrow "a then b".
"""
from __future__ import annotations

from .groups import FinGroup, ValidationReport


class FinGroupoid:
    def __init__(self, objects, arrows, src, tgt, comp, ident, inv=None, name=""):
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.comp_table = dict(comp)
        self.ident = dict(ident)
        self.name = name
        self._obj_index = {x: i for i, x in enumerate(self.objects)}
        self._arr_index = {a: i for i, a in enumerate(self.arrows)}
        self.inv_table = dict(inv) if inv is not None else self._find_inverses()

    def _find_inverses(self):
        inv = {}
        for a in self.arrows:
            x, y = self.src[a], self.tgt[a]
            for b in self.arrows:
                if self.src[b] == y and self.tgt[b] == x:
                    if (
                        self.comp_table.get((a, b)) == self.ident.get(x)
                        and self.comp_table.get((b, a)) == self.ident.get(y)
                    ):
                        inv[a] = b
                        break
        return inv

    def obj_index(self, x):
        return self._obj_index[x]

    def arr_index(self, a):
        return self._arr_index[a]

    def comp(self, a, b):
        return self.comp_table[(a, b)]

    def inv(self, a):
        return self.inv_table[a]

    def compose_word(self, word):
        """Compose a nonempty list of (arrow, sign) pairs left to right."""
        out = None
        for a, sign in word:
            a = self.inv(a) if sign < 0 else a
            out = a if out is None else self.comp(out, a)
        return out

    def arrows_from(self, x):
        return tuple(a for a in self.arrows if self.src[a] == x)

    def arrows_into(self, x):
        return tuple(a for a in self.arrows if self.tgt[a] == x)

    def arrows_between(self, x, y):
        return tuple(a for a in self.arrows if self.src[a] == x and self.tgt[a] == y)

    def vertex_group(self, x) -> FinGroup:
        loops = self.arrows_between(x, x)
        mul = {(a, b): self.comp(a, b) for a in loops for b in loops}
        return FinGroup(loops, mul, name=f"{self.name}({x})")

    def components(self):
        """Connected components as tuples of objects, in canonical order."""
        seen = set()
        comps = []
        for x in self.objects:
            if x in seen:
                continue
            comp = {x}
            frontier = [x]
            while frontier:
                y = frontier.pop()
                for a in self.arrows:
                    for z in (
                        self.tgt[a] if self.src[a] == y else None,
                        self.src[a] if self.tgt[a] == y else None,
                    ):
                        if z is not None and z not in comp:
                            comp.add(z)
                            frontier.append(z)
            seen |= comp
            comps.append(tuple(o for o in self.objects if o in comp))
        return tuple(comps)

    def component_of(self):
        out = {}
        for comp in self.components():
            for x in comp:
                out[x] = comp[0]
        return out

    def validate(self) -> ValidationReport:
        objs = set(self.objects)
        for a in self.arrows:
            if self.src.get(a) not in objs or self.tgt.get(a) not in objs:
                return ValidationReport.malformed("dangling arrow endpoints", (a,))
        for x in self.objects:
            e = self.ident.get(x)
            if e is None or self.src.get(e) != x or self.tgt.get(e) != x:
                return ValidationReport.malformed("missing or misplaced identity", (x,))
        for a in self.arrows:
            for b in self.arrows:
                defined = (a, b) in self.comp_table
                composable = self.tgt[a] == self.src[b]
                if defined != composable:
                    return ValidationReport.malformed("composition defined iff tgt=src", (a, b))
                if defined:
                    c = self.comp_table[(a, b)]
                    if self.src.get(c) != self.src[a] or self.tgt.get(c) != self.tgt[b]:
                        return ValidationReport.axiom("composite endpoints wrong", (a, b, c))
        for a in self.arrows:
            x, y = self.src[a], self.tgt[a]
            if self.comp_table.get((self.ident[x], a)) != a or self.comp_table.get((a, self.ident[y])) != a:
                return ValidationReport.axiom("identity is not a two-sided unit", (a,))
        for a in self.arrows:
            b = self.inv_table.get(a)
            if b is None:
                return ValidationReport.axiom("arrow has no two-sided inverse", (a,))
            if (
                self.comp_table.get((a, b)) != self.ident[self.src[a]]
                or self.comp_table.get((b, a)) != self.ident[self.tgt[a]]
            ):
                return ValidationReport.axiom("inverse table wrong", (a, b))
        for a in self.arrows:
            for b in self.arrows:
                if self.tgt[a] != self.src[b]:
                    continue
                for c in self.arrows:
                    if self.tgt[b] != self.src[c]:
                        continue
                    if self.comp(self.comp(a, b), c) != self.comp(a, self.comp(b, c)):
                        return ValidationReport.axiom("associativity fails", (a, b, c))
        return ValidationReport.passed()

    def __repr__(self):
        return f"FinGroupoid({self.name or ''}, {len(self.objects)} objects, {len(self.arrows)} arrows)"


def groupoid_from_group(G: FinGroup, obj="*") -> FinGroupoid:
    """The one-object groupoid carrying G, with compose(a, b) = a*b."""
    src = {a: obj for a in G.elements}
    comp = {(a, b): G.mul(a, b) for a in G.elements for b in G.elements}
    ident = {obj: G.unit}
    inv = {a: G.inv(a) for a in G.elements}
    return FinGroupoid((obj,), G.elements, src, dict(src), comp, ident, inv, name=G.name)


def discrete_groupoid(objects) -> FinGroupoid:
    objects = tuple(objects)
    arrows = tuple(("id", x) for x in objects)
    src = {("id", x): x for x in objects}
    comp = {((("id", x)), ("id", x)): ("id", x) for x in objects}
    ident = {x: ("id", x) for x in objects}
    return FinGroupoid(objects, arrows, src, dict(src), comp, ident, name="discrete")


def pair_groupoid(k: int) -> FinGroupoid:
    """Objects 1..k with exactly one arrow between each ordered pair."""
    objects = tuple(range(1, k + 1))
    arrows = tuple((x, y) for x in objects for y in objects)
    src = {(x, y): x for (x, y) in arrows}
    tgt = {(x, y): y for (x, y) in arrows}
    comp = {((x, y), (y2, z)): (x, z) for (x, y) in arrows for (y2, z) in arrows if y == y2}
    ident = {x: (x, x) for x in objects}
    inv = {(x, y): (y, x) for (x, y) in arrows}
    return FinGroupoid(objects, arrows, src, tgt, comp, ident, inv, name=f"I({k})")


def validate_left_action(G: FinGroup, points, act) -> ValidationReport:
    points = tuple(points)
    for g in G.elements:
        for x in points:
            if (g, x) not in act:
                return ValidationReport.malformed("action not total", (g, x))
            if act[(g, x)] not in set(points):
                return ValidationReport.malformed("action leaves the set", (g, x))
    for x in points:
        if act[(G.unit, x)] != x:
            return ValidationReport.axiom("unit does not act trivially", (x,))
    for g in G.elements:
        for h in G.elements:
            for x in points:
                if act[(h, act[(g, x)])] != act[(G.mul(h, g), x)]:
                    return ValidationReport.axiom("action not compatible with product", (g, h, x))
    return ValidationReport.passed()


def action_groupoid(G: FinGroup, points, act) -> FinGroupoid:
    """Action groupoid of a left action: arrows (x, g): x -> g.x.

    `act` maps (g, x) to g.x; composing (x, g) with (g.x, h) gives (x, hg).
    """
    if callable(act):
        act = {(g, x): act(g, x) for g in G.elements for x in points}
    report = validate_left_action(G, points, act)
    if not report:
        from ..errors import AxiomError

        raise AxiomError(f"invalid action table: {report.message} {report.witness}")
    points = tuple(points)
    arrows = tuple((x, g) for x in points for g in G.elements)
    src = {(x, g): x for (x, g) in arrows}
    tgt = {(x, g): act[(g, x)] for (x, g) in arrows}
    comp = {}
    for (x, g) in arrows:
        y = tgt[(x, g)]
        for h in G.elements:
            comp[((x, g), (y, h))] = (x, G.mul(h, g))
    ident = {x: (x, G.unit) for x in points}
    inv = {(x, g): (tgt[(x, g)], G.inv(g)) for (x, g) in arrows}
    return FinGroupoid(points, arrows, src, tgt, comp, ident, inv, name=f"{G.name}-action")


def quotient_groupoid(G: FinGroupoid, normal: dict) -> tuple[FinGroupoid, dict]:
    """Quotient by a totally disconnected normal subgroupoid.

    `normal[x]` is a set of loops at x, closed under conjugation by every
    arrow of G.  Arrows x -> y are identified when they differ by right
    multiplication with a loop of `normal[y]`; representatives are minimal
    in the arrow declaration order.
    """
    proj = {}
    for a in G.arrows:
        if a in proj:
            continue
        y = G.tgt[a]
        coset = [G.comp(a, n) for n in G.arrows_between(y, y) if n in normal[y]]
        rep = min(coset, key=G.arr_index)
        for c in coset:
            if c in proj and proj[c] != rep:
                raise ValueError("normal family is not closed; cosets overlap")
            proj[c] = rep
    reps = tuple(a for a in G.arrows if proj[a] == a)
    comp = {}
    for a in reps:
        for b in reps:
            if G.tgt[a] == G.src[b]:
                comp[(a, b)] = proj[G.comp(a, b)]
    ident = {x: proj[G.ident[x]] for x in G.objects}
    inv = {a: proj[G.inv(a)] for a in reps}
    src = {a: G.src[a] for a in reps}
    tgt = {a: G.tgt[a] for a in reps}
    quot = FinGroupoid(G.objects, reps, src, tgt, comp, ident, inv, name=f"{G.name}/N")
    return quot, proj


def find_groupoid_iso(G: FinGroupoid, H: FinGroupoid):
    """Search for an isomorphism of groupoids.

    Returns (object map, arrow map) or None.  Components are matched by
    (object count, arrow count, vertex group order), then a vertex-group
    isomorphism at matched base objects is transported along spanning trees.
    """
    from .groups import find_group_iso

    comps_G, comps_H = list(G.components()), list(H.components())
    if len(G.objects) != len(H.objects) or len(G.arrows) != len(H.arrows):
        return None
    if len(comps_G) != len(comps_H):
        return None

    def invariant(K, comp):
        return (len(comp), len(K.vertex_group(comp[0])))

    used = [False] * len(comps_H)
    obj_map, arr_map = {}, {}

    def match_component(cg):
        base = cg[0]
        VG = G.vertex_group(base)
        for j, ch in enumerate(comps_H):
            if used[j] or invariant(G, cg) != invariant(H, ch):
                continue
            VH = H.vertex_group(ch[0])
            phi = find_group_iso(VG, VH)
            if phi is None:
                continue
            used[j] = True
            tree_G = {x: min(G.arrows_between(base, x), key=G.arr_index) for x in cg}
            tree_H = {y: min(H.arrows_between(ch[0], y), key=H.arr_index) for y in ch}
            for x, y in zip(cg, ch):
                obj_map[x] = y
            for x in cg:
                for z in cg:
                    for a in G.arrows_between(x, z):
                        loop = G.comp(G.comp(tree_G[x], a), G.inv(tree_G[z]))
                        img_loop = phi[loop]
                        arr_map[a] = H.comp(
                            H.comp(H.inv(tree_H[obj_map[x]]), img_loop), tree_H[obj_map[z]]
                        )
            return True
        return False

    for cg in comps_G:
        if not match_component(cg):
            return None
    for a in G.arrows:
        for b in G.arrows:
            if G.tgt[a] == G.src[b]:
                if arr_map[G.comp(a, b)] != H.comp(arr_map[a], arr_map[b]):
                    return None
    if len(set(arr_map.values())) != len(H.arrows):
        return None
    return obj_map, arr_map
