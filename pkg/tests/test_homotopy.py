from quinncalc.colouring import enumerate_colourings, is_valid_colouring, restrict_colouring
from quinncalc.finalg import (
    action_groupoid,
    find_groupoid_iso,
    iota1,
    iota2,
    pair_groupoid,
    semidirect,
)
from quinncalc.finalg.groupoids import FinGroupoid
from quinncalc.homotopy import (
    apply_homotopy,
    compose_homotopies,
    crs_homotopy_content,
    crs_pi1,
    delta2,
    enumerate_sequences,
    expand_sequence,
    holonomy_act,
    identity_sequence,
    invert_homotopy,
    rel_classes,
)
from quinncalc.simpset import circle, point, prism, sphere, torus
from tests.conftest import corpus_crossed_modules, corpus_groups


def conj_action(G):
    return {(g, x): G.mul(G.mul(g, x), G.inv(g)) for g in G.elements for x in G.elements}


def circle_colouring(A, g):
    X = circle()
    for col in enumerate_colourings(X, A):
        if col.value("e") == g:
            return col
    raise AssertionError("missing colouring")


# -- apply_homotopy -----------------------------------------------------------


def test_identity_homotopy_fixes_colouring():
    for G in corpus_groups():
        A = iota1(G)
        for col in enumerate_colourings(circle(), A):
            H = identity_sequence(col)
            assert apply_homotopy(H, col).values == col.values


def test_circle_group_action_is_conjugation(s3):
    A = iota1(s3)
    X = circle()
    for g in s3.elements:
        col = circle_colouring(A, g)
        for H in enumerate_sequences(X, A, col, 1):
            h = H.m[0]["v"]
            other = apply_homotopy(H, col)
            assert other.value("e") == s3.mul(s3.mul(h, g), s3.inv(h))


def test_circle_crossed_module_action():
    for M in corpus_crossed_modules():
        A = iota2(M)
        X = circle()
        G, E = M.G, M.E
        for g in G.elements:
            col = circle_colouring(A, g)
            for H in enumerate_sequences(X, A, col, 1):
                h = H.m[0]["v"]
                e = H.m[1]["e"][1]
                got = apply_homotopy(H, col).value("e")
                want = G.mul(G.mul(G.mul(h, g), M.bdry[e]), G.inv(h))
                assert got == want


def test_apply_homotopy_yields_valid_colourings(s3):
    for A in [iota1(s3)] + [iota2(M) for M in corpus_crossed_modules()]:
        for X in [circle(), torus(), sphere(2)]:
            cols = enumerate_colourings(X, A)
            for col in cols[:3]:
                for H in enumerate_sequences(X, A, col, 1)[:8]:
                    assert is_valid_colouring(apply_homotopy(H, col))


# -- composition and inversion ---------------------------------------------------


def test_compose_then_apply_matches_sequential_application(s3):
    A = iota1(s3)
    X = circle()
    col = circle_colouring(A, s3.elements[1])
    seqs = enumerate_sequences(X, A, col, 1)
    for H in seqs[:6]:
        mid = apply_homotopy(H, col)
        for Hp in enumerate_sequences(X, A, mid, 1)[:6]:
            J = compose_homotopies(Hp, H)
            assert J.target.values == col.values
            assert apply_homotopy(J, col).values == apply_homotopy(Hp, mid).values


def test_compose_matches_semidirect_convention():
    # on the circle the composite of crossed-module homotopies is the
    # nonstandard-order semidirect product
    for M in corpus_crossed_modules():
        A = iota2(M)
        X = circle()
        G, E = M.G, M.E
        P = semidirect(G, E, M.act)
        col = circle_colouring(A, G.elements[-1])
        for H in enumerate_sequences(X, A, col, 1):
            h, e = H.m[0]["v"], H.m[1]["e"][1]
            mid = apply_homotopy(H, col)
            for Hp in enumerate_sequences(X, A, mid, 1):
                hp, ep = Hp.m[0]["v"], Hp.m[1]["e"][1]
                J = compose_homotopies(Hp, H)
                jh, je = J.m[0]["v"], J.m[1]["e"][1]
                assert (jh, je) == P.mul((hp, ep), (h, e))


def test_inverse_homotopy_composes_to_identity(s3):
    A = iota1(s3)
    X = torus()
    col = enumerate_colourings(X, A)[7]
    for H in enumerate_sequences(X, A, col, 1)[:6]:
        Hinv = invert_homotopy(H)
        J = compose_homotopies(H, Hinv)
        assert J.key() == identity_sequence(Hinv.target).key()
        J2 = compose_homotopies(Hinv, H)
        assert J2.key() == identity_sequence(col).key()


def test_associativity_of_composition():
    M = corpus_crossed_modules()[0]
    A = iota2(M)
    X = circle()
    col = circle_colouring(A, 0)
    seqs = enumerate_sequences(X, A, col, 1)
    for H in seqs[:3]:
        mid = apply_homotopy(H, col)
        for Hp in enumerate_sequences(X, A, mid, 1)[:3]:
            mid2 = apply_homotopy(Hp, mid)
            for Hpp in enumerate_sequences(X, A, mid2, 1)[:3]:
                lhs = compose_homotopies(Hpp, compose_homotopies(Hp, H))
                rhs = compose_homotopies(compose_homotopies(Hpp, Hp), H)
                assert lhs.key() == rhs.key()


# -- delta2 ------------------------------------------------------------------------


def test_delta2_identity_two_fold_gives_identity_arrow():
    M = corpus_crossed_modules()[0]
    A = iota2(M)
    col = circle_colouring(A, 0)
    H2 = identity_sequence(col, k=2)
    assert delta2(H2).key() == identity_sequence(col).key()


def test_delta2_is_endo_arrow():
    for M in corpus_crossed_modules():
        A = iota2(M)
        for X in [circle(), sphere(2)]:
            for col in enumerate_colourings(X, A):
                for H2 in enumerate_sequences(X, A, col, 2):
                    d = delta2(H2)
                    assert apply_homotopy(d, col).values == col.values


def test_delta2_circle_formula():
    M = corpus_crossed_modules()[0]
    A = iota2(M)
    col = circle_colouring(A, 1)
    count = 0
    for H2 in enumerate_sequences(circle(), A, col, 2):
        e = H2.m[0]["v"][1]
        d = delta2(H2)
        assert d.m[0]["v"] == M.bdry[e]
        count += 1
    assert count == len(M.E)


def test_delta_images_closed_under_left_and_right_composition(s3):
    # the partition by right composition with boundary arrows agrees with the
    # left-sided one
    for A in [iota2(corpus_crossed_modules()[0]), iota2(corpus_crossed_modules()[1])]:
        X = circle()
        crs = crs_pi1(X, A)
        for ti, col in enumerate(crs.colourings):
            deltas = {d.key() for d in crs.deltas[ti]}
            for H in enumerate_sequences(X, A, col, 1):
                right = {compose_homotopies(H, d).key() for d in crs.deltas[ti]}
                src = crs.colouring_index(apply_homotopy(H, col))
                left = {
                    compose_homotopies(d2, H).key() for d2 in crs.deltas[src]
                }
                assert right == left


# -- crs_pi1 -------------------------------------------------------------------------


def test_crs_pi1_point_is_the_groupoid():
    # gate for the non-reduced path
    I3 = pair_groupoid(3)
    crs = crs_pi1(point(), iota1(I3))
    assert crs.groupoid.validate()
    iso = find_groupoid_iso(crs.groupoid, I3)
    assert iso is not None


def test_crs_pi1_circle_group_is_conjugation_action_groupoid():
    for G in corpus_groups():
        crs = crs_pi1(circle(), iota1(G))
        AG = action_groupoid(G, G.elements, conj_action(G))
        assert crs.groupoid.validate()
        assert find_groupoid_iso(crs.groupoid, AG) is not None


def test_crs_pi1_circle_s3_shape(s3):
    crs = crs_pi1(circle(), iota1(s3))
    assert len(crs.groupoid.objects) == 6
    assert len(crs.groupoid.arrows) == 36
    assert len(crs.components()) == 3


def test_crs_pi1_torus_s3_components(s3):
    crs = crs_pi1(torus(), iota1(s3))
    assert len(crs.groupoid.objects) == 18
    assert len(crs.components()) == 8
    # oracle: orbit count of simultaneous conjugation on commuting pairs
    pairs = [
        (a, b) for a in s3.elements for b in s3.elements if s3.mul(a, b) == s3.mul(b, a)
    ]
    act = {
        (g, (a, b)): (s3.mul(s3.mul(g, a), s3.inv(g)), s3.mul(s3.mul(g, b), s3.inv(g)))
        for g in s3.elements
        for (a, b) in pairs
    }
    AG = action_groupoid(s3, pairs, act)
    assert len(AG.components()) == 8
    assert find_groupoid_iso(crs.groupoid, AG) is not None


def test_crs_pi1_sphere_crossed_module_is_kernel_mod_quotient():
    for M in corpus_crossed_modules():
        A = iota2(M)
        crs = crs_pi1(sphere(2), A)
        assert crs.groupoid.validate()
        G, E = M.G, M.E
        ker = tuple(e for e in E.elements if M.bdry[e] == G.unit)
        img = {M.bdry[e] for e in E.elements}
        from quinncalc.finalg import quotient_group

        Q, proj = quotient_group(G, img)
        act = {(q, e): M.act[(e, G.inv(q))] for q in Q.elements for e in ker}
        AG = action_groupoid(Q, ker, act)
        assert find_groupoid_iso(crs.groupoid, AG) is not None


def test_crs_pi1_circle_crossed_module_matches_direct_construction():
    # independent construction of the expected groupoid: objects are group
    # elements, arrows are classes [(g, h, e)] with (g, h, e) ~
    # (g, h.bdry(a), (a^-1 <| g) e a), composed via the semidirect rule
    for M in corpus_crossed_modules():
        A = iota2(M)
        G, E = M.G, M.E
        crs = crs_pi1(circle(), A)

        def act_on(g, h, e):
            return G.mul(G.mul(G.mul(h, g), M.bdry[e]), G.inv(h))

        def cls(g, h, e):
            reps = set()
            for a in E.elements:
                h2 = G.mul(h, M.bdry[a])
                e2 = E.mul(E.mul(M.act[(E.inv(a), g)], e), a)
                reps.add((g, h2, e2))
            return min(sorted(reps))

        objects = G.elements
        arrows = sorted({cls(g, h, e) for g in G.elements for h in G.elements for e in E.elements})
        src = {t: t[0] for t in arrows}
        tgt = {t: act_on(*t) for t in arrows}
        comp = {}
        for t1 in arrows:
            g, h, e = t1
            mid = act_on(*t1)
            for t2 in arrows:
                if t2[0] != mid:
                    continue
                _, hp, ep = t2
                comp[(t1, t2)] = cls(g, G.mul(hp, h), E.mul(e, M.act[(ep, h)]))
        ident = {g: cls(g, G.unit, E.unit) for g in objects}
        direct = FinGroupoid(objects, tuple(arrows), src, tgt, comp, ident, name="GmodG")
        assert direct.validate()
        assert find_groupoid_iso(crs.groupoid, direct) is not None


def test_crs_pi1_quotient_composition_well_defined():
    M = corpus_crossed_modules()[1]
    A = iota2(M)
    X = circle()
    crs = crs_pi1(X, A)
    G = crs.groupoid
    for a in G.arrows:
        Ha = crs.arrow_reps[a]
        for d in crs.deltas[a[1]]:
            other = compose_homotopies(Ha, d)
            assert crs.class_of_arrow(other) == a


# -- Extend / Restrict / rel classes ------------------------------------------------


def test_expand_restrict_roundtrip(s3):
    A = iota1(s3)
    P = prism(circle())
    X = P.simpset
    cols = enumerate_colourings(X, A)
    col = cols[0]
    boundary = P.boundary_gens()
    sub = X.restrict(boundary)
    eta = enumerate_sequences(sub, A, restrict_colouring(col, sub), 1)[5]
    H = expand_sequence(eta, X, col)
    for g in sub.all_gens():
        i = sub.dim_of[g]
        if i + 1 > A.truncation:
            continue
        assert H.m[i][g] == eta.m[i][g]


def test_rel_classes_cylinder(s3):
    A = iota1(s3)
    P = prism(circle())
    X = P.simpset
    in_map, out_map = P.meta["in_map"], P.meta["out_map"]
    boundary = P.boundary_gens()
    for g in s3.elements:
        fixed = {
            in_map["v"]: "*",
            out_map["v"]: "*",
            in_map["e"]: g,
            out_map["e"]: g,
        }
        from quinncalc.colouring import enumerate_relative

        fillings = enumerate_relative(X, A, fixed)
        classes, _ = rel_classes(X, A, boundary, fillings)
        centraliser = [h for h in s3.elements if s3.mul(h, g) == s3.mul(g, h)]
        assert len(fillings) == len(centraliser)
        assert len(classes) == len(centraliser)  # rigid fillings for iota1


def test_rel_classes_whole_and_empty_boundary(s3):
    A = iota1(s3)
    X = torus()
    fillings = enumerate_colourings(X, A)
    classes_all, _ = rel_classes(X, A, frozenset(X.all_gens()), fillings)
    assert len(classes_all) == len(fillings)
    classes_none, _ = rel_classes(X, A, frozenset(), fillings)
    crs = crs_pi1(X, A)
    assert len(classes_none) == len(crs.components())


def test_holonomy_identity_and_composition(s3):
    A = iota1(s3)
    P = prism(circle())
    X = P.simpset
    boundary = P.boundary_gens()
    sub = X.restrict(boundary)
    from quinncalc.colouring import enumerate_relative

    g = s3.elements[1]
    in_map, out_map = P.meta["in_map"], P.meta["out_map"]
    fixed = {in_map["v"]: "*", out_map["v"]: "*", in_map["e"]: g, out_map["e"]: g}
    fillings = enumerate_relative(X, A, fixed)
    h = fillings[0]
    bcol = restrict_colouring(h, sub)
    eta_id = identity_sequence(bcol)
    assert holonomy_act(X, A, boundary, eta_id, h).values == h.values
    etas = enumerate_sequences(sub, A, bcol, 1)
    for eta in etas[:5]:
        mid = holonomy_act(X, A, boundary, eta, h)
        bmid = restrict_colouring(mid, sub)
        for eta2 in enumerate_sequences(sub, A, bmid, 1)[:5]:
            lhs = holonomy_act(X, A, boundary, eta2, mid)
            J = compose_homotopies(eta2, eta)
            rhs = holonomy_act(X, A, boundary, J, h)
            assert lhs.values == rhs.values


# -- homotopy content of the mapping complex ------------------------------------------


def test_holonomy_well_defined_on_classes():
    # all members of a boundary arrow class transport a filling into the
    # same relative class
    M = corpus_crossed_modules()[0]
    A = iota2(M)
    P = prism(circle())
    X = P.simpset
    boundary = P.boundary_gens()
    sub = X.restrict(boundary)
    from quinncalc.colouring import enumerate_colourings as enum_cols
    from quinncalc.colouring import enumerate_relative

    crs_b = crs_pi1(sub, A)
    for ti, bcol in enumerate(crs_b.colourings[:4]):
        fillings = enumerate_relative(X, A, dict(bcol.values))
        if not fillings:
            continue
        classes, class_of = rel_classes(X, A, boundary, fillings)
        h = fillings[0]
        for H in enumerate_sequences(sub, A, bcol, 1)[:6]:
            results = set()
            for d in crs_b.deltas[ti]:
                member = compose_homotopies(H, d)
                moved = holonomy_act(X, A, boundary, member, h)
                mcol = restrict_colouring(moved, sub)
                fillings2 = enumerate_relative(X, A, dict(mcol.values))
                _, class_of2 = rel_classes(X, A, boundary, fillings2)
                results.add(class_of2[moved.key()])
            assert len(results) == 1


def test_sequence_serialisation():
    M = corpus_crossed_modules()[0]
    A = iota2(M)
    col = circle_colouring(A, 1)
    H = enumerate_sequences(circle(), A, col, 1)[3]
    data = H.as_dict()
    assert data["k"] == 1
    assert set(data["values"]) == {"0", "1"}
    assert data["target"] == list(col.key())


def test_crs_homotopy_content_torus_s3(s3):
    assert crs_homotopy_content(torus(), iota1(s3)) == 3


def test_crs_homotopy_content_sphere_crossed_module():
    M = corpus_crossed_modules()[0]
    assert crs_homotopy_content(sphere(2), iota2(M)) == 2
