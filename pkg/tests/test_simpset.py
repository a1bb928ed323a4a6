import pytest

from quinncalc.errors import BoundaryError, SchemaError
from quinncalc.simpset import (
    SimplexRef,
    Stratification,
    circle,
    find_simpset_iso,
    glue,
    interval,
    point,
    prism,
    prism_end_matching,
    sphere,
    standard_simplex,
    torus,
    validate_simpset,
    window_support,
)


def counts(X):
    return tuple(X.k_count(i) for i in range(X.dim + 1))


def test_builders_validate():
    for X in [standard_simplex(0), standard_simplex(2), standard_simplex(3),
              interval(), circle(), sphere(2), sphere(3), torus(), point()]:
        assert validate_simpset(X), X


def test_builder_counts():
    assert counts(circle()) == (1, 1)
    assert counts(torus()) == (1, 3, 2)
    assert counts(sphere(2)) == (1, 0, 1)
    assert counts(standard_simplex(2)) == (3, 3, 1)
    assert sphere(2).k_count(5) == 0


def test_forced_simplicial_identity_violation():
    # square-ish fake: wire d0 d0 and d0 d1 to different vertices
    gens = {"p": 0, "q": 0, "e": 1, "f": 1, "t": 2}
    faces = {
        ("e", 0): SimplexRef("p"),
        ("e", 1): SimplexRef("q"),
        ("f", 0): SimplexRef("q"),
        ("f", 1): SimplexRef("p"),
        ("t", 0): SimplexRef("e"),
        ("t", 1): SimplexRef("f"),
        ("t", 2): SimplexRef("e"),
    }
    from quinncalc.simpset import SimpSet

    X = SimpSet(gens, faces)
    report = X.validate()
    assert not report and report.kind == "axiom"


def test_face_normalisation_idempotent():
    X = sphere(3)
    top = SimplexRef("c", ())
    for i in range(4):
        ref = X.face_of_ref(top, i)
        assert X.normalise(ref) == ref
    deep = SimplexRef("v", (0, 1, 2, 4))
    assert X.normalise(deep) == deep


def test_degenerate_face_words():
    X = circle()
    # d_i s_0 e: the three faces of the degenerate triangle on the edge
    s0e = SimplexRef("e", (0,))
    assert X.face_of_ref(s0e, 0) == SimplexRef("e", ())
    assert X.face_of_ref(s0e, 1) == SimplexRef("e", ())
    assert X.face_of_ref(s0e, 2) == SimplexRef("v", (0,))


def test_initial_vertex():
    T = torus()
    assert T.initial_vertex("sig") == "v"
    D = standard_simplex(3)
    assert D.initial_vertex((1, 2, 3)) == (1,)
    assert D.initial_vertex(SimplexRef((2, 3), (0,))) == (2,)


def test_prism_point_is_interval():
    P = prism(point())
    assert counts(P.simpset) == (2, 1)
    assert len(P.tagged("in")) == 1 and len(P.tagged("out")) == 1


def test_prism_interval_counts():
    P = prism(interval())
    assert counts(P.simpset) == (4, 5, 2)
    assert validate_simpset(P.simpset)


def test_prism_circle_counts_and_euler():
    P = prism(circle())
    assert counts(P.simpset) == (2, 4, 2)
    assert P.simpset.euler() == 0
    assert validate_simpset(P.simpset)


def test_prism_ends_isomorphic_to_base():
    for X in [circle(), torus(), interval(), sphere(2)]:
        P = prism(X)
        for tag, emap in (("in", P.meta["in_map"]), ("out", P.meta["out_map"])):
            sub = P.simpset.restrict(P.tagged(tag))
            # the explicit end map is an isomorphism: dims and faces transport
            assert set(emap.values()) == set(sub.all_gens())
            for g in X.all_gens():
                assert sub.dim_of[emap[g]] == X.dim_of[g]
                for i in range(X.dim_of[g] + 1):
                    if X.dim_of[g] == 0:
                        break
                    fx = X.face(g, i)
                    fp = sub.face(emap[g], i)
                    assert fp.core == emap[fx.core] or fp.word != ()


def test_prism_of_prism_euler():
    P2 = prism(prism(circle()).simpset)
    assert P2.simpset.euler() == 0
    assert validate_simpset(P2.simpset)
    P3 = prism(prism(point()).simpset)
    assert counts(P3.simpset) == (4, 5, 2)


def test_prism_torus_euler():
    P = prism(torus())
    assert P.simpset.euler() == 0
    assert validate_simpset(P.simpset)


def test_glue_two_circle_prisms():
    A, B = prism(circle()), prism(circle())
    G = glue(A, B, prism_end_matching(A, B))
    assert counts(G.simpset) == (3, 7, 4)
    assert validate_simpset(G.simpset)
    assert len(G.tagged("in")) == 2 and len(G.tagged("out")) == 2


def test_glue_point_prisms_is_subdivided_interval():
    A, B = prism(point()), prism(point())
    G = glue(A, B, prism_end_matching(A, B))
    assert counts(G.simpset) == (3, 2)


def test_glue_along_empty_is_disjoint_union():
    A = prism(circle())
    B = Stratification(torus(), {"in": frozenset(), "out": frozenset()})
    A2 = Stratification(A.simpset, {"in": A.tagged("in"), "out": frozenset()})
    G = glue(A2, B, {})
    assert G.simpset.k_count(0) == 3
    assert G.simpset.euler() == A.simpset.euler() + torus().euler()


def test_glue_rejects_bad_matching():
    A, B = prism(circle()), prism(circle())
    iso = prism_end_matching(A, B)
    with pytest.raises(BoundaryError):
        glue(A, B, dict(list(iso.items())[:-1]))


def test_glue_rejects_face_incompatible_matching():
    A, B = prism(interval()), prism(interval())
    iso = prism_end_matching(A, B)
    om, im = A.meta["out_map"], B.meta["in_map"]
    v0, v1 = om[(0,)], om[(1,)]
    bad = dict(iso)
    bad[v0], bad[v1] = iso[v1], iso[v0]  # swap the matched end vertices
    with pytest.raises(BoundaryError):
        glue(A, B, bad)


def test_glue_euler_additivity():
    A, B = prism(circle()), prism(circle())
    G = glue(A, B, prism_end_matching(A, B))
    shared = circle()
    assert G.simpset.euler() == A.simpset.euler() + B.simpset.euler() - shared.euler()


def test_glue_argument_order_up_to_iso():
    A, B = prism(circle()), prism(circle())
    G1 = glue(A, B, prism_end_matching(A, B))
    G2 = glue(B, A, prism_end_matching(B, A))
    assert find_simpset_iso(G1.simpset, G2.simpset) is not None


def test_k_count_rel():
    P = prism(circle())
    boundary = P.tagged("in") | P.tagged("out")
    assert P.simpset.k_count_rel(1, boundary) == 2
    assert P.simpset.k_count_rel(0, boundary) == 0
    edge_only = {g for g in P.tagged("in") if P.simpset.dim_of[g] == 1}
    with pytest.raises(SchemaError):
        P.simpset.k_count_rel(1, edge_only)  # not face-closed


def test_window_vertical_identity_over_circle():
    W = window_support(prism(circle()), prism(circle()))
    Z = W.simpset
    assert validate_simpset(Z)
    assert counts(Z) == (4, 14, 16, 6)
    assert Z.euler() == 0
    frame = W.frame_gens()
    assert sum(1 for g in Z.gens(1) if g not in frame) == 2
    assert sum(1 for g in Z.gens(2) if g not in frame) == 8
    assert sum(1 for g in Z.gens(3) if g not in frame) == 6


def test_window_over_point_prism():
    W = window_support(prism(point()), prism(point()))
    assert counts(W.simpset) == (4, 5, 2)
    # the frame is the boundary square: everything except diagonal+triangles
    frame = W.frame_gens()
    assert sum(1 for g in W.simpset.gens(1) if g not in frame) == 1
    assert sum(1 for g in W.simpset.gens(2) if g not in frame) == 2


def test_window_empty_boundaries_disjoint_union():
    T = Stratification(torus(), {"in": frozenset(), "out": frozenset()})
    W = window_support(T, T)
    assert W.simpset.k_count(0) == 2
    assert W.frame_gens() == frozenset(W.simpset.all_gens())


def test_window_mismatch_rejected():
    with pytest.raises(BoundaryError):
        window_support(prism(circle()), prism(point()))


def test_restrict_keeps_ids_and_faces():
    T = torus()
    sub = T.restrict(T.subcomplex_closure({"a"}))
    assert set(sub.all_gens()) == {"v", "a"}
    assert sub.face("a", 0) == SimplexRef("v")
