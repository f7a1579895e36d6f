import numpy as np
import pytest

from idealpoly import corpus, triang
from idealpoly.errors import (
    DegenerateFace,
    Disconnected,
    EulerViolation,
    InvalidVertex,
    NonManifoldEdge,
)

TETRA_FACES = [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]]


def test_validate_tetrahedron():
    t = triang.validate(4, TETRA_FACES)
    assert t.n == 4
    assert len(t.faces) == 4
    assert t.degrees() == [3, 3, 3, 3]
    assert len(t.edges()) == 6


def test_validate_octahedron():
    t = triang.octahedron()
    assert len(t.faces) == 2 * 6 - 4
    assert t.degrees() == [4] * 6


def test_missing_face_is_euler_violation():
    with pytest.raises(EulerViolation):
        triang.validate(4, TETRA_FACES[:3])


def test_flipped_face_is_non_manifold():
    bad = [f[:] for f in TETRA_FACES]
    bad[3] = [2, 3, 1]  # reversed orientation duplicates directed edges
    with pytest.raises(NonManifoldEdge):
        triang.validate(4, bad)


def test_degenerate_face_rejected():
    bad = [f[:] for f in TETRA_FACES]
    bad[0] = [0, 0, 1]
    with pytest.raises(DegenerateFace):
        triang.validate(4, bad)


def test_disconnected_rejected():
    # tetrahedron plus a 7-vertex torus: 18 faces and 27 edges match the
    # n=11 sphere counts exactly, so only the connectivity walk can object
    torus = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    torus += [(i, (i + 3) % 7, (i + 2) % 7) for i in range(7)]
    faces = [[v + 7 for v in f] for f in TETRA_FACES]
    faces += [list(f) for f in torus]
    with pytest.raises(Disconnected):
        triang.validate(11, faces)


def test_choose_apex_prefers_degree_then_id():
    t = triang.tetrahedron()
    assert triang.choose_apex(t) == 0
    assert triang.choose_apex(triang.octahedron()) == 0
    # bipyramid with equator {0, 1, 2} at degree 4
    t = triang.validate(
        5, [(3, 0, 1), (3, 1, 2), (3, 2, 0), (4, 1, 0), (4, 2, 1), (4, 0, 2)]
    )
    assert t.degrees() == [4, 4, 4, 3, 3]
    assert triang.choose_apex(t) == 0


def test_build_link_tetrahedron():
    link = triang.build_link(triang.tetrahedron(), 3)
    assert link.bounded_faces == ((0, 1, 2),)
    assert len(link.hull_cycle) == 3
    assert link.interior_vertices == ()
    assert link.interior_edges == ()
    assert len(link.hull_edges) == 3


def test_build_link_octahedron():
    t = triang.octahedron()
    for apex in range(6):
        link = triang.build_link(t, apex)
        assert len(link.bounded_faces) == 4
        assert len(link.interior_vertices) == 1
        assert len(link.interior_edges) == 4
        assert len(link.hull_edges) == 4


def test_build_link_bipyramid_degree3_apex():
    link = triang.build_link(triang.bipyramid(), 0)
    assert len(link.bounded_faces) == 3
    assert link.interior_vertices == (4,)
    assert len(link.interior_edges) == 3
    assert len(link.hull_edges) == 3


def test_build_link_counting_invariants():
    for t in corpus.all_types(7):
        deg = t.degrees()
        for apex in range(t.n):
            link = triang.build_link(t, apex)
            assert len(link.bounded_faces) == (2 * t.n - 4) - deg[apex]
            assert len(link.interior_vertices) + len(link.hull_cycle) + 1 == t.n
            for e in link.interior_edges:
                assert len(link.opposite[e]) == 2
            for e in link.hull_edges:
                assert len(link.opposite[e]) == 1


def test_build_link_invalid_vertex():
    with pytest.raises(InvalidVertex):
        triang.build_link(triang.tetrahedron(), 7)


def test_automorphism_counts():
    assert triang.automorphism_counts(triang.tetrahedron()) == triang.AutomorphismCounts(
        orientation_preserving=12, total=24
    )
    assert triang.automorphism_counts(triang.octahedron()) == triang.AutomorphismCounts(
        orientation_preserving=24, total=48
    )
    assert triang.automorphism_counts(triang.bipyramid()).orientation_preserving == 6


def test_trivial_symmetry_triangulation():
    # an 8-vertex type with no symmetry at all (found by scanning the catalog)
    for t in corpus.all_types(8):
        if triang.automorphism_counts(t).total == 1:
            break
    else:
        pytest.fail("expected at least one asymmetric 8-vertex type")


def test_automorphisms_invariant_under_relabeling():
    rng = np.random.default_rng(5)
    for t in (triang.tetrahedron(), triang.bipyramid(), triang.octahedron()):
        base = triang.automorphism_counts(t)
        for _ in range(5):
            perm = rng.permutation(t.n)
            faces = [[int(perm[v]) for v in f] for f in t.faces]
            relabeled = triang.validate(t.n, faces)
            assert triang.automorphism_counts(relabeled) == base


def test_canonical_form_detects_isomorphism():
    rng = np.random.default_rng(6)
    t = triang.octahedron()
    key = triang.canonical_form(t)
    for _ in range(5):
        perm = rng.permutation(6)
        faces = [[int(perm[v]) for v in f] for f in t.faces]
        assert triang.canonical_form(triang.validate(6, faces)) == key
    other = corpus.all_types(6)[0]
    if triang.canonical_form(other) == key:
        other = corpus.all_types(6)[1]
    assert triang.canonical_form(other) != key


def test_type_counts_small_n():
    assert [len(corpus.all_types(n)) for n in (4, 5, 6, 7, 8)] == [1, 1, 2, 5, 14]


def test_euler_relation_over_corpus():
    for n in (4, 5, 6, 7):
        for t in corpus.all_types(n):
            v, e, f = t.n, len(t.edges()), len(t.faces)
            assert v - e + f == 2
            assert e == 3 * t.n - 6
            assert f == 2 * t.n - 4
