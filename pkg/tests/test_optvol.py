import math

import numpy as np
import pytest

from idealpoly import corpus, optvol, rivin, specfun, triang
from idealpoly.errors import InfeasibleStart

PI = math.pi


def optimum(t, apex=None):
    res = rivin.is_realizable(t, apex=apex)
    assert res.realizable
    return rivin, optvol.maximize_volume(res.link)


def test_volume_examples():
    link = triang.build_link(triang.tetrahedron(), 3)
    a = optvol.AngleAssignment(link=link, values=np.full((1, 3), PI / 3))
    assert optvol.volume(a) == pytest.approx(1.014942, abs=5e-6)
    # a right isoceles triangle contributes 2 L(pi/4) since L(pi/2) = 0
    b = optvol.AngleAssignment(link=link, values=np.array([[PI / 2, PI / 4, PI / 4]]))
    assert optvol.volume(b) == pytest.approx(
        2 * specfun.lobachevsky(PI / 4), abs=1e-12
    )
    with pytest.raises(ValueError):
        optvol.volume(optvol.AngleAssignment(link=link, values=np.array([[PI, 0.0, 0.0]])))


def test_octahedron_volume_value():
    link = triang.build_link(triang.octahedron(), 0)
    vals = np.array([[PI / 2, PI / 4, PI / 4]] * 4)
    a = optvol.AngleAssignment(link=link, values=vals)
    assert optvol.volume(a) == pytest.approx(3.663862, abs=5e-6)


def test_maximize_tetrahedron():
    _, out = optimum(triang.tetrahedron())
    assert out.volume == pytest.approx(1.014942, abs=5e-6)
    assert np.allclose(out.angles.flat, PI / 3, atol=1e-9)
    assert out.kkt_residual < 1e-10
    for e, v in out.dihedrals.per_edge.items():
        assert v == pytest.approx(PI / 3, abs=1e-9)


def test_maximize_bipyramid():
    _, out = optimum(triang.bipyramid(), apex=0)
    assert out.volume == pytest.approx(2.029883, abs=5e-6)
    per_edge = out.dihedrals.per_edge
    # equator edges open to 2 pi/3, edges into either tip to pi/3
    for e in ((1, 2), (2, 3), (1, 3)):
        assert per_edge[e] == pytest.approx(2 * PI / 3, abs=1e-9)
    for e in ((0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)):
        assert per_edge[e] == pytest.approx(PI / 3, abs=1e-9)


def test_maximize_octahedron():
    _, out = optimum(triang.octahedron())
    assert out.volume == pytest.approx(3.663862, abs=5e-6)
    for v in out.dihedrals.per_edge.values():
        assert v == pytest.approx(PI / 2, abs=1e-9)
    # interior corners pi/2, hull corners pi/4
    vals = sorted(round(x, 9) for x in out.angles.flat)
    assert vals[:8] == [round(PI / 4, 9)] * 8
    assert vals[8:] == [round(PI / 2, 9)] * 4


def test_restart_stability_is_certified_by_uniqueness():
    rng = np.random.default_rng(12)
    t = corpus.all_types(7)[3]
    res = rivin.is_realizable(t)
    outs = [
        optvol.maximize_volume(res.link, start=s)
        for s in rivin.random_interior_points(res.system, 10, rng)
    ]
    vols = [o.volume for o in outs]
    assert max(vols) - min(vols) < 1e-9
    for i in range(len(outs)):
        for j in range(i + 1, len(outs)):
            assert np.max(np.abs(outs[i].angles.flat - outs[j].angles.flat)) < 1e-6


def test_apex_invariance_of_max_volume():
    for t in corpus.all_types(6):
        vols = []
        for apex in range(t.n):
            res = rivin.is_realizable(t, apex=apex)
            if res.realizable:
                vols.append(optvol.maximize_volume(res.link).volume)
        assert max(vols) - min(vols) < 1e-8


def test_infeasible_start_rejected():
    link = triang.build_link(triang.tetrahedron(), 3)
    with pytest.raises(InfeasibleStart):
        optvol.maximize_volume(link, start=np.array([2.0, 2.0, 2.0]))
    with pytest.raises(InfeasibleStart):
        optvol.maximize_volume(link, start=np.array([-0.1, PI / 2, PI - 0.4 - PI / 2 + 0.1]))


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(13)
    link = triang.build_link(triang.octahedron(), 0)
    res = rivin.check_feasible(rivin.assemble_constraints(link))
    theta = res.witness
    g = optvol.volume_gradient(theta)
    h = 1e-6
    for i in range(len(theta)):
        up, dn = theta.copy(), theta.copy()
        up[i] += h
        dn[i] -= h
        fd = (optvol._volume_flat(up) - optvol._volume_flat(dn)) / (2 * h)
        assert abs(fd - g[i]) < 1e-6


def test_barrier_path_volumes_nondecreasing():
    t = corpus.all_types(7)[2]
    res = rivin.is_realizable(t)
    out = optvol.maximize_volume(res.link)
    pv = out.barrier_volumes
    assert all(pv[i + 1] >= pv[i] - 1e-12 for i in range(len(pv) - 1))


def test_optimizer_against_grid_oracle_tetrahedron():
    # brute force over the reduced simplex at step pi/2000
    _, out = optimum(triang.tetrahedron())
    step = PI / 2000
    best = (-1.0, None)
    for i in range(1, 2000):
        for j in range(1, 2000 - i):
            a, b = i * step, j * step
            c = PI - a - b
            v = (
                specfun.lobachevsky(a)
                + specfun.lobachevsky(b)
                + specfun.lobachevsky(c)
            )
            if v > best[0]:
                best = (v, (a, b, c))
    assert out.volume >= best[0] - 1e-12
    assert np.max(np.abs(np.sort(out.angles.flat) - np.sort(best[1]))) <= step


def test_dihedral_totality_and_rationality():
    _, out4 = optimum(triang.tetrahedron())
    assert set(out4.dihedrals.per_edge) == set(triang.tetrahedron().edges())
    rats = [optvol.detect_rational(v) for v in out4.dihedrals.per_edge.values()]
    assert all(r is not None and (r.p, r.q) == (1, 3) for r in rats)

    _, out6 = optimum(triang.octahedron())
    assert set(out6.dihedrals.per_edge) == set(triang.octahedron().edges())
    rats = [optvol.detect_rational(v) for v in out6.dihedrals.per_edge.values()]
    assert all(r is not None and (r.p, r.q) == (1, 2) for r in rats)


def test_detect_rational_examples():
    r = optvol.detect_rational(PI / 3)
    assert (r.p, r.q) == (1, 3)
    r = optvol.detect_rational(4 * PI / 11)
    assert (r.p, r.q) == (4, 11)
    assert optvol.detect_rational(PI * 0.3183098862) is None
    r = optvol.detect_rational(PI)  # flat edge
    assert (r.p, r.q) == (1, 1)
    assert optvol.detect_rational(2 * PI / 3 + 1e-6) is None
    r = optvol.detect_rational(2 * PI / 3 + 1e-12)
    assert (r.p, r.q) == (2, 3)


def test_detect_rational_against_fraction_oracle():
    from fractions import Fraction

    rng = np.random.default_rng(14)
    for _ in range(500):
        if rng.uniform() < 0.5:
            p = int(rng.integers(1, 99))
            q = int(rng.integers(p + 1, 101))
            x = p / q
        else:
            x = float(rng.uniform(0.01, 0.99))
        theta = x * PI
        ours = optvol.detect_rational(theta)
        best = Fraction(theta / PI).limit_denominator(100)
        matches = abs(theta / PI - best) < 1e-10 and best.numerator >= 1
        if matches:
            assert ours is not None
            assert (ours.p, ours.q) == (best.numerator, best.denominator)
        else:
            assert ours is None


def test_shape_parameters():
    _, out6 = optimum(triang.octahedron())
    shapes = optvol.shape_parameters(out6.angles).per_interior_edge
    assert len(shapes) == 4
    for z in shapes.values():
        assert abs(abs(z) - 1.0) < 1e-12
        assert z == pytest.approx(complex(0.0, 1.0), abs=1e-9)  # exp(i pi/2)

    _, out5 = optimum(triang.bipyramid(), apex=0)
    shapes = optvol.shape_parameters(out5.angles).per_interior_edge
    for z in shapes.values():
        assert z == pytest.approx(
            complex(math.cos(PI / 3), math.sin(PI / 3)), abs=1e-9
        )


def test_degenerate_type_reports_boundary_active():
    # stacked 6-vertex type seen from the stacking vertex: its optimum
    # collapses one link triangle, pinning two corners at zero
    t = triang.validate(
        6,
        [(0, 3, 1), (1, 3, 2), (0, 1, 4), (1, 2, 4), (2, 0, 4),
         (0, 2, 5), (2, 3, 5), (3, 0, 5)],
    )
    res = rivin.is_realizable(t, apex=5)
    out = optvol.maximize_volume(res.link)
    assert out.boundary_active
    assert any(kind == "corner" for kind, _ in out.active_constraints)
    assert out.volume == pytest.approx(3 * 1.0149416064096537, abs=1e-9)
