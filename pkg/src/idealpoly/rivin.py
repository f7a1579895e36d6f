"""Linear realizability conditions for ideal polyhedra, cone-from-infinity form.

With one vertex sent to infinity, the corner angles of the bounded link
triangles must satisfy:

  * each triangle's corners sum to pi (equality),
  * the corners around each interior link vertex sum to 2*pi (equality),
  * the two corners opposite an interior link edge sum to < pi,
  * the corners at each hull vertex sum to < pi (convexity of the vertical
    edge above it),
  * every corner is positive.

Strict inequalities are relaxed by a tolerance epsilon.  Feasibility is
decided by phase-1 simplex; a feasible witness is re-centered by a second LP
that maximizes the minimum slack, so downstream barrier methods get a
strictly interior start.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import simplex
from .errors import InputError, NumericalFailure
from .triang import build_link, choose_apex

DEFAULT_EPSILON = 1e-6


@dataclass(frozen=True)
class ConstraintSystem:
    """0/1 rows over flat corner indices (corner = 3*face + slot).

    ``eq_rows``/``ub_rows`` are (indices, rhs, kind, key) tuples; the epsilon
    relaxation is already folded into the right-hand sides.  Corner lower
    bounds theta >= epsilon are kept implicit (``lower_bound``).
    """

    link: object
    epsilon: float
    n_vars: int
    eq_rows: tuple
    ub_rows: tuple

    @property
    def lower_bound(self):
        return self.epsilon

    def eq_matrix(self):
        A = np.zeros((len(self.eq_rows), self.n_vars))
        b = np.zeros(len(self.eq_rows))
        for i, (idx, rhs, _, _) in enumerate(self.eq_rows):
            A[i, list(idx)] = 1.0
            b[i] = rhs
        return A, b

    def ub_matrix(self):
        A = np.zeros((len(self.ub_rows), self.n_vars))
        b = np.zeros(len(self.ub_rows))
        for i, (idx, rhs, _, _) in enumerate(self.ub_rows):
            A[i, list(idx)] = 1.0
            b[i] = rhs
        return A, b


def flat(corner):
    f, s = corner
    return 3 * f + s


def assemble_constraints(link, epsilon=DEFAULT_EPSILON):
    """Build the constraint system for one apex link."""
    if not 0.0 < epsilon < math.pi:
        raise InputError(f"epsilon {epsilon!r} outside (0, pi)")
    n_vars = link.n_corners

    eq_rows = []
    for f in range(len(link.bounded_faces)):
        eq_rows.append(((3 * f, 3 * f + 1, 3 * f + 2), math.pi, "triangle", f))
    for v in link.interior_vertices:
        idx = tuple(flat(c) for c in link.corners_at[v])
        eq_rows.append((idx, 2.0 * math.pi, "interior_vertex", v))

    ub_rows = []
    for e in link.interior_edges:
        idx = tuple(flat(c) for c in link.opposite[e])
        ub_rows.append((idx, math.pi - epsilon, "interior_edge", e))
    for w in link.hull_cycle:
        idx = tuple(flat(c) for c in link.corners_at[w])
        ub_rows.append((idx, math.pi - epsilon, "hull_vertex", w))

    return ConstraintSystem(
        link=link,
        epsilon=epsilon,
        n_vars=n_vars,
        eq_rows=tuple(eq_rows),
        ub_rows=tuple(ub_rows),
    )


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: object  # flat ndarray of corner angles, or None
    certificate: float  # phase-1 objective when infeasible
    min_slack: float  # centered minimum slack when feasible


def _standard_form(system):
    """Shift to y = theta - epsilon >= 0 and return (A_eq, b_eq, A_ub, b_ub)."""
    eps = system.epsilon
    A_eq, b_eq = system.eq_matrix()
    A_ub, b_ub = system.ub_matrix()
    b_eq = b_eq - eps * A_eq.sum(axis=1)
    b_ub = b_ub - eps * A_ub.sum(axis=1)
    return A_eq, b_eq, A_ub, b_ub


def check_feasible(system):
    """Phase-1 feasibility plus one slack-centering pass.

    The centering LP maximizes t subject to every inequality slack and every
    corner lower-bound slack being >= t; its optimum is the witness.
    """
    A_eq, b_eq, A_ub, b_ub = _standard_form(system)
    n = system.n_vars
    res = simplex.solve(np.zeros(n), A_eq, b_eq, A_ub, b_ub)
    if res.status == "infeasible":
        return FeasibilityResult(
            feasible=False,
            witness=None,
            certificate=float(res.phase1_objective),
            min_slack=float("nan"),
        )
    if res.status != "optimal":
        raise NumericalFailure(f"unexpected LP status {res.status}")

    # centering: variables (y, t); maximize t
    m_ub = A_ub.shape[0]
    A_eq2 = np.hstack([A_eq, np.zeros((A_eq.shape[0], 1))])
    rows = []
    rhs = []
    if m_ub:
        rows.append(np.hstack([A_ub, np.ones((m_ub, 1))]))  # a.y + t <= b
        rhs.append(b_ub)
    lb = np.hstack([-np.eye(n), np.ones((n, 1))])  # t - y_c <= 0
    rows.append(lb)
    rhs.append(np.zeros(n))
    A_ub2 = np.vstack(rows)
    b_ub2 = np.concatenate(rhs)
    c2 = np.zeros(n + 1)
    c2[-1] = 1.0
    res2 = simplex.solve(c2, A_eq2, b_eq, A_ub2, b_ub2, maximize=True)
    if res2.status != "optimal":
        raise NumericalFailure(f"centering LP status {res2.status}")
    y = res2.x[:n]
    t = float(res2.x[-1])
    witness = y + system.epsilon
    return FeasibilityResult(
        feasible=True, witness=witness, certificate=0.0, min_slack=t
    )


@dataclass(frozen=True)
class RealizabilityResult:
    realizable: bool
    apex: int
    link: object
    system: ConstraintSystem
    witness: object
    certificate: float


def is_realizable(t, epsilon=DEFAULT_EPSILON, apex=None):
    """Realizability of a sphere triangulation as a convex ideal polyhedron."""
    if apex is None:
        apex = choose_apex(t)
    link = build_link(t, apex)
    system = assemble_constraints(link, epsilon)
    res = check_feasible(system)
    return RealizabilityResult(
        realizable=res.feasible,
        apex=apex,
        link=link,
        system=system,
        witness=res.witness,
        certificate=res.certificate,
    )


def witness_slacks(system, theta):
    """Minimum slack over all constraints, and max equality residual."""
    A_eq, b_eq = system.eq_matrix()
    A_ub, b_ub = system.ub_matrix()
    eq_res = 0.0
    if A_eq.shape[0]:
        eq_res = float(np.max(np.abs(A_eq @ theta - b_eq)))
    slacks = [float(np.min(theta) - system.epsilon)]
    if A_ub.shape[0]:
        slacks.append(float(np.min(b_ub - A_ub @ theta)))
    return min(slacks), eq_res


def random_interior_points(system, count, rng):
    """Strictly interior points via random convex combinations of LP vertices.

    Solves a few LPs with random objectives (simplex returns vertices of the
    feasible polytope) and mixes them with Dirichlet weights together with the
    centered witness.
    """
    base = check_feasible(system)
    if not base.feasible:
        raise InputError("system is infeasible; no interior points exist")
    A_eq, b_eq, A_ub, b_ub = _standard_form(system)
    n = system.n_vars
    vertices = [base.witness - system.epsilon]
    for _ in range(max(4, min(8, n))):
        c = rng.standard_normal(n)
        res = simplex.solve(c, A_eq, b_eq, A_ub, b_ub, maximize=True)
        if res.status == "optimal":
            vertices.append(res.x)
    V = np.array(vertices)
    out = []
    for _ in range(count):
        w = rng.dirichlet(np.ones(len(vertices)))
        # anchor a minimum share on the centered witness for strict interiority
        w = 0.25 * np.eye(len(vertices))[0] + 0.75 * w
        out.append(V.T @ w + system.epsilon)
    return out
