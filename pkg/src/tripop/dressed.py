"""Dressed-state solution of the degenerate three-level atom.

With all three levels at the same energy and every interaction matrix
element sharing one time profile V(t), the coupled amplitude equations

    i da1/dt = (eps1*a1 + alpha*a2 + beta*a3) V(t)
    i da2/dt = (alpha*a1 + eps2*a2 +      a3) V(t)
    i da3/dt = (beta*a1  +      a2 + eps3*a3) V(t)

are solved exactly by linear combinations c = a1 + x*a2 + y*a3 that evolve
by pure phases, c_j(t) = c_j(0) * exp(-i z_j A(t)), where A(t) is the action
integral of V.  The admissible y are the roots of a cubic whose coefficients
depend only on the dimensionless coupling ratios; x and z follow from the
fixed-point relations

    z = eps1 + alpha*x + beta*y
    x*z = alpha + eps2*x + y
    y*z = beta + x + eps3*y

This module solves that eigenproblem and evaluates the resulting bare-state
amplitudes and populations as functions of the accumulated action.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ComplexRootsError,
    NoConsistentXError,
    RepeatedRootError,
    SingularBasisError,
)

ROOT_TOL = 1e-9
RESIDUAL_TOL = 1e-9
DET_TOL = 1e-9
INVERSE_TOL = 1e-10


@dataclass(frozen=True)
class CouplingRatios:
    """Dimensionless shape of the interaction matrix, V_jk(t) = ratio * V(t).

    alpha is V12/V23, beta is V13/V23, and eps holds the diagonal ratios
    V_jj/V23.  The exact analytic transfer conditions assume eps == (0,0,0).
    """

    alpha: float
    beta: float
    eps: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        values = (self.alpha, self.beta, *self.eps)
        if not all(math.isfinite(v) for v in values):
            raise ValueError(f"coupling ratios must be finite, got {values}")
        if len(self.eps) != 3:
            raise ValueError("eps must hold exactly three diagonal ratios")

    def coupling_matrix(self) -> np.ndarray:
        """Symmetric 3x3 ratio matrix K with K[1,2] = 1 and K[j,j] = eps_j."""
        a, b = self.alpha, self.beta
        e1, e2, e3 = self.eps
        return np.array([[e1, a, b], [a, e2, 1.0], [b, 1.0, e3]])


@dataclass(frozen=True)
class DressedBasis:
    """Eigen-structure of the coupling-ratio matrix in the (1, x, y) gauge.

    Row j of ``m`` is (1, x_j, y_j); ``m_inv`` is its exact inverse and
    ``det`` the determinant.  The bare amplitudes at action A are
    a_i(A) = sum_j m_inv[i, j] * exp(-i z_j A).
    """

    x: tuple[float, float, float]
    y: tuple[float, float, float]
    z: tuple[float, float, float]
    det: float
    m: np.ndarray
    m_inv: np.ndarray
    ratios: CouplingRatios

    def __post_init__(self):
        self.m.setflags(write=False)
        self.m_inv.setflags(write=False)


@dataclass(frozen=True)
class AmplitudeState:
    """Complex amplitudes of the three bare levels at a given action value."""

    action: float
    a: tuple[complex, complex, complex]

    def populations(self) -> "PopulationSample":
        p1, p2, p3 = (abs(c) ** 2 for c in self.a)
        return PopulationSample(p1, p2, p3)

    def norm(self) -> float:
        return sum(abs(c) ** 2 for c in self.a)


@dataclass(frozen=True)
class PopulationSample:
    """Occupation probabilities of the three levels."""

    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        for p in (self.p1, self.p2, self.p3):
            if not -1e-8 <= p <= 1.0 + 1e-8:
                raise ValueError(f"population {p} outside [0, 1]")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.p1, self.p2, self.p3)

    def total(self) -> float:
        return self.p1 + self.p2 + self.p3


def cubic_coefficients(ratios: CouplingRatios) -> tuple[float, float, float, float]:
    """Coefficients (a, b, c, d) of the eigenvalue cubic a*y^3 + b*y^2 + c*y + d = 0.

    Eliminating x and z from the fixed-point relations leaves a cubic in y
    alone; for eps == 0 it reduces to

        (beta^2 - alpha^2) y^3 + alpha (2 - alpha^2 - beta^2) y^2
        + (2 alpha^2 - beta^2 - 1) y + alpha (beta^2 - 1) = 0.
    """
    al, be = ratios.alpha, ratios.beta
    e1, e2, e3 = ratios.eps
    a = (be**2 - al**2) + al * be * (e2 - e3)
    b = al * (2.0 - al**2 - be**2) + be * (2.0 * e1 - e2 - e3) + al * (e1 - e3) * (e2 - e3)
    c = (2.0 * al**2 - be**2 - 1.0) + al * be * (2.0 * e3 - e1 - e2) + (e1 - e2) * (e1 - e3)
    d = al * (be**2 - 1.0) - be * (e1 - e2)
    return a, b, c, d


def _cubic_roots_trig(a: float, b: float, c: float, d: float) -> list[float] | None:
    """Three real roots via the trigonometric method, or None if the
    discriminant is too close to zero to trust the closed form."""
    p = (3.0 * a * c - b * b) / (3.0 * a * a)
    q = (2.0 * b**3 - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a**3)
    disc = -4.0 * p**3 - 27.0 * q * q
    scale = max(abs(4.0 * p**3), 27.0 * q * q, 1e-300)
    if disc / scale < ROOT_TOL:
        return None  # repeated or complex pair; caller decides via companion matrix
    # disc > 0 forces p < 0
    m = 2.0 * math.sqrt(-p / 3.0)
    arg = 3.0 * q / (p * m)
    arg = min(1.0, max(-1.0, arg))
    theta = math.acos(arg) / 3.0
    shift = b / (3.0 * a)
    return [m * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift for k in range(3)]


def _cubic_roots_companion(a: float, b: float, c: float, d: float) -> list[float]:
    """Roots from numpy's companion-matrix eigensolver; rejects complex pairs."""
    roots = np.roots([a, b, c, d])
    max_imag = float(np.max(np.abs(roots.imag)))
    if max_imag > ROOT_TOL * (1.0 + float(np.max(np.abs(roots.real)))):
        raise ComplexRootsError(
            f"cubic has complex roots (max |Im| = {max_imag:.3e}); "
            "coupling ratios lie outside the real-spectrum regime"
        )
    return [float(r) for r in roots.real]


def _polish_root(a: float, b: float, c: float, d: float, y: float) -> float:
    # one or two Newton steps squeeze the closed-form roots to full precision
    for _ in range(2):
        f = ((a * y + b) * y + c) * y + d
        df = (3.0 * a * y + 2.0 * b) * y + c
        if df == 0.0:
            break
        step = f / df
        y -= step
        if abs(step) < 1e-16 * max(1.0, abs(y)):
            break
    return y


def solve_cubic(ratios: CouplingRatios) -> tuple[float, float, float]:
    """Real roots of the eigenvalue cubic, sorted for stable downstream indexing.

    A root with |y| < 1e-9 (present whenever beta = +-1 and eps = 0) is
    placed last; the remaining roots are sorted in descending order.

    Raises RepeatedRootError when the cubic degenerates (vanishing leading
    coefficient, which signals a dressed state orthogonal to level 1, or a
    repeated root) and ComplexRootsError when the spectrum is not real.
    """
    a, b, c, d = cubic_coefficients(ratios)
    scale = max(abs(a), abs(b), abs(c), abs(d))
    if scale == 0.0:
        raise RepeatedRootError(
            "eigenvalue cubic vanishes identically (|alpha| = |beta| = 1 with equal "
            "diagonals); the dressed basis is degenerate"
        )
    if abs(a) <= ROOT_TOL * scale:
        raise RepeatedRootError(
            "leading cubic coefficient vanishes (|alpha| = |beta| up to diagonal "
            "terms); one dressed state decouples from level 1"
        )

    roots = _cubic_roots_trig(a, b, c, d)
    if roots is None:
        roots = _cubic_roots_companion(a, b, c, d)
    roots = [_polish_root(a, b, c, d, y) for y in roots]

    ymax = max(abs(y) for y in roots)
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(roots[i] - roots[j]) < ROOT_TOL * max(1.0, ymax):
                raise RepeatedRootError(
                    f"cubic roots {roots[i]:.6g} and {roots[j]:.6g} coincide within "
                    "tolerance; the dressed basis is singular"
                )

    for y in roots:
        residual = abs(((a * y + b) * y + c) * y + d)
        if residual >= RESIDUAL_TOL * scale:
            raise RepeatedRootError(
                f"cubic root {y!r} has residual {residual:.3e} relative to "
                f"coefficient scale {scale:.3e}"
            )

    roots.sort(reverse=True)
    zero = [y for y in roots if abs(y) < ROOT_TOL]
    if zero:
        roots = [y for y in roots if abs(y) >= ROOT_TOL] + zero
    return (roots[0], roots[1], roots[2])


def _recover_x(ratios: CouplingRatios, y: float) -> float:
    """x for a given cubic root y, from the fixed-point relations.

    Eliminating z between z = eps1 + alpha*x + beta*y and y*z = beta + x + eps3*y
    gives a relation linear in x; when its pivot alpha*y - 1 degenerates the
    quadratic from the x relation is used instead, picking the branch that
    satisfies the remaining constraint.
    """
    al, be = ratios.alpha, ratios.beta
    e1, e2, e3 = ratios.eps
    pivot = al * y - 1.0
    if abs(pivot) > 1e-8 * (1.0 + abs(al * y)):
        return (be * (1.0 - y * y) + (e3 - e1) * y) / pivot
    # pivot degenerate requires alpha != 0, so the quadratic below is genuine
    disc = (e1 + be * y - e2) ** 2 + 4.0 * al * (al + y)
    if disc < 0.0:
        raise NoConsistentXError(f"no real x for root y={y!r}")
    sq = math.sqrt(disc)
    candidates = [(-(e1 + be * y - e2) + sq) / (2.0 * al), (-(e1 + be * y - e2) - sq) / (2.0 * al)]

    def y_residual(x: float) -> float:
        z = e1 + al * x + be * y
        return abs(y * z - (be + x + e3 * y))

    return min(candidates, key=y_residual)


def build_dressed_basis(ratios: CouplingRatios) -> DressedBasis:
    """Full dressed basis: roots y_j, partners x_j, phase rates z_j, and the
    basis matrix with its exact inverse.

    For eps = 0 and beta = +-1 this reproduces the sign pattern
    x = (beta, beta, -beta) with y = (y+, y-, 0).
    """
    ys = solve_cubic(ratios)
    al, be = ratios.alpha, ratios.beta
    e1, e2, e3 = ratios.eps

    xs: list[float] = []
    zs: list[float] = []
    for y in ys:
        x = _recover_x(ratios, y)
        z = e1 + al * x + be * y
        r_x = abs(x * z - (al + e2 * x + y))
        r_y = abs(y * z - (be + x + e3 * y))
        if r_x >= RESIDUAL_TOL or r_y >= RESIDUAL_TOL:
            raise NoConsistentXError(
                f"fixed-point residuals ({r_x:.3e}, {r_y:.3e}) too large for root y={y!r}"
            )
        xs.append(x)
        zs.append(z)

    x1, x2, x3 = xs
    y1, y2, y3 = ys
    det = x1 * y2 + x2 * y3 + x3 * y1 - x1 * y3 - x2 * y1 - x3 * y2
    if abs(det) <= DET_TOL:
        raise SingularBasisError(f"dressed-basis determinant {det:.3e} below tolerance")

    m = np.array([[1.0, x1, y1], [1.0, x2, y2], [1.0, x3, y3]])
    m_inv = (
        np.array(
            [
                [x2 * y3 - x3 * y2, x3 * y1 - x1 * y3, x1 * y2 - x2 * y1],
                [y2 - y3, y3 - y1, y1 - y2],
                [x3 - x2, x1 - x3, x2 - x1],
            ]
        )
        / det
    )
    if float(np.max(np.abs(m @ m_inv - np.eye(3)))) > INVERSE_TOL:
        raise SingularBasisError("basis matrix inversion failed the identity check")

    return DressedBasis(
        x=tuple(xs), y=tuple(ys), z=tuple(zs), det=det, m=m, m_inv=m_inv, ratios=ratios
    )


def amplitudes_at(basis: DressedBasis, action: float) -> AmplitudeState:
    """Bare-level amplitudes at a given action value, from a_1(0) = 1.

    a_i(A) = sum_j m_inv[i, j] exp(-i z_j A); at A = 0 the inverse rows sum
    to the initial condition (1, 0, 0).
    """
    phases = np.exp(-1j * np.asarray(basis.z) * action)
    a = basis.m_inv @ phases
    return AmplitudeState(action=float(action), a=(complex(a[0]), complex(a[1]), complex(a[2])))


def _cofactor_rows(basis: DressedBasis) -> np.ndarray:
    x1, x2, x3 = basis.x
    y1, y2, y3 = basis.y
    return np.array(
        [
            [x2 * y3 - x3 * y2, x3 * y1 - x1 * y3, x1 * y2 - x2 * y1],
            [y2 - y3, y3 - y1, y1 - y2],
            [x3 - x2, x1 - x3, x2 - x1],
        ]
    )


def populations_general_array(basis: DressedBasis, actions: np.ndarray) -> np.ndarray:
    """Populations of all three levels on an array of action values, shape (N, 3).

    Evaluates the cosine-sum form

        P_k(A) = [c1^2 + c2^2 + c3^2 + 2 c1 c2 cos((z1-z2)A)
                  + 2 c1 c3 cos((z1-z3)A) + 2 c2 c3 cos((z2-z3)A)] / det^2

    with (c1, c2, c3) the k-th cofactor row of the basis matrix.  All action
    dependence enters through cosines, so P_k(A) = P_k(-A) exactly.
    """
    actions = np.atleast_1d(np.asarray(actions, dtype=float))
    z1, z2, z3 = basis.z
    cof = _cofactor_rows(basis)
    c12 = np.cos((z1 - z2) * actions)
    c13 = np.cos((z1 - z3) * actions)
    c23 = np.cos((z2 - z3) * actions)
    out = np.empty((actions.size, 3))
    for k in range(3):
        c1, c2, c3 = cof[k]
        out[:, k] = (
            c1 * c1 + c2 * c2 + c3 * c3
            + 2.0 * c1 * c2 * c12
            + 2.0 * c1 * c3 * c13
            + 2.0 * c2 * c3 * c23
        ) / basis.det**2
    return out


def populations_general(basis: DressedBasis, action: float) -> PopulationSample:
    """Populations at one action value; agrees with |amplitudes_at|^2 componentwise."""
    p = populations_general_array(basis, np.array([action]))[0]
    return PopulationSample(float(p[0]), float(p[1]), float(p[2]))
