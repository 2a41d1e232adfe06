"""Population leakage for nearly degenerate levels, and the two-level reference.

When the levels are split by omega_ij = E_i - E_j != 0 the transfer is no
longer complete.  Two perturbative estimates of the level-2 deficit are
provided:

* an early-time expansion whose leading term grows as t^4,
* its evaluation at the quarter-period transfer time t0 = pi/(2 omega)
  in terms of the family integers.

Both are leading-order truncations.  The early-time form is quantitative
only while both omega_ij * t and V(0) * t are small; the t0 form inherits a
linear-in-omega_ij term from the truncation that the exact dynamics do not
have (the true deficit is quadratic in the splittings, since the degenerate
point maximizes the transfer), so it is an order-of-magnitude indicator
unless the linear term cancels (on the ray 2*omega13 = omega12).  For the
n1 = n2 families both terms vanish identically and the estimate carries no
information at this order.  The measured dual-RK4 deficit is the oracle
against which the estimates are judged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conditions import TransferCondition
from .dressed import CouplingRatios
from .propagate import IntegratorConfig, LevelEnergies, integrate
from .pulses import Pulse, harmonic_for_condition


@dataclass(frozen=True)
class LeakageEstimate:
    """Signed perturbative estimate of the level-2 population deficit."""

    delta_p2: float
    t: float
    regime: str  # "early_time" or "at_t0"


@dataclass(frozen=True)
class TwoLevelParams:
    """Diagonal coupling ratios and action for the two-level reference atom."""

    eps1: float
    eps2: float
    action: float

    def __post_init__(self):
        for v in (self.eps1, self.eps2, self.action):
            if not math.isfinite(v):
                raise ValueError("two-level parameters must be finite")


def delta_p2_early(
    v12_0: float,
    v13_0: float,
    v23_0: float,
    omega12: float,
    omega13: float,
    t: float,
) -> LeakageEstimate:
    """Leading early-time deficit between degenerate and split evolution:

        dP2(t) ~ (1/12) [2 (2 w13 - w12) V12(0) V13(0) V23(0)
                         + w12^2 V12(0)^2] t^4

    The estimate vanishes identically when V12(0) = 0 (alpha = 0 drives);
    the residual deficit is then of higher order.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    bracket = 2.0 * (2.0 * omega13 - omega12) * v12_0 * v13_0 * v23_0 + omega12**2 * v12_0**2
    return LeakageEstimate(delta_p2=bracket * t**4 / 12.0, t=t, regime="early_time")


def delta_p2_at_t0(
    cond: TransferCondition,
    beta: int,
    omega12_ratio: float,
    omega13_ratio: float,
) -> LeakageEstimate:
    """The early-time estimate evaluated at t0 = pi/(2 omega), in family integers:

        dP2(t0) ~ (1/27)(pi/2)^6 [ (pi/3) beta n1 n2 (n2-n1)(2 w13/w - w12/w)
                                   + (n2-n1)^2 (w12/w)^2 ]

    Identically zero for n1 = n2; see the module docstring for the caveats
    on the linear term.
    """
    if beta not in (-1, 1):
        raise ValueError("beta must be +1 or -1")
    n1, n2 = cond.n1, cond.n2
    bracket = (
        (math.pi / 3.0) * beta * n1 * n2 * (n2 - n1) * (2.0 * omega13_ratio - omega12_ratio)
        + (n2 - n1) ** 2 * omega12_ratio**2
    )
    value = (math.pi / 2.0) ** 6 * bracket / 27.0
    t0 = math.pi / 2.0  # quarter period in omega = 1 units
    return LeakageEstimate(delta_p2=value, t=t0, regime="at_t0")


def measured_deficit(
    cond: TransferCondition,
    beta: int,
    omega12_ratio: float,
    omega13_ratio: float,
    config: IntegratorConfig = IntegratorConfig(),
    omega: float = 1.0,
) -> float:
    """1 - P2(t0) measured by RK4 with the condition's harmonic drive."""
    pulse = harmonic_for_condition(cond, omega)
    energies = LevelEnergies.from_splittings(omega12_ratio * omega, omega13_ratio * omega)
    t0 = math.pi / (2.0 * omega)
    trace = integrate(cond.ratios(beta=beta), energies, pulse, t0, config)
    return float(1.0 - trace.p2[-1])


def measured_delta_p2(
    ratios: CouplingRatios,
    pulse: Pulse,
    omega12: float,
    omega13: float,
    t: float,
    config: IntegratorConfig = IntegratorConfig(),
) -> float:
    """Dual-RK4 difference P2_degenerate(t) - P2_split(t); the estimate oracle."""
    deg = integrate(ratios, LevelEnergies.degenerate(), pulse, t, config)
    split = integrate(ratios, LevelEnergies.from_splittings(omega12, omega13), pulse, t, config)
    return float(deg.p2[-1] - split.p2[-1])


def leakage_scan(
    cond: TransferCondition,
    beta: int,
    omega_ratios: list[tuple[float, float]],
    config: IntegratorConfig = IntegratorConfig(),
    omega: float = 1.0,
) -> list[tuple[tuple[float, float], float]]:
    """Measured deficits 1 - P2(t0) over a list of (w12/w, w13/w) pairs."""
    return [
        ((r12, r13), measured_deficit(cond, beta, r12, r13, config=config, omega=omega))
        for r12, r13 in omega_ratios
    ]


def export_scan_csv(rows, estimates, path) -> None:
    """Write ``omega12_ratio,omega13_ratio,deficit,estimate`` rows."""
    if len(rows) != len(estimates):
        raise ValueError("rows and estimates length mismatch")
    with open(path, "w", newline="") as fh:
        fh.write("omega12_ratio,omega13_ratio,deficit,estimate\n")
        for ((r12, r13), deficit), est in zip(rows, estimates):
            fh.write(
                ",".join(repr(float(v)) for v in (r12, r13, deficit, est)) + "\n"
            )


# -- two-level reference atom ---------------------------------------------


def two_level_amplitudes(params: TwoLevelParams) -> tuple[complex, complex]:
    """Amplitudes of the driven two-level atom from the 2x2 dressed basis.

    The dressed combinations c = a1 + y a2 use the roots of
    y^2 + (eps1 - eps2) y - 1 = 0 and evolve with z = eps1 + y; the basis
    determinant is -2 sqrt(1 + ((eps2 - eps1)/2)^2).
    """
    d = params.eps2 - params.eps1
    s = math.sqrt(d * d + 4.0)
    y_plus = 0.5 * (d + s)
    y_minus = 0.5 * (d - s)
    z_plus = params.eps1 + y_plus
    z_minus = params.eps1 + y_minus
    det = y_minus - y_plus
    c_plus = complex(math.cos(z_plus * params.action), -math.sin(z_plus * params.action))
    c_minus = complex(math.cos(z_minus * params.action), -math.sin(z_minus * params.action))
    a1 = (y_minus * c_plus - y_plus * c_minus) / det
    a2 = (-c_plus + c_minus) / det
    return a1, a2


def two_level_populations(params: TwoLevelParams) -> tuple[float, float]:
    """Populations (p1, p2) of the two-level atom at the given action.

    For eps1 = eps2 this reduces to p2 = sin^2(A); for unequal diagonals the
    transfer is capped at p2 <= 1 / (1 + (eps2 - eps1)^2 / 4).
    """
    a1, a2 = two_level_amplitudes(params)
    return abs(a1) ** 2, abs(a2) ** 2


def two_level_p2_bound(eps1: float, eps2: float) -> float:
    """Supremum of p2 over the action for the given diagonal ratios."""
    return 1.0 / (1.0 + (eps2 - eps1) ** 2 / 4.0)


def measured_two_level_deficit(
    omega12_ratio: float,
    omega: float = 1.0,
    steps: int = 20000,
) -> float:
    """1 - P2(t0) for the harmonic two-level atom with v0/omega = pi/2.

    Direct 2x2 RK4 with E = (0, -omega12); the reference scaling is
    dP2(t0) ~ (1/4)(pi/2)^6 (omega12/omega)^2 for small splittings.
    """
    v0 = 0.5 * math.pi * omega
    omega12 = omega12_ratio * omega
    t0 = math.pi / (2.0 * omega)
    dt = t0 / steps
    e_diag = np.array([0.0, -omega12], dtype=complex)

    def deriv(t: float, a: np.ndarray) -> np.ndarray:
        v = v0 * math.cos(omega * t)
        return -1j * (e_diag * a + v * np.array([a[1], a[0]]))

    a = np.array([1.0 + 0.0j, 0.0j])
    for step in range(steps):
        t = step * dt
        k1 = deriv(t, a)
        k2 = deriv(t + 0.5 * dt, a + 0.5 * dt * k1)
        k3 = deriv(t + 0.5 * dt, a + 0.5 * dt * k2)
        k4 = deriv(t + dt, a + dt * k3)
        a = a + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return float(1.0 - abs(a[1]) ** 2)
