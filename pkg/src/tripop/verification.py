"""Self-check harness: every enumerated transfer condition against both paths.

For each condition the analytic closed form must give complete transfer at
the transfer action, the integer case identities must hold exactly, and the
RK4 oracle driven by the matching harmonic pulse must agree with the
analytic populations over a quarter period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conditions import (
    TransferCondition,
    classify_cases,
    enumerate_conditions,
    populations_closed_form,
    populations_closed_form_array,
)
from .errors import TripopError, VerificationFailedError
from .propagate import IntegratorConfig, LevelEnergies, integrate
from .pulses import harmonic_for_condition

ANALYTIC_TOL = 1e-12
ODE_TOL = 1e-6


@dataclass(frozen=True)
class ConditionCheck:
    """Outcome of the verification battery for one condition."""

    condition: TransferCondition
    analytic_error: float
    ode_deviation: float
    cases_ok: bool
    passed: bool


def check_condition(
    cond: TransferCondition,
    steps_per_period: int = 20000,
    analytic_tol: float = ANALYTIC_TOL,
    ode_tol: float = ODE_TOL,
) -> ConditionCheck:
    """Run all three checks for one condition."""
    at_transfer = populations_closed_form(cond, cond.action_t0)
    analytic_error = max(
        abs(at_transfer.p1), abs(1.0 - at_transfer.p2), abs(at_transfer.p3)
    )

    try:
        classify_cases(cond)
        cases_ok = True
    except ValueError:
        cases_ok = False

    omega = 1.0
    pulse = harmonic_for_condition(cond, omega)
    t0 = math.pi / (2.0 * omega)
    config = IntegratorConfig(steps_per_period=steps_per_period)
    try:
        trace = integrate(cond.ratios(), LevelEnergies.degenerate(), pulse, t0, config)
        actions = np.array([pulse.area(t).a for t in trace.times])
        analytic = populations_closed_form_array(cond, actions)
        ode_deviation = float(np.max(np.abs(analytic - trace.populations)))
    except TripopError:
        ode_deviation = math.inf

    passed = analytic_error < analytic_tol and ode_deviation < ode_tol and cases_ok
    return ConditionCheck(
        condition=cond,
        analytic_error=analytic_error,
        ode_deviation=ode_deviation,
        cases_ok=cases_ok,
        passed=passed,
    )


def verify_conditions(
    max_product: int,
    steps_per_period: int = 20000,
    analytic_tol: float = ANALYTIC_TOL,
    ode_tol: float = ODE_TOL,
) -> list[ConditionCheck]:
    """Check every family member with n1*n2 <= max_product."""
    return [
        check_condition(cond, steps_per_period, analytic_tol, ode_tol)
        for cond in enumerate_conditions(max_product)
    ]


def require_all_pass(checks: list[ConditionCheck]) -> None:
    failures = [c for c in checks if not c.passed]
    if failures:
        first = failures[0]
        raise VerificationFailedError(
            f"{len(failures)} of {len(checks)} conditions failed verification; first: "
            f"(n1={first.condition.n1}, n2={first.condition.n2}) "
            f"analytic_error={first.analytic_error:.3e} "
            f"ode_deviation={first.ode_deviation:.3e} cases_ok={first.cases_ok}"
        )
