"""Fixed-step RK4 integration of the exact coupled amplitude equations.

This module is the independent numerical oracle for the analytic dressed
solutions.  It integrates

    i da_j/dt = E_j a_j + V(t) sum_k K_jk a_k,      a(0) = (1, 0, 0),

directly in the bare basis (no interaction-picture transformation), for
degenerate or split level energies, and it applies ideal kicks spectrally
since a delta function cannot enter a time stepper.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .dressed import (
    AmplitudeState,
    CouplingRatios,
    DressedBasis,
    amplitudes_at,
    populations_general_array,
)
from .errors import InvalidConfigError, NormDriftExceededError
from .pulses import Pulse

DEFAULT_STEPS_PER_PERIOD = 20000
DEFAULT_SAMPLES_PER_PERIOD = 2000
NORM_DRIFT_LIMIT = 1e-6
STEPS_ENV_VAR = "TRIPOP_STEPS"


@dataclass(frozen=True)
class LevelEnergies:
    """Bare level energies E_j (hbar = 1); the degenerate case is (0, 0, 0)."""

    e: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if len(self.e) != 3 or not all(math.isfinite(v) for v in self.e):
            raise ValueError(f"need three finite energies, got {self.e}")

    @classmethod
    def degenerate(cls) -> "LevelEnergies":
        return cls((0.0, 0.0, 0.0))

    @classmethod
    def from_splittings(cls, omega12: float, omega13: float) -> "LevelEnergies":
        """Energies with E1 = 0 and the requested splittings E1 - E_j."""
        return cls((0.0, -omega12, -omega13))

    @property
    def omega12(self) -> float:
        return self.e[0] - self.e[1]

    @property
    def omega13(self) -> float:
        return self.e[0] - self.e[2]

    def is_degenerate(self) -> bool:
        return self.e == (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step RK4 settings.

    ``dt`` overrides the step directly; otherwise the step is the drive
    period (or, failing that, the integration window) divided by
    ``steps_per_period``.  Every ``record_every``-th step lands in the trace.
    """

    dt: float | None = None
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD
    record_every: int = DEFAULT_STEPS_PER_PERIOD // DEFAULT_SAMPLES_PER_PERIOD

    def __post_init__(self):
        if self.dt is not None and not self.dt > 0:
            raise InvalidConfigError("dt must be positive")
        if self.steps_per_period <= 0 or self.record_every <= 0:
            raise InvalidConfigError("steps_per_period and record_every must be positive")

    def resolve_dt(self, pulse: Pulse, t_end: float) -> float:
        if self.dt is not None:
            return self.dt
        if pulse.shape == "harmonic":
            return pulse.period / self.steps_per_period
        return t_end / self.steps_per_period


def default_steps_per_period() -> int:
    """Integrator default, overridable through the TRIPOP_STEPS variable."""
    raw = os.environ.get(STEPS_ENV_VAR)
    if raw is None:
        return DEFAULT_STEPS_PER_PERIOD
    steps = int(raw)
    if steps <= 0:
        raise InvalidConfigError(f"{STEPS_ENV_VAR} must be a positive integer, got {raw!r}")
    return steps


@dataclass(frozen=True)
class PopulationTrace:
    """Time-sampled populations (and optionally amplitudes) from one run."""

    times: np.ndarray
    populations: np.ndarray  # shape (N, 3)
    norm_drift: float
    amplitudes: np.ndarray | None = None  # shape (N, 3), complex

    def __post_init__(self):
        if len(self.times) != len(self.populations):
            raise ValueError("times and populations length mismatch")
        self.times.setflags(write=False)
        self.populations.setflags(write=False)
        if self.amplitudes is not None:
            self.amplitudes.setflags(write=False)

    @property
    def p1(self) -> np.ndarray:
        return self.populations[:, 0]

    @property
    def p2(self) -> np.ndarray:
        return self.populations[:, 1]

    @property
    def p3(self) -> np.ndarray:
        return self.populations[:, 2]


def integrate(
    ratios: CouplingRatios,
    energies: LevelEnergies,
    pulse: Pulse,
    t_end: float,
    config: IntegratorConfig = IntegratorConfig(),
    *,
    record_amplitudes: bool = False,
) -> PopulationTrace:
    """Classical RK4 propagation from t = 0 to t_end with a fixed step.

    Populations are squared magnitudes taken at sample times, never
    accumulated.  The run is rejected (NormDriftExceededError) when
    max |1 - sum |a_i|^2| exceeds 1e-6.
    """
    if pulse.shape == "ideal_kick":
        raise InvalidConfigError("an ideal kick cannot be time-stepped; use propagate_kick")
    if not t_end > 0:
        raise InvalidConfigError("t_end must be positive")

    dt_nominal = config.resolve_dt(pulse, t_end)
    n_steps = max(1, int(math.ceil(t_end / dt_nominal - 1e-12)))
    dt = t_end / n_steps

    k_matrix = ratios.coupling_matrix().astype(complex)
    e_diag = np.asarray(energies.e, dtype=complex)
    value = pulse.value

    def deriv(t: float, a: np.ndarray) -> np.ndarray:
        return -1j * (e_diag * a + value(t) * (k_matrix @ a))

    n_records = n_steps // config.record_every + 1 + (1 if n_steps % config.record_every else 0)
    times = np.empty(n_records)
    pops = np.empty((n_records, 3))
    amps = np.empty((n_records, 3), dtype=complex) if record_amplitudes else None

    a = np.array([1.0 + 0.0j, 0.0j, 0.0j])
    worst_drift = 0.0
    idx = 0

    def record(step: int, t: float) -> None:
        nonlocal idx, worst_drift
        p = np.abs(a) ** 2
        worst_drift = max(worst_drift, abs(1.0 - float(p.sum())))
        times[idx] = t
        pops[idx] = p
        if amps is not None:
            amps[idx] = a
        idx += 1

    record(0, 0.0)
    for step in range(n_steps):
        t = step * dt
        k1 = deriv(t, a)
        k2 = deriv(t + 0.5 * dt, a + 0.5 * dt * k1)
        k3 = deriv(t + 0.5 * dt, a + 0.5 * dt * k2)
        k4 = deriv(t + dt, a + dt * k3)
        a = a + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if (step + 1) % config.record_every == 0 or step + 1 == n_steps:
            record(step + 1, (step + 1) * dt)

    times = times[:idx]
    pops = pops[:idx]
    if amps is not None:
        amps = amps[:idx]

    if worst_drift > NORM_DRIFT_LIMIT:
        raise NormDriftExceededError(
            f"norm drift {worst_drift:.3e} exceeds {NORM_DRIFT_LIMIT:g}; reduce the step"
        )
    return PopulationTrace(times=times, populations=pops, norm_drift=worst_drift, amplitudes=amps)


def propagate_kick(basis: DressedBasis, kick_area: float) -> AmplitudeState:
    """State right after an ideal kick of the given area (spectral result).

    The kick is instantaneous, so level energies accumulate no phase during
    it: the post-kick amplitudes are the dressed evolution evaluated at the
    kick area, regardless of any level splittings.
    """
    return amplitudes_at(basis, kick_area)


def compare_analytic_numeric(
    ratios: CouplingRatios,
    pulse: Pulse,
    t_end: float,
    config: IntegratorConfig = IntegratorConfig(),
) -> float:
    """Max componentwise |P_analytic - P_numeric| over one RK4 run.

    Requires degenerate energies and eps = 0, where the dressed solution is
    exact; the returned deviation is then pure integrator error.
    """
    if ratios.eps != (0.0, 0.0, 0.0):
        raise InvalidConfigError("analytic comparison requires eps = (0, 0, 0)")
    from .dressed import build_dressed_basis  # local import avoids a cycle at module load

    basis = build_dressed_basis(ratios)
    trace = integrate(ratios, LevelEnergies.degenerate(), pulse, t_end, config)
    actions = np.array([pulse.area(t).a for t in trace.times])
    analytic = populations_general_array(basis, actions)
    return float(np.max(np.abs(analytic - trace.populations)))


def dwell_time(trace: PopulationTrace, threshold: float = 0.99) -> float:
    """Total trace time with the target-level population above ``threshold``.

    Plumbing diagnostic for pulse-shaping studies; the value depends on the
    trace sampling and carries no analytic guarantee.
    """
    if len(trace.times) < 2:
        return 0.0
    above = trace.p2 > threshold
    dt_segments = np.diff(trace.times)
    return float(np.sum(dt_segments[above[:-1]]))


def export_trace_csv(trace: PopulationTrace, path) -> None:
    """Write ``t,p1,p2,p3`` rows (plus amplitude columns when recorded)."""
    with open(path, "w", newline="") as fh:
        header = "t,p1,p2,p3"
        if trace.amplitudes is not None:
            header += ",re_a1,im_a1,re_a2,im_a2,re_a3,im_a3"
        fh.write(header + "\n")
        for i, t in enumerate(trace.times):
            row = [t, *trace.populations[i]]
            if trace.amplitudes is not None:
                for c in trace.amplitudes[i]:
                    row.extend((c.real, c.imag))
            fh.write(",".join(repr(float(v)) for v in row) + "\n")
