"""Odd-integer families of complete population-transfer conditions.

Complete transfer from level 1 to level 2 at action A(t0) happens exactly
when the coupling ratios and the action satisfy

    alpha = r (n2 - n1),   beta = +-1,   3 r A(t0) = pi,
    r = sign * sqrt(2 / (n1 n2)),

where n1 = 2*n_o + n_o' and n2 = n_o + 2*n_o' for arbitrary odd integers
(n_o, n_o') with n1*n2 > 0.  Equivalently (n1+n2)/3 must be an even integer
while (2n1-n2)/3 and (2n2-n1)/3 are odd.

Sign bookkeeping: populations depend on the action only through cosines, so
they are even in A; the sign = -1 member of a pair (a global sign flip of
V(t)) is physically indistinguishable from the sign = +1 member, and the
condition with alpha of opposite sign at the same positive action is simply
the order-swapped pair (n2, n1).  Enumeration therefore emits r > 0 rows by
default, with both alpha signs appearing through the pair order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .dressed import CouplingRatios, PopulationSample
from .errors import InvalidPairError

CONDITION_TOL = 1e-12


@dataclass(frozen=True)
class OddPair:
    """A pair of odd integers (n_o, n_o') generating one family member."""

    n_o: int
    n_op: int

    def __post_init__(self):
        if self.n_o % 2 == 0 or self.n_op % 2 == 0:
            raise InvalidPairError(f"({self.n_o}, {self.n_op}) must both be odd")
        if self.n1 * self.n2 <= 0:
            raise InvalidPairError(
                f"pair ({self.n_o}, {self.n_op}) gives n1*n2 = {self.n1 * self.n2} <= 0, "
                "which would make the level-3 probability negative"
            )

    @property
    def n1(self) -> int:
        return 2 * self.n_o + self.n_op

    @property
    def n2(self) -> int:
        return self.n_o + 2 * self.n_op


@dataclass(frozen=True)
class TransferCondition:
    """One member of the complete-transfer family.

    ``target`` is the level that becomes fully occupied at the transfer
    action.  For target 2 the couplings are (alpha, beta = +-1); for target 3
    the roles of the two level-1 couplings are interchanged, so ``alpha`` is
    +-1 and ``beta`` carries the r(n2-n1) value.
    """

    pair: OddPair
    n1: int
    n2: int
    r: float
    alpha: float
    beta: float
    action_t0: float
    sign: int
    target: int = 2

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        if self.target not in (2, 3):
            raise ValueError("target level must be 2 or 3")
        structural = self.alpha if self.target == 2 else self.beta
        direct = self.beta if self.target == 2 else self.alpha
        if direct not in (-1.0, 1.0):
            raise ValueError("the direct 1<->3 coupling ratio must be +-1")
        checks = {
            "3 r A(t0) = pi": abs(3.0 * self.r * self.action_t0 - math.pi),
            "alpha = r (n2 - n1)": abs(structural - self.r * (self.n2 - self.n1)),
            "r^2 n1 n2 = 2": abs(self.r**2 * self.n1 * self.n2 - 2.0),
        }
        for name, err in checks.items():
            if err > CONDITION_TOL * max(1.0, abs(self.action_t0)):
                raise ValueError(f"condition invariant {name} violated by {err:.3e}")
        if (self.n1 + self.n2) % 6 != 0:
            raise ValueError("(n1 + n2)/3 must be an even integer")
        for v in ((2 * self.n1 - self.n2) // 3, (2 * self.n2 - self.n1) // 3):
            if v % 2 == 0:
                raise ValueError("(2n1 - n2)/3 and (2n2 - n1)/3 must be odd")

    @property
    def product(self) -> int:
        return self.n1 * self.n2

    def ratios(self, beta: float | None = None) -> CouplingRatios:
        """Coupling ratios realizing this condition (eps = 0).

        For target-2 conditions ``beta`` may override the stored +-1 choice.
        """
        if self.target == 2:
            b = self.beta if beta is None else float(beta)
            if b not in (-1.0, 1.0):
                raise ValueError("beta must be +1 or -1")
            return CouplingRatios(alpha=self.alpha, beta=b)
        return CouplingRatios(alpha=self.alpha, beta=self.beta)


@dataclass(frozen=True)
class CaseClassification:
    """The three redundant (k, k') integer sets attached to one condition.

    Each set satisfies its own product identity equal to n1*n2 = 18 E^2 with
    E = A(t0)/pi: case i (k even, k' odd) uses (k-k')(2k+k'); case ii (both
    odd) uses (2k+k')(k+2k'); case iii (k odd, k' even) uses (2k'+k)(k'-k).
    """

    case_i: tuple[int, int]
    case_ii: tuple[int, int]
    case_iii: tuple[int, int]
    e_value: float


def condition_from_odd_pair(pair: OddPair, sign: int = 1, beta: int = 1) -> TransferCondition:
    """Family member for one odd pair and one sign of r.

    Both closed forms of r, via n1*n2 and via (n_o, n_o'), agree:
    n1*n2 = 2*n_o^2 + 5*n_o*n_o' + 2*n_o'^2.
    """
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    if beta not in (-1, 1):
        raise ValueError("beta must be +1 or -1")
    n1, n2 = pair.n1, pair.n2
    product = n1 * n2
    r = sign * math.sqrt(2.0 / product)
    r_alt = sign / math.sqrt(pair.n_o**2 + 2.5 * pair.n_o * pair.n_op + pair.n_op**2)
    if abs(r - r_alt) > CONDITION_TOL:
        raise InvalidPairError(f"inconsistent r formulas for pair {pair}: {r} vs {r_alt}")
    action_t0 = math.pi / (3.0 * r)
    return TransferCondition(
        pair=pair,
        n1=n1,
        n2=n2,
        r=r,
        alpha=r * (n2 - n1),
        beta=float(beta),
        action_t0=action_t0,
        sign=sign,
    )


def condition_for_target(pair: OddPair, sign: int = 1, target: int = 2) -> TransferCondition:
    """Condition transferring the population into the requested level.

    Transfer into level 3 follows from the level-2 family by interchanging
    the two level-1 coupling roles: the returned condition carries
    alpha = +-1 and beta = r(n2 - n1).
    """
    base = condition_from_odd_pair(pair, sign=sign, beta=1)
    if target == 2:
        return base
    if target != 3:
        raise ValueError("target level must be 2 or 3")
    return replace(base, alpha=base.beta, beta=base.alpha, target=3)


def enumerate_conditions(
    max_product: int, signs: tuple[int, ...] = (1,), beta: int = 1
) -> list[TransferCondition]:
    """All family members with n1*n2 <= max_product, sorted by (n1*n2, n1).

    Ordered pairs (n1, n2) and (n2, n1) are distinct rows; the smallest
    attainable product is 5, so any bound below that yields an empty list.
    """
    rows: list[TransferCondition] = []
    if max_product < 5:
        return rows
    for n1 in range(1, max_product + 1, 2):
        for n2 in range(1, max_product // n1 + 1, 2):
            if (2 * n1 - n2) % 3 != 0:
                continue
            n_o = (2 * n1 - n2) // 3
            n_op = (2 * n2 - n1) // 3
            if n_o % 2 == 0 or n_op % 2 == 0 or n_o * n_op == 0:
                continue
            pair = OddPair(n_o, n_op)
            for sign in signs:
                rows.append(condition_from_odd_pair(pair, sign=sign, beta=beta))
    rows.sort(key=lambda c: (c.product, c.n1, -c.sign))
    return rows


def classify_cases(cond: TransferCondition) -> CaseClassification:
    """All three (k, k') integer sets for one condition, in exact arithmetic."""
    n1, n2 = cond.n1, cond.n2
    case_i = ((n1 + n2) // 3, (n2 - 2 * n1) // 3)
    case_ii = ((2 * n1 - n2) // 3, (2 * n2 - n1) // 3)
    case_iii = ((n1 - 2 * n2) // 3, (n1 + n2) // 3)

    identities = [
        (case_i, (case_i[0] - case_i[1]) * (2 * case_i[0] + case_i[1]), (0, 1)),
        (case_ii, (2 * case_ii[0] + case_ii[1]) * (case_ii[0] + 2 * case_ii[1]), (1, 1)),
        (case_iii, (2 * case_iii[1] + case_iii[0]) * (case_iii[1] - case_iii[0]), (1, 0)),
    ]
    for (k, kp), product, parities in identities:
        if product != n1 * n2 or (k % 2, kp % 2) != parities:
            raise ValueError(
                f"case integers ({k}, {kp}) inconsistent with (n1, n2) = ({n1}, {n2})"
            )

    return CaseClassification(
        case_i=case_i,
        case_ii=case_ii,
        case_iii=case_iii,
        e_value=cond.action_t0 / math.pi,
    )


def populations_closed_form_array(cond: TransferCondition, actions: np.ndarray) -> np.ndarray:
    """Closed-form populations on an array of action values, shape (N, 3).

        P1 = [n1^2 + n2^2 + n1 n2 (1 + cos((n1+n2) rA))
              + (n1+n2)(n1 cos((2n1-n2) rA) + n2 cos((2n2-n1) rA))] / (2 (n1+n2)^2)
        P2 = same with the second bracket subtracted
        P3 = 2 n1 n2 / (n1+n2)^2 * sin^2((n1+n2) rA / 2)

    For target-3 conditions the level-2 and level-3 columns are interchanged.
    """
    actions = np.atleast_1d(np.asarray(actions, dtype=float))
    n1, n2, r = cond.n1, cond.n2, cond.r
    s = n1 + n2
    ra = r * actions
    common = n1 * n1 + n2 * n2 + n1 * n2 * (1.0 + np.cos(s * ra))
    direct = s * (n1 * np.cos((2 * n1 - n2) * ra) + n2 * np.cos((2 * n2 - n1) * ra))
    out = np.empty((actions.size, 3))
    out[:, 0] = (common + direct) / (2.0 * s * s)
    out[:, 1] = (common - direct) / (2.0 * s * s)
    out[:, 2] = 2.0 * n1 * n2 / (s * s) * np.sin(0.5 * s * ra) ** 2
    if cond.target == 3:
        out[:, [1, 2]] = out[:, [2, 1]]
    return out


def populations_closed_form(cond: TransferCondition, action: float) -> PopulationSample:
    """Closed-form populations at one action value; (0, 1, 0) at A(t0)."""
    p = populations_closed_form_array(cond, np.array([action]))[0]
    return PopulationSample(float(p[0]), float(p[1]), float(p[2]))


def p3_max(cond: TransferCondition) -> float:
    """Peak intermediate-level population, 2 n1 n2 / (n1 + n2)^2 <= 1/2.

    Equality holds exactly when n1 = n2 (the alpha = 0 family, where all
    transfer is routed through level 3).
    """
    return 2.0 * cond.n1 * cond.n2 / (cond.n1 + cond.n2) ** 2


def validate_condition(
    alpha: float, beta: float, action_t0: float, tol: float = 1e-6
) -> TransferCondition | None:
    """Inverse lookup: the family member matching (alpha, beta, A(t0)), if any.

    Matches |A(t0)| and alpha within relative tolerance ``tol`` and
    reconciles signs through the evenness of the populations in the action;
    returns None when no family member fits.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if abs(abs(beta) - 1.0) > tol:
        return None
    if action_t0 == 0.0:
        return None
    beta_resolved = 1 if beta > 0 else -1
    bound = int(math.ceil((3.0 * abs(action_t0) / math.pi) ** 2 * 2.0 * (1.0 + tol) ** 2))
    sign = 1 if action_t0 > 0 else -1
    # alpha for the sign=+1 member of the ordered pair equals sign(A) * input alpha
    alpha_pos = alpha * sign
    for cand in enumerate_conditions(bound):
        if abs(cand.action_t0 - abs(action_t0)) > tol * cand.action_t0:
            continue
        if abs(cand.alpha - alpha_pos) > tol * max(1.0, abs(cand.alpha)):
            continue
        return condition_from_odd_pair(cand.pair, sign=sign, beta=beta_resolved)
    return None
