"""Reduction of ``L^k Dx^a Dy^b`` modulo the left ideal ``<A, B>``.

``A`` involves only ``Dx`` and ``B`` only ``Dy``; both have the same leading
coefficient ``L``.  Every congruence is carried as an exact identity

    L^p * Dx^alpha * Dy^beta = remainder + U*A + V*B

so that membership in the ideal can be re-checked by plain multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

from .exactarith import BiPoly
from .weyl import (
    WeylOperator,
    commute_past,
    dmono,
    is_dx_only,
    is_dy_only,
    leading,
    op_mul,
    op_sum,
)


class InvalidSystemError(ValueError):
    """Raised when two operators do not form an admissible annihilator pair."""


@dataclass(frozen=True)
class AnnihilatorPair:
    """``A = L Dx^m + sum A_i Dx^i`` and ``B = L Dy^n + sum B_j Dy^j``.

    ``d`` bounds the total degree of ``L`` and of every lower coefficient.
    """

    A: WeylOperator
    B: WeylOperator
    L: BiPoly
    m: int
    n: int
    d: int

    def __post_init__(self):
        if not self.A or not self.B or not self.L:
            raise InvalidSystemError("A, B and L must be nonzero")
        if not is_dx_only(self.A):
            raise InvalidSystemError("A must involve Dx only")
        if not is_dy_only(self.B):
            raise InvalidSystemError("B must involve Dy only")
        if self.m < 1 or self.n < 1:
            raise InvalidSystemError("A and B must have positive order")
        if leading(self.A, "x") != (self.m, self.L):
            raise InvalidSystemError("A must have order m and leading coefficient L")
        if leading(self.B, "y") != (self.n, self.L):
            raise InvalidSystemError("B must have order n and leading coefficient L")
        if self.d < _degree_bound(self.A, self.B):
            raise InvalidSystemError("d is below the coefficient degrees")

    def a_coeff(self, i: int) -> BiPoly:
        return self.A.coeff(i, 0)

    def b_coeff(self, j: int) -> BiPoly:
        return self.B.coeff(0, j)

    def tail_a(self) -> WeylOperator:
        """``L Dx^m - A``'s negative: ``sum_{i<m} A_i Dx^i``."""
        return self.A - WeylOperator.monomial(self.m, 0, self.L)

    def tail_b(self) -> WeylOperator:
        return self.B - WeylOperator.monomial(0, self.n, self.L)

    def under_stairs(self, i: int, j: int) -> bool:
        return i < self.m and j < self.n

    def to_json(self) -> dict:
        return {
            "A": self.A.to_json(),
            "B": self.B.to_json(),
            "L": self.L.to_json(),
            "m": self.m,
            "n": self.n,
            "d": self.d,
            "A_text": str(self.A),
            "B_text": str(self.B),
        }

    @classmethod
    def from_json(cls, data) -> "AnnihilatorPair":
        return cls(
            WeylOperator.from_json(data["A"]),
            WeylOperator.from_json(data["B"]),
            BiPoly.from_json(data["L"]),
            int(data["m"]),
            int(data["n"]),
            int(data["d"]),
        )


def _degree_bound(A: WeylOperator, B: WeylOperator) -> int:
    degs = [c.total_degree() for _, c in A.items()] + [c.total_degree() for _, c in B.items()]
    return int(max(degs))


def make_system(rawA: WeylOperator, rawB: WeylOperator) -> AnnihilatorPair:
    """Validate two operators and give them a common leading coefficient.

    If the leading coefficients differ, ``rawA`` is left-multiplied by the
    leading coefficient of ``rawB`` and vice versa; left multiples stay in the
    ideal.
    """
    if not rawA or not rawB:
        raise InvalidSystemError("zero operator")
    if not is_dx_only(rawA):
        raise InvalidSystemError(f"A must involve Dx only: {rawA}")
    if not is_dy_only(rawB):
        raise InvalidSystemError(f"B must involve Dy only: {rawB}")
    m, la = leading(rawA, "x")
    n, lb = leading(rawB, "y")
    if m < 1 or n < 1:
        raise InvalidSystemError("A and B must have positive order in Dx resp. Dy")
    if la == lb:
        A, B, L = rawA, rawB, la
    else:
        A, B, L = rawA.lmul_poly(lb), rawB.lmul_poly(la), la * lb
    return AnnihilatorPair(A, B, L, m, n, _degree_bound(A, B))


@dataclass(frozen=True)
class ReducedForm:
    """``L^l_power * Dx^alpha * Dy^beta = remainder + cofactor_a*A + cofactor_b*B``.

    ``k`` counts the multiplications by ``L`` spent on reduction.  For
    :func:`reduce_full` ``l_power == k``; :func:`reduce_step` always works on
    ``L * Dx^alpha * Dy^beta`` so ``l_power == 1`` and ``k`` is 0 or 1.
    """

    kind: str
    alpha: int
    beta: int
    k: int
    l_power: int
    remainder: WeylOperator
    cofactor_a: WeylOperator
    cofactor_b: WeylOperator

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "alpha": self.alpha,
            "beta": self.beta,
            "k": self.k,
            "l_power": self.l_power,
            "remainder": self.remainder.to_json(),
            "cofactorA": self.cofactor_a.to_json(),
            "cofactorB": self.cofactor_b.to_json(),
            "remainder_text": str(self.remainder),
            "cofactorA_text": str(self.cofactor_a),
            "cofactorB_text": str(self.cofactor_b),
        }

    @classmethod
    def from_json(cls, data) -> "ReducedForm":
        return cls(
            data["kind"],
            int(data["alpha"]),
            int(data["beta"]),
            int(data["k"]),
            int(data["l_power"]),
            WeylOperator.from_json(data["remainder"]),
            WeylOperator.from_json(data["cofactorA"]),
            WeylOperator.from_json(data["cofactorB"]),
        )


_ZERO_OP = WeylOperator()


def reduce_step(sys: AnnihilatorPair, alpha: int, beta: int) -> ReducedForm:
    """One reduction pass on ``L * Dx^alpha * Dy^beta``.

    Every remainder coefficient has total degree at most ``d`` and every
    remainder index is under the stairs or has ``i + j <= alpha + beta - 1``.
    When both orders are too high the ``Dy`` side is reduced first.
    """
    L, m, n = sys.L, sys.m, sys.n
    if alpha < m and beta < n:
        return ReducedForm(
            "step", alpha, beta, 0, 1, WeylOperator.monomial(alpha, beta, L), _ZERO_OP, _ZERO_OP
        )
    if beta >= n:
        # L Dx^a Dy^b = Dx^a Dy^(b-n) B - Dx^a Dy^(b-n) tail_B - Dx^a Q Dy^n - P Dy^b
        _, p_alpha = commute_past(L, alpha, "x")
        _, q_beta = commute_past(L, beta - n, "y")
        lead = dmono(alpha, beta - n)
        remainder = (
            -op_mul(lead, sys.tail_b())
            - op_mul(dmono(alpha, 0), q_beta.shift(0, n))
            - p_alpha.shift(0, beta)
        )
        return ReducedForm("step", alpha, beta, 1, 1, remainder, _ZERO_OP, lead)
    # alpha >= m, beta < n; mirror image with Dx and A
    _, q_beta = commute_past(L, beta, "y")
    _, p_alpha = commute_past(L, alpha - m, "x")
    lead = dmono(alpha - m, beta)
    remainder = (
        -op_mul(lead, sys.tail_a())
        - op_mul(dmono(0, beta), p_alpha.shift(m, 0))
        - q_beta.shift(alpha, 0)
    )
    return ReducedForm("step", alpha, beta, 1, 1, remainder, lead, _ZERO_OP)


class StepCache:
    """Memo of :func:`reduce_step` results for one system."""

    def __init__(self, sys: AnnihilatorPair):
        self.sys = sys
        self._memo: Dict[Tuple[int, int], ReducedForm] = {}

    def __call__(self, alpha: int, beta: int) -> ReducedForm:
        key = (alpha, beta)
        got = self._memo.get(key)
        if got is None:
            got = self._memo[key] = reduce_step(self.sys, alpha, beta)
        return got


def reduction_power_bound(sys: AnnihilatorPair, alpha: int, beta: int) -> int:
    """Worst-case number of ``L`` factors needed: ``alpha+beta+1-min(m, n)``."""
    return max(0, alpha + beta + 1 - min(sys.m, sys.n))


def reduce_full(
    sys: AnnihilatorPair, alpha: int, beta: int, steps: Optional[StepCache] = None
) -> ReducedForm:
    """Reduce ``L^k Dx^alpha Dy^beta`` to a remainder strictly under the stairs.

    Each pass multiplies the running identity by ``L`` and replaces every
    ``c * L * Dx^i * Dy^j`` outside the stairs by its one-step reduction.
    Outside terms lose one order per pass, so at most
    ``alpha + beta + 1 - min(m, n)`` passes are needed.  Remainder
    coefficients have total degree at most ``k*d``.
    """
    if alpha < sys.m and beta < sys.n:
        return ReducedForm("full", alpha, beta, 0, 0, dmono(alpha, beta), _ZERO_OP, _ZERO_OP)
    steps = steps or StepCache(sys)
    first = steps(alpha, beta)
    remainder, u, v, k = first.remainder, first.cofactor_a, first.cofactor_b, 1
    L = sys.L
    while any(not sys.under_stairs(i, j) for (i, j) in remainder.terms):
        new_rem = {}
        u_parts = [u.lmul_poly(L)]
        v_parts = [v.lmul_poly(L)]
        rem_parts = []
        for (i, j), c in remainder.items():
            if sys.under_stairs(i, j):
                new_rem[(i, j)] = L * c
                continue
            st = steps(i, j)
            rem_parts.append(st.remainder.lmul_poly(c))
            if st.cofactor_a:
                u_parts.append(st.cofactor_a.lmul_poly(c))
            if st.cofactor_b:
                v_parts.append(st.cofactor_b.lmul_poly(c))
        remainder = op_sum(rem_parts + [WeylOperator(new_rem)])
        u = op_sum(u_parts)
        v = op_sum(v_parts)
        k += 1
    return ReducedForm("full", alpha, beta, k, k, remainder, u, v)


@dataclass
class GapReport:
    """Single-``L`` versus ``L^2`` reduction of ``L Dx^m Dy`` modulo ``<A>`` alone.

    ``single``: ``L Dx^m Dy = single_remainder + single_cofactor * A``.
    ``squared``: ``L^2 Dx^m Dy = squared_remainder + squared_cofactor * A``.
    """

    A: WeylOperator
    L: BiPoly
    m: int
    L_y: BiPoly
    single_remainder: WeylOperator
    single_cofactor: WeylOperator
    obstruction: bool
    obstruction_terms: WeylOperator
    squared_remainder: WeylOperator
    squared_cofactor: WeylOperator
    squared_reduced: bool

    def to_json(self) -> dict:
        return {
            "A": self.A.to_json(),
            "A_text": str(self.A),
            "L": self.L.to_json(),
            "m": self.m,
            "L_y": self.L_y.to_json(),
            "single": {
                "remainder": self.single_remainder.to_json(),
                "remainder_text": str(self.single_remainder),
                "cofactorA": self.single_cofactor.to_json(),
                "cofactorA_text": str(self.single_cofactor),
            },
            "obstruction": self.obstruction,
            "obstruction_terms": self.obstruction_terms.to_json(),
            "obstruction_text": str(self.obstruction_terms),
            "squared": {
                "remainder": self.squared_remainder.to_json(),
                "remainder_text": str(self.squared_remainder),
                "cofactorA": self.squared_cofactor.to_json(),
                "cofactorA_text": str(self.squared_cofactor),
            },
            "squared_reduced": self.squared_reduced,
        }


def claim_gap_demo(sys: Union[AnnihilatorPair, WeylOperator]) -> GapReport:
    """Show that one factor ``L`` does not reduce ``L Dx^m Dy`` below ``Dx^m``.

    Write ``A = L Dx^m - R0``.  Multiplying ``L Dx^m = R0 (mod A)`` by ``Dy``
    and moving ``L`` to the left leaves ``-L_y Dx^m``, which is still of order
    ``m`` in ``Dx`` unless ``L_y = 0``.  A second factor ``L`` removes it.
    Accepts an :class:`AnnihilatorPair` or a bare ``Dx``-only operator ``A``.
    """
    if isinstance(sys, AnnihilatorPair):
        A, L, m = sys.A, sys.L, sys.m
    else:
        A = sys
        if not A or not is_dx_only(A):
            raise InvalidSystemError("A must be a nonzero operator in Dx only")
        m, L = leading(A, "x")
        if m < 1:
            raise InvalidSystemError("A must have positive order in Dx")
    target = WeylOperator.monomial(m, 1, L)
    dy = dmono(0, 1)
    single_cofactor = dy
    single_remainder = target - op_mul(dy, A)
    high = WeylOperator({ij: c for ij, c in single_remainder.items() if ij[0] >= m})

    # L * (c Dx^i Dy^j) with i >= m: subtract c Dx^(i-m) Dy^j A
    extra = [WeylOperator.monomial(i - m, j, c) for (i, j), c in high.items()]
    squared_cofactor = op_sum([single_cofactor.lmul_poly(L)] + extra)
    squared_remainder = single_remainder.lmul_poly(L) - op_sum(
        [op_mul(e, A) for e in extra]
    )
    squared_reduced = all(i < m and j <= 1 for (i, j) in squared_remainder.terms)
    return GapReport(
        A=A,
        L=L,
        m=m,
        L_y=L.diff("y"),
        single_remainder=single_remainder,
        single_cofactor=single_cofactor,
        obstruction=bool(high),
        obstruction_terms=high,
        squared_remainder=squared_remainder,
        squared_cofactor=squared_cofactor,
        squared_reduced=squared_reduced,
    )
