"""Independent checks: certificate re-expansion and series annihilation.

Nothing here calls the reduction or elimination code; identities are
re-expanded with :func:`weylelim.weyl.op_mul` and compared exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, Optional, Union

from .eliminate import EliminationResult
from .exactarith import ONE, X, Y
from .reduce import AnnihilatorPair, GapReport, ReducedForm
from .series import TruncatedSeries
from .weyl import WeylOperator, op_apply, op_mul


@dataclass
class CheckReport:
    check: str
    passed: bool
    residual: Optional[WeylOperator] = None
    confirmed_order: Optional[int] = None
    contracts: Dict[str, bool] = field(default_factory=dict)
    residual_series: Optional[list] = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        if self.residual_series is not None:
            residual = self.residual_series
        elif self.residual is not None:
            residual = self.residual.to_json()
        else:
            residual = None
        out = {
            "check": self.check,
            "pass": self.passed,
            "residual": residual,
            "confirmed_order": self.confirmed_order,
        }
        if self.contracts:
            out["contracts"] = dict(self.contracts)
        return out


def _combo(sys_A: WeylOperator, sys_B: WeylOperator, u: WeylOperator, v: WeylOperator) -> WeylOperator:
    return op_mul(u, sys_A) + op_mul(v, sys_B)


def _check_reduced(sys: AnnihilatorPair, red: ReducedForm) -> CheckReport:
    lhs = WeylOperator.monomial(red.alpha, red.beta, sys.L ** red.l_power)
    residual = lhs - red.remainder - _combo(sys.A, sys.B, red.cofactor_a, red.cofactor_b)
    contracts = {"identity": not residual}
    terms = red.remainder.terms
    degs = [c.total_degree() for c in terms.values()]
    if red.kind == "step":
        # one pass: degree <= d, each index under the stairs or of lower total order
        contracts["degree<=d"] = all(g <= sys.d for g in degs)
        contracts["indices"] = all(
            (i <= sys.m - 1 and j <= sys.n - 1) or i + j <= red.alpha + red.beta - 1
            for (i, j) in terms
        )
        contracts["l_power==1"] = red.l_power == 1
    else:
        contracts["under_stairs"] = all(i < sys.m and j < sys.n for (i, j) in terms)
        contracts["degree<=k*d"] = all(g <= red.k * sys.d for g in degs)
        contracts["k<=bound"] = red.k <= max(0, red.alpha + red.beta + 1 - min(sys.m, sys.n))
        contracts["l_power==k"] = red.l_power == red.k
    return CheckReport(f"reduced-form:{red.kind}", all(contracts.values()), residual, None, contracts)


def _check_elimination(sys: AnnihilatorPair, res: EliminationResult) -> CheckReport:
    lhs = res.S.lmul_poly(sys.L ** res.N)
    residual = lhs - _combo(sys.A, sys.B, res.cofactor_a, res.cofactor_b)
    contracts = {
        "identity": not residual,
        "nonzero": bool(res.S),
        "y_free": all(b == 0 for c in res.S.terms.values() for (_, b) in c),
    }
    return CheckReport("elimination", all(contracts.values()), residual, None, contracts)


def _check_gap(rep: GapReport) -> CheckReport:
    target1 = WeylOperator.monomial(rep.m, 1, rep.L)
    target2 = WeylOperator.monomial(rep.m, 1, rep.L * rep.L)
    r1 = target1 - rep.single_remainder - op_mul(rep.single_cofactor, rep.A)
    r2 = target2 - rep.squared_remainder - op_mul(rep.squared_cofactor, rep.A)
    contracts = {
        "single_identity": not r1,
        "squared_identity": not r2,
        "obstruction_iff_Ly": rep.obstruction == bool(rep.L.diff("y")),
        "squared_reduced": all(i < rep.m and j <= 1 for (i, j) in rep.squared_remainder.terms),
    }
    return CheckReport("claim-gap", all(contracts.values()), r1 + r2, None, contracts)


def check_certificate(
    sys: Optional[AnnihilatorPair], res: Union[EliminationResult, ReducedForm, GapReport]
) -> CheckReport:
    """Re-expand a claimed identity and report exact equality plus contracts."""
    if isinstance(res, ReducedForm):
        return _check_reduced(sys, res)
    if isinstance(res, EliminationResult):
        return _check_elimination(sys if sys is not None else res.sys, res)
    if isinstance(res, GapReport):
        return _check_gap(res)
    raise TypeError(f"cannot check {type(res).__name__}")


def check_annihilates(p: WeylOperator, s: TruncatedSeries) -> CheckReport:
    """Apply ``p`` to ``s``; pass iff every reliable coefficient vanishes."""
    out = op_apply(p, s)
    nonzero = sorted(out.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))
    residual = [[a, b, str(c)] for (a, b), c in nonzero[:8]] if nonzero else []
    return CheckReport(
        "annihilates",
        not nonzero,
        confirmed_order=out.order,
        residual_series=residual,
    )


@dataclass(frozen=True)
class SampleSystem:
    name: str
    pair: AnnihilatorPair
    coefficient: Callable[[int, int], object]
    description: str

    def solution(self, order: int) -> TruncatedSeries:
        return TruncatedSeries.from_function(order, self.coefficient)


def _geometric_coeff(s: int, t: int):
    return comb(s + t, s)


def _exp_coeff(s: int, t: int):
    return Fraction(1, factorial(s) * factorial(t))


def _sqrt_coeff(s: int, t: int):
    # (1-u)^(-1/2) = sum C(2n, n) u^n / 4^n with u = x + y
    n = s + t
    return Fraction(comb(2 * n, n) * comb(n, s), 4 ** n)


def _catalog() -> Dict[str, SampleSystem]:
    from .reduce import make_system

    L = ONE - X - Y
    geo = make_system(WeylOperator({(1, 0): L, (0, 0): -1}), WeylOperator({(0, 1): L, (0, 0): -1}))
    exp = make_system(WeylOperator({(1, 0): 1, (0, 0): -1}), WeylOperator({(0, 1): 1, (0, 0): -1}))
    L2 = L.scale(2)
    sq = make_system(WeylOperator({(1, 0): L2, (0, 0): -1}), WeylOperator({(0, 1): L2, (0, 0): -1}))
    return {
        "geometric": SampleSystem("geometric", geo, _geometric_coeff, "f = 1/(1 - x - y)"),
        "exp": SampleSystem("exp", exp, _exp_coeff, "f = exp(x + y)"),
        "sqrt": SampleSystem("sqrt", sq, _sqrt_coeff, "f = (1 - x - y)^(-1/2)"),
    }


CATALOG_NAMES = ("geometric", "exp", "sqrt")


def sample_system(name: str) -> SampleSystem:
    catalog = _catalog()
    try:
        return catalog[name]
    except KeyError:
        raise KeyError(f"unknown sample system {name!r}; choose from {', '.join(CATALOG_NAMES)}") from None
