"""Elimination of ``y`` from the left ideal ``<A, B>`` by linear algebra.

For a budget ``N`` every operator ``L^N x^g Dx^a Dy^b`` with ``g + a + b <= N``
reduces to a combination of the finitely many residue monomials
``x^s y^t Dx^i Dy^j`` (``s + t <= N(d+1)``, ``i < m``, ``j < n``).  A left
kernel vector of the resulting coefficient matrix gives an operator ``S``
with coefficients in ``Q[x]`` such that ``L^N S`` lies in the ideal.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .exactarith import BiPoly, Rational, X, parse_rational, rat_str
from .reduce import AnnihilatorPair, ReducedForm, StepCache, reduce_full
from .weyl import WeylOperator, op_sum


class NoKernelWithinBudget(RuntimeError):
    """No nonzero eliminant was found for any ``N`` up to the budget."""


class ReductionBudgetError(RuntimeError):
    """A row needed more factors of ``L`` than the budget ``N`` provides."""


class VIndex(NamedTuple):
    gamma: int
    alpha: int
    beta: int


class WIndex(NamedTuple):
    s: int
    t: int
    i: int
    j: int


def enumerate_V(N: int) -> List[VIndex]:
    """All ``(gamma, alpha, beta)`` with sum at most ``N``; graded, then lex descending."""
    if N < 1:
        raise ValueError("N must be positive")
    out = []
    for total in range(N + 1):
        for g in range(total, -1, -1):
            for a in range(total - g, -1, -1):
                out.append(VIndex(g, a, total - g - a))
    return out


def enumerate_W(sys: AnnihilatorPair, N: int) -> List[WIndex]:
    if N < 1:
        raise ValueError("N must be positive")
    out = []
    for total in range(N * (sys.d + 1) + 1):
        for s in range(total, -1, -1):
            for i in range(sys.m):
                for j in range(sys.n):
                    out.append(WIndex(s, total - s, i, j))
    return out


@dataclass
class ReductionMatrix:
    """Coefficients of each reduced row operator on the residue basis.

    Row ``r`` satisfies ``L^N x^g Dx^a Dy^b - row_ops[r] = U_r*A + V_r*B`` with
    ``(U_r, V_r) = row_cofactors[r]``.
    """

    N: int
    rows: List[VIndex]
    cols: List[WIndex]
    entries: List[List[Rational]]
    row_ops: List[WeylOperator] = field(repr=False)
    row_cofactors: List[Tuple[WeylOperator, WeylOperator]] = field(repr=False)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)

    def dump_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["V\\W"] + [f"W({c.s},{c.t},{c.i},{c.j})" for c in self.cols])
            for r, row in zip(self.rows, self.entries):
                w.writerow([f"V({r.gamma},{r.alpha},{r.beta})"] + [str(v) for v in row])


def build_matrix(sys: AnnihilatorPair, N: int, cache: Optional[Dict] = None) -> ReductionMatrix:
    """Reduce every element of the ``N``-family and read off coordinates."""
    rows = enumerate_V(N)
    cols = enumerate_W(sys, N)
    col_of = {c: k for k, c in enumerate(cols)}
    bound = N * (sys.d + 1)
    if cache is None:
        cache = {}
    steps = cache.setdefault("steps", StepCache(sys))
    full = cache.setdefault("full", {})
    lpow = cache.setdefault("lpow", {})

    def l_power(e: int) -> BiPoly:
        if e not in lpow:
            lpow[e] = sys.L ** e
        return lpow[e]

    entries, row_ops, row_cof = [], [], []
    for v in rows:
        red: ReducedForm = full.get((v.alpha, v.beta))
        if red is None:
            red = full[(v.alpha, v.beta)] = reduce_full(sys, v.alpha, v.beta, steps)
        if red.k > N:
            raise ReductionBudgetError(
                f"row {tuple(v)} needs L^{red.k} but the budget is N = {N}"
            )
        mult = l_power(N - red.k) * (X ** v.gamma)
        op = red.remainder.lmul_poly(mult)
        row = [0] * len(cols)
        for (i, j), c in op.items():
            for (s, t), q in c.items():
                if s + t > bound:
                    raise AssertionError(
                        f"coefficient x^{s} y^{t} of row {tuple(v)} exceeds degree bound {bound}"
                    )
                row[col_of[WIndex(s, t, i, j)]] = q
        entries.append(row)
        row_ops.append(op)
        row_cof.append((red.cofactor_a.lmul_poly(mult), red.cofactor_b.lmul_poly(mult)))
    return ReductionMatrix(N, rows, cols, entries, row_ops, row_cof)


def _as_rows(mat) -> List[List[Rational]]:
    if isinstance(mat, ReductionMatrix):
        return mat.entries
    return [list(r) for r in mat]


def nullspace(mat) -> List[List[Rational]]:
    """Basis of the left kernel ``{v : v M = 0}``, exactly.

    Rows are scaled to integers, then ``[M | I]`` is brought to echelon form
    with fraction-free (Bareiss) elimination, always pivoting on the entry of
    largest absolute value.  Rows whose ``M`` part vanishes carry the kernel
    vectors in their ``I`` part.  The basis is returned in echelon form with
    the latest pivot first; each vector is primitive (integer, content 1)
    with its first nonzero entry positive.
    """
    rows = _as_rows(mat)
    nr = len(rows)
    if nr == 0:
        return []
    nc = len(rows[0])
    scales = []
    work = []
    for r, row in enumerate(rows):
        den = lcm(*(Fraction(v).denominator for v in row)) if row else 1
        scales.append(den)
        ints = [int(Fraction(v) * den) for v in row]
        ident = [0] * nr
        ident[r] = 1
        work.append(ints + ident)

    width = nc + nr
    prev = 1
    p = 0
    for c in range(nc):
        if p >= nr:
            break
        best, best_abs = -1, 0
        for r in range(p, nr):
            a = abs(work[r][c])
            if a > best_abs:
                best, best_abs = r, a
        if best < 0:
            continue
        if best != p:
            work[p], work[best] = work[best], work[p]
        prow = work[p]
        piv = prow[c]
        for r in range(p + 1, nr):
            row = work[r]
            f = row[c]
            new = []
            for k in range(width):
                num = piv * row[k] - f * prow[k]
                qt, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("fraction-free elimination lost exactness")
                new.append(qt)
            work[r] = new
        prev = piv
        p += 1

    basis = []
    for r in range(p, nr):
        row = work[r]
        if any(row[:nc]):
            raise ArithmeticError("nonzero row below the rank")
        basis.append([row[nc + k] * scales[k] for k in range(nr)])
    return _echelon_latest_first(basis)


def _echelon_latest_first(vectors: List[List[int]]) -> List[List[int]]:
    """Row echelon form of a basis, returned with the latest pivot first.

    The vector with the latest pivot spans the intersection of the space
    with the coordinate tail starting at that pivot, so it does not depend
    on how the basis was found.
    """
    rows = [list(v) for v in vectors]
    out = []
    width = len(rows[0]) if rows else 0
    for c in range(width):
        live = [r for r in rows if r[c]]
        if not live:
            continue
        piv = min(live, key=lambda r: (abs(r[c]), r))
        rest = []
        for r in rows:
            if r is piv:
                continue
            f = r[c]
            if f:
                r = [piv[c] * a - f * b for a, b in zip(r, piv)]
            if any(r):
                rest.append(_primitive(r))
        out.append(_primitive(piv))
        rows = rest
    out.reverse()
    return out


def _primitive(vec: Sequence[Rational]) -> List[Rational]:
    fr = [Fraction(v) for v in vec]
    den = lcm(*(q.denominator for q in fr))
    ints = [int(q * den) for q in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return [0] * len(ints)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v)
    if first < 0:
        ints = [-v for v in ints]
    return ints


def counting_bound(sys: AnnihilatorPair) -> int:
    """Smallest ``N`` with ``C(N+3, 3) > m n C(N(d+1)+2, 2)``."""
    N = 1
    while comb(N + 3, 3) <= sys.m * sys.n * comb(N * (sys.d + 1) + 2, 2):
        N += 1
    return N


@dataclass
class EliminationResult:
    """``S`` has coefficients in ``Q[x]`` and ``L^N S = cofactor_a*A + cofactor_b*B``."""

    sys: AnnihilatorPair
    N: int
    S: WeylOperator
    kernel: Dict[VIndex, Rational]
    cofactor_a: WeylOperator
    cofactor_b: WeylOperator
    kernel_dim: int = 0
    matrix_shape: Tuple[int, int] = (0, 0)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "S": self.S.to_json(),
            "S_text": str(self.S),
            "kernel": [
                {"gamma": v.gamma, "alpha": v.alpha, "beta": v.beta, "coeff": rat_str(c)}
                for v, c in self.kernel.items()
            ],
            "cofactorA": self.cofactor_a.to_json(),
            "cofactorB": self.cofactor_b.to_json(),
            "kernel_dim": self.kernel_dim,
            "matrix_shape": list(self.matrix_shape),
            "system": self.sys.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "EliminationResult":
        kernel = {
            VIndex(int(e["gamma"]), int(e["alpha"]), int(e["beta"])): parse_rational(e["coeff"])
            for e in data["kernel"]
        }
        return cls(
            AnnihilatorPair.from_json(data["system"]),
            int(data["N"]),
            WeylOperator.from_json(data["S"]),
            kernel,
            WeylOperator.from_json(data["cofactorA"]),
            WeylOperator.from_json(data["cofactorB"]),
            int(data.get("kernel_dim", 0)),
            tuple(data.get("matrix_shape", (0, 0))),
        )


def _grlex_abg(v: VIndex) -> Tuple[int, int, int, int]:
    return (v.alpha + v.beta + v.gamma, v.alpha, v.beta, v.gamma)


def eliminant_from_kernel(mat: ReductionMatrix, vec: Sequence[Rational]):
    """Normalise a kernel vector and assemble ``S`` with its cofactors."""
    vec = _primitive(vec)
    support = [(v, c) for v, c in zip(mat.rows, vec) if c]
    lead_v, lead_c = max(support, key=lambda vc: _grlex_abg(vc[0]))
    if lead_c < 0:
        vec = [-c for c in vec]
        support = [(v, -c) for v, c in support]
    S = op_sum(WeylOperator.monomial(v.alpha, v.beta, BiPoly.monomial(v.gamma, 0, c)) for v, c in support)
    ua, vb = [], []
    for r, c in enumerate(vec):
        if not c:
            continue
        u, w = mat.row_cofactors[r]
        ua.append(u.lmul_poly(BiPoly.const(c)))
        vb.append(w.lmul_poly(BiPoly.const(c)))
    kernel = dict(support)
    return S, kernel, op_sum(ua), op_sum(vb)


def eliminate(
    sys: AnnihilatorPair,
    mode: str = "search",
    N_max: Optional[int] = None,
    matrix_hook=None,
) -> EliminationResult:
    """Find a nonzero ``y``-free ``S`` with ``L^N S`` in ``<A, B>``.

    ``search`` tries ``N = 1, 2, ...``; ``bound`` starts at
    :func:`counting_bound`, where a kernel is guaranteed.  ``N_max`` defaults to
    the counting bound.  ``matrix_hook`` is called with the final matrix.
    """
    cb = counting_bound(sys)
    if N_max is None:
        N_max = cb
    if N_max < 1:
        raise ValueError("N_max must be positive")
    if mode == "search":
        start = 1
    elif mode == "bound":
        start = cb
    else:
        raise ValueError(f"unknown mode {mode!r}")
    cache: Dict = {}
    for N in range(start, N_max + 1):
        mat = build_matrix(sys, N, cache)
        basis = nullspace(mat)
        if not basis:
            continue
        if matrix_hook is not None:
            matrix_hook(mat)
        S, kernel, ua, vb = eliminant_from_kernel(mat, basis[0])
        return EliminationResult(sys, N, S, kernel, ua, vb, len(basis), mat.shape)
    raise NoKernelWithinBudget(
        f"no eliminant for N in [{start}, {N_max}] (counting bound is {cb})"
    )
