"""Truncated bivariate power series with exact rational coefficients."""

from __future__ import annotations

from typing import Callable, Dict, Mapping, Tuple

from .exactarith import BiPoly, Rational, _canon, parse_rational, rat, rat_str


class TruncatedSeries:
    """``sum c[s, t] x^s y^t`` known for all ``s + t < order``.

    Absent pairs below the truncation are zero.  Nothing is known about
    coefficients at or beyond ``order``.
    """

    __slots__ = ("order", "_coeffs")

    def __init__(self, order: int, coeffs: Mapping[Tuple[int, int], Rational] | None = None):
        if order < 1:
            raise ValueError("truncation order must be positive")
        self.order = order
        clean = {}
        for (s, t), c in (coeffs or {}).items():
            if s < 0 or t < 0:
                raise ValueError("negative exponent")
            if s + t >= order:
                continue
            c = rat(c)
            if c:
                clean[(s, t)] = c
        self._coeffs: Dict[Tuple[int, int], Rational] = clean

    @classmethod
    def from_function(cls, order: int, coeff: Callable[[int, int], Rational]) -> "TruncatedSeries":
        return cls(order, {(s, n - s): coeff(s, n - s) for n in range(order) for s in range(n + 1)})

    @classmethod
    def from_poly(cls, p: BiPoly, order: int) -> "TruncatedSeries":
        return cls(order, p.terms)

    def __getitem__(self, key: Tuple[int, int]) -> Rational:
        s, t = key
        if s + t >= self.order:
            raise IndexError(f"coefficient ({s}, {t}) beyond truncation order {self.order}")
        return self._coeffs.get((s, t), 0)

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(order, self._coeffs)

    def derivative(self, i: int, j: int) -> "TruncatedSeries":
        """``d^i/dx^i d^j/dy^j``; the result is known to order ``order - i - j``."""
        new_order = self.order - i - j
        if new_order < 1:
            raise ValueError("series too short for this derivative")
        out = {}
        for (s, t), c in self._coeffs.items():
            if s < i or t < j:
                continue
            f = 1
            for r in range(s - i + 1, s + 1):
                f *= r
            for r in range(t - j + 1, t + 1):
                f *= r
            out[(s - i, t - j)] = c * f
        return TruncatedSeries(new_order, out)

    def mul_poly(self, p: BiPoly) -> "TruncatedSeries":
        out: Dict[Tuple[int, int], Rational] = {}
        T = self.order
        for (a, b), pc in p.items():
            for (s, t), c in self._coeffs.items():
                if a + b + s + t < T:
                    e = (a + s, b + t)
                    out[e] = out.get(e, 0) + pc * c
        return TruncatedSeries(T, {e: _canon(c) for e, c in out.items()})

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        T = min(self.order, other.order)
        out = {e: c for e, c in self._coeffs.items() if sum(e) < T}
        for e, c in other._coeffs.items():
            if sum(e) < T:
                out[e] = out.get(e, 0) + c
        return TruncatedSeries(T, out)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(self.order, {e: v * c for e, v in self._coeffs.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self._coeffs == other._coeffs

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, terms={len(self._coeffs)})"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [[s, t, rat_str(c)] for (s, t), c in sorted(self._coeffs.items())],
        }

    @classmethod
    def from_json(cls, data) -> "TruncatedSeries":
        return cls(int(data["order"]), {(int(s), int(t)): parse_rational(c) for s, t, c in data["coeffs"]})
