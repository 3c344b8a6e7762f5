"""Exact rationals and sparse bivariate polynomials in ``x`` and ``y``.

Coefficients are Python ``int`` whenever the value is integral and
:class:`fractions.Fraction` otherwise.  Both compare and hash consistently,
and keeping integers as ``int`` avoids a gcd on every operation in the hot
loops of operator multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Rational = Union[int, Fraction]
Exponent = Tuple[int, int]

#: total degree reported for the zero polynomial
NEG_INF = float("-inf")

VARS = ("x", "y")


def rat(value, den: int = 1) -> Rational:
    """Return ``value/den`` as an exact rational in canonical form."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int) and den == 1:
        return value
    if isinstance(value, str):
        q = parse_rational(value)
    elif isinstance(value, (int, Fraction)) or isinstance(value, _RationalABC):
        q = Fraction(value)
    else:
        raise TypeError(f"not an exact rational: {value!r}")
    if den != 1:
        q = q / den
    if q.denominator == 1:
        return int(q.numerator)
    return q


def parse_rational(text: str) -> Rational:
    """Parse ``"p"`` or ``"p/q"`` (optional sign) into a canonical rational."""
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            q = Fraction(int(num), int(den))
        else:
            q = Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational literal {text!r}") from exc
    return q.numerator if q.denominator == 1 else q


def rat_str(q: Rational) -> str:
    """Canonical ``"num/den"`` text used by the JSON formats."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _var_index(var: str) -> int:
    try:
        return VARS.index(var)
    except ValueError:
        raise ValueError(f"unknown variable {var!r}; expected 'x' or 'y'") from None


def grlex_key(exp: Exponent) -> Tuple[int, int]:
    """Sort key: ascending total degree, then higher power of x first."""
    return (exp[0] + exp[1], -exp[0])


class BiPoly:
    """Immutable sparse polynomial in ``x, y`` over the rationals.

    The term map never stores a zero coefficient, so structural equality of
    the maps is equality of polynomials.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Rational] | None = None):
        clean: Dict[Exponent, Rational] = {}
        if terms:
            for (a, b), c in terms.items():
                if a < 0 or b < 0:
                    raise ValueError("negative exponent")
                c = rat(c)
                if c:
                    clean[(int(a), int(b))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Rational]) -> "BiPoly":
        # trusted constructor: caller guarantees canonical content
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> "BiPoly":
        return cls({(a, b): c})

    @classmethod
    def var(cls, name: str) -> "BiPoly":
        return cls.monomial(1, 0) if _var_index(name) == 0 else cls.monomial(0, 1)

    # inspection

    @property
    def terms(self) -> Dict[Exponent, Rational]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[Exponent, Rational]]:
        return self._terms.items()

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self._terms)

    def coeff(self, a: int, b: int) -> Rational:
        return self._terms.get((a, b), 0)

    def total_degree(self):
        if not self._terms:
            return NEG_INF
        return max(a + b for a, b in self._terms)

    def degree(self, var: str):
        if not self._terms:
            return NEG_INF
        k = _var_index(var)
        return max(e[k] for e in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Exponent]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic

    def __add__(self, other) -> "BiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _canon(v)
            else:
                out.pop(e, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "BiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return (-self) + other

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return BiPoly._raw({})
        out: Dict[Exponent, Rational] = {}
        get = out.get
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                e = (a1 + a2, b1 + b2)
                out[e] = get(e, 0) + c1 * c2
        return BiPoly._raw({e: _canon(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "BiPoly":
        c = rat(c)
        if not c:
            return BiPoly._raw({})
        return BiPoly._raw({e: _canon(v * c) for e, v in self._terms.items()})

    def __pow__(self, k: int) -> "BiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = BiPoly._raw({(0, 0): 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def diff(self, var: str, times: int = 1) -> "BiPoly":
        """Exact partial derivative ``d^times / d var^times``."""
        k = _var_index(var)
        if times == 0:
            return self
        out: Dict[Exponent, Rational] = {}
        for e, c in self._terms.items():
            p = e[k]
            if p < times:
                continue
            f = 1
            for r in range(p - times + 1, p + 1):
                f *= r
            ne = (p - times, e[1]) if k == 0 else (e[0], p - times)
            out[ne] = _canon(c * f)
        return BiPoly._raw(out)

    def content(self) -> Fraction:
        """Positive rational g such that self/g has coprime integer coefficients."""
        if not self._terms:
            return Fraction(1)
        nums = [Fraction(c).numerator for c in self._terms.values()]
        dens = [Fraction(c).denominator for c in self._terms.values()]
        g = 0
        for v in nums:
            g = gcd(g, v)
        return Fraction(g, lcm(*dens))

    def subs_y0(self) -> "BiPoly":
        return BiPoly._raw({e: c for e, c in self._terms.items() if e[1] == 0})

    # comparison

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # text

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            parts.append(_term_str(c, _mono_str(a, b)))
        return _join_signed(parts)

    def __repr__(self) -> str:
        return f"BiPoly({str(self)!r})"

    def to_json(self) -> list:
        return [[a, b, rat_str(c)] for (a, b), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "BiPoly":
        return cls({(int(a), int(b)): parse_rational(str(c)) for a, b, c in data})


def _canon(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _coerce(v):
    if isinstance(v, BiPoly):
        return v
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return BiPoly.const(v)
    return NotImplemented


def _mono_str(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts)


def _term_str(c: Rational, mono: str) -> str:
    """Render ``c * mono``; ``mono`` may be empty. Result may start with '-'."""
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _join_signed(parts) -> str:
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


ZERO = BiPoly()
ONE = BiPoly.const(1)
X = BiPoly.var("x")
Y = BiPoly.var("y")


def poly_arith(p: BiPoly, q: BiPoly, kind: str) -> BiPoly:
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise ValueError(f"unknown kind {kind!r}")


def poly_diff(p: BiPoly, var: str) -> BiPoly:
    return p.diff(var)


def poly_total_degree(p: BiPoly):
    """Total degree, or ``NEG_INF`` for the zero polynomial."""
    return p.total_degree()
