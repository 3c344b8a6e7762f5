"""Normal-form arithmetic in the Weyl algebra ``Q[x, y]<Dx, Dy>``.

An operator is stored as ``{(i, j): c}`` meaning ``sum c(x, y) * Dx^i * Dy^j``
with every polynomial coefficient to the left of the derivations.  Products
are normalised with the Leibniz rule ``Dx^k f = sum C(k, l) f^(l) Dx^(k-l)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Tuple

from .exactarith import ONE, ZERO, BiPoly, _canon, _join_signed, _var_index
from .series import TruncatedSeries

Index = Tuple[int, int]


@lru_cache(maxsize=None)
def binomial_row(k: int) -> Tuple[int, ...]:
    """Row ``k`` of Pascal's triangle, built by the additive recurrence."""
    if k == 0:
        return (1,)
    prev = binomial_row(k - 1)
    return (1,) + tuple(prev[i] + prev[i + 1] for i in range(k - 1)) + (1,)


def binomial(k: int, l: int) -> int:
    if l < 0 or l > k:
        return 0
    return binomial_row(k)[l]


class WeylOperator:
    """Immutable element of the Weyl algebra in normal form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Index, BiPoly] | None = None):
        clean: Dict[Index, BiPoly] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative derivative order")
            if not isinstance(c, BiPoly):
                c = BiPoly.const(c)
            if c:
                key = (int(i), int(j))
                clean[key] = clean[key] + c if key in clean else c
                if not clean[key]:
                    del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Index, BiPoly]) -> "WeylOperator":
        op = cls.__new__(cls)
        op._terms = terms
        op._hash = None
        return op

    @classmethod
    def from_poly(cls, f) -> "WeylOperator":
        if not isinstance(f, BiPoly):
            f = BiPoly.const(f)
        return cls._raw({(0, 0): f} if f else {})

    @classmethod
    def monomial(cls, i: int, j: int, coeff=ONE) -> "WeylOperator":
        return cls({(i, j): coeff})

    # inspection

    @property
    def terms(self) -> Dict[Index, BiPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, i: int, j: int) -> BiPoly:
        return self._terms.get((i, j), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def order(self, var: str) -> int:
        """Order in ``D_var``; ``-1`` for the zero operator."""
        k = _var_index(var)
        return max((ij[k] for ij in self._terms), default=-1)

    def total_order(self) -> int:
        return max((i + j for i, j in self._terms), default=-1)

    def max_coeff_degree(self):
        return max((c.total_degree() for c in self._terms.values()), default=float("-inf"))

    def sorted_terms(self) -> list:
        """Terms with the highest total order first, ``Dx`` before ``Dy``."""
        return sorted(self._terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    # arithmetic

    def __add__(self, other) -> "WeylOperator":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            if k in out:
                s = out[k] + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = c
        return WeylOperator._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "WeylOperator":
        return WeylOperator._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "WeylOperator":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "WeylOperator":
        return (-self) + other

    def __mul__(self, other) -> "WeylOperator":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return op_mul(self, other)

    def __rmul__(self, other) -> "WeylOperator":
        # a scalar or polynomial on the left keeps normal form
        if isinstance(other, BiPoly) or isinstance(other, int):
            return self.lmul_poly(other if isinstance(other, BiPoly) else BiPoly.const(other))
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return op_mul(other, self)

    def lmul_poly(self, f: BiPoly) -> "WeylOperator":
        """``f * self``; cheap because functions multiply coefficients directly."""
        if not f:
            return WeylOperator._raw({})
        out = {}
        for k, c in self._terms.items():
            v = f * c
            if v:
                out[k] = v
        return WeylOperator._raw(out)

    def shift(self, i: int, j: int) -> "WeylOperator":
        """``self * Dx^i * Dy^j`` (right multiplication by a pure derivation)."""
        return WeylOperator._raw({(a + i, b + j): c for (a, b), c in self._terms.items()})

    def __pow__(self, k: int) -> "WeylOperator":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = WeylOperator.from_poly(ONE)
        for _ in range(k):
            result = op_mul(result, self)
        return result

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
        for (i, j), c in self.sorted_terms():
            mono = _dmono_str(i, j)
            if not mono:
                parts.append(str(c))
            elif len(c) == 1:
                (e, q), = c.items()
                if e == (0, 0):
                    coeff_str = str(q)
                    if q == 1:
                        parts.append(mono)
                        continue
                    if q == -1:
                        parts.append("-" + mono)
                        continue
                    parts.append(f"{coeff_str}*{mono}")
                else:
                    parts.append(f"{c}*{mono}")
            else:
                parts.append(f"({c})*{mono}")
        return _join_signed(parts)

    def __repr__(self) -> str:
        return f"WeylOperator({str(self)!r})"

    def to_json(self) -> list:
        return [{"i": i, "j": j, "coeff": c.to_json()} for (i, j), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "WeylOperator":
        return cls({(int(t["i"]), int(t["j"])): BiPoly.from_json(t["coeff"]) for t in data})


def _dmono_str(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("Dx" if i == 1 else f"Dx^{i}")
    if j:
        parts.append("Dy" if j == 1 else f"Dy^{j}")
    return "*".join(parts)


def _coerce(v):
    if isinstance(v, WeylOperator):
        return v
    if isinstance(v, BiPoly):
        return WeylOperator.from_poly(v)
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return WeylOperator.from_poly(BiPoly.const(v))
    return NotImplemented


ONE_OP = WeylOperator.from_poly(ONE)
DX = WeylOperator.monomial(1, 0)
DY = WeylOperator.monomial(0, 1)


def dmono(i: int, j: int) -> WeylOperator:
    return WeylOperator.monomial(i, j)


class _DerivCache:
    """Mixed partial derivatives of one polynomial, computed on demand."""

    __slots__ = ("poly", "_cache", "dx", "dy")

    def __init__(self, poly: BiPoly):
        self.poly = poly
        self._cache = {(0, 0): poly}
        self.dx = poly.degree("x") if poly else -1
        self.dy = poly.degree("y") if poly else -1

    def get(self, a: int, b: int) -> BiPoly:
        got = self._cache.get((a, b))
        if got is None:
            if b > 0:
                got = self.get(a, b - 1).diff("y")
            else:
                got = self.get(a - 1, 0).diff("x")
            self._cache[(a, b)] = got
        return got


def _accumulate(out: Dict[Index, Dict], key: Index, left: BiPoly, right: BiPoly, weight: int) -> None:
    target = out.get(key)
    if target is None:
        target = out[key] = {}
    get = target.get
    for (s1, t1), c1 in left.items():
        w1 = c1 * weight
        for (s2, t2), c2 in right.items():
            e = (s1 + s2, t1 + t2)
            target[e] = get(e, 0) + w1 * c2


def _finish(out: Dict[Index, Dict]) -> WeylOperator:
    terms = {}
    for key, raw in out.items():
        clean = {e: _canon(c) for e, c in raw.items() if c}
        if clean:
            terms[key] = BiPoly._raw(clean)
    return WeylOperator._raw(terms)


def op_mul(p: WeylOperator, q: WeylOperator) -> WeylOperator:
    """Exact product ``p * q`` in normal form."""
    if not p or not q:
        return WeylOperator._raw({})
    out: Dict[Index, Dict] = {}
    caches = [((k, l), _DerivCache(e)) for (k, l), e in q.items()]
    for (i, j), c in p.items():
        row_i = binomial_row(i)
        row_j = binomial_row(j)
        for (k, l), cache in caches:
            # Dx^i Dy^j e = sum C(i,a) C(j,b) e_(a,b) Dx^(i-a) Dy^(j-b)
            for a in range(min(i, cache.dx) + 1):
                for b in range(min(j, cache.dy) + 1):
                    d = cache.get(a, b)
                    if not d:
                        continue
                    _accumulate(out, (i - a + k, j - b + l), c, d, row_i[a] * row_j[b])
    return _finish(out)


def op_add(p: WeylOperator, q: WeylOperator) -> WeylOperator:
    return p + q


def op_sum(ops: Iterable[WeylOperator]) -> WeylOperator:
    out: Dict[Index, Dict] = {}
    for op in ops:
        for key, c in op.items():
            target = out.setdefault(key, {})
            for e, v in c.items():
                target[e] = target.get(e, 0) + v
    return _finish(out)


def _dpow(var: str, k: int) -> Index:
    return (k, 0) if _var_index(var) == 0 else (0, k)


def leibniz_right(f: BiPoly, k: int, var: str) -> WeylOperator:
    """Normal form of ``D_var^k * f`` from the closed-form Leibniz sum."""
    row = binomial_row(k)
    terms = {}
    d = f
    for l in range(k + 1):
        if not d:
            break
        terms[_dpow(var, k - l)] = d.scale(row[l])
        d = d.diff(var)
    return WeylOperator._raw(terms)


def leibniz_left(f: BiPoly, k: int, var: str) -> WeylOperator:
    """Normal form of ``sum (-1)^l C(k, l) D_var^(k-l) * f^(l)``.

    The sum equals ``f * D_var^k``; each summand ``D^(k-l) f^(l)`` is brought
    to normal form with :func:`leibniz_right`.
    """
    row = binomial_row(k)
    parts = []
    d = f
    for l in range(k + 1):
        if not d:
            break
        sign = -1 if l % 2 else 1
        parts.append(leibniz_right(d.scale(sign * row[l]), k - l, var))
        d = d.diff(var)
    return op_sum(parts)


def adjoint(p: WeylOperator) -> WeylOperator:
    """Formal adjoint: fixes ``x, y``, negates ``Dx, Dy``, reverses products.

    ``c * Dx^i * Dy^j`` maps to ``(-1)^(i+j) Dx^i Dy^j * c``.
    """
    out: Dict[Index, Dict] = {}
    for (i, j), c in p.items():
        sign = -1 if (i + j) % 2 else 1
        cache = _DerivCache(c)
        row_i = binomial_row(i)
        row_j = binomial_row(j)
        for a in range(min(i, cache.dx) + 1):
            for b in range(min(j, cache.dy) + 1):
                d = cache.get(a, b)
                if d:
                    _accumulate(out, (i - a, j - b), ONE, d, sign * row_i[a] * row_j[b])
    return _finish(out)


def commute_past(f: BiPoly, k: int, var: str) -> Tuple[WeylOperator, WeylOperator]:
    """Split ``D_var^k * f`` as ``f * D_var^k + P``.

    ``P`` has order below ``k`` in ``D_var`` and coefficients of total degree
    below that of ``f``.  Returns ``(f * D_var^k, P)``.
    """
    main = WeylOperator._raw({_dpow(var, k): f} if f else {})
    return main, leibniz_right(f, k, var) - main


def op_apply(p: WeylOperator, s: TruncatedSeries) -> TruncatedSeries:
    """Apply ``sum c_ij d^i/dx^i d^j/dy^j`` to a truncated series.

    The result is reliable to order ``s.order - r`` with ``r`` the total order
    of ``p``; multiplying by a polynomial coefficient never uses unknown terms.
    """
    r = max(p.total_order(), 0)
    out_order = s.order - r
    if out_order < 1:
        raise ValueError(
            f"series of order {s.order} too short for an operator of total order {r}"
        )
    acc = TruncatedSeries(out_order)
    for (i, j), c in p.items():
        acc = acc + s.derivative(i, j).truncate(out_order).mul_poly(c)
    return acc


def is_dx_only(p: WeylOperator) -> bool:
    return all(j == 0 for _, j in p._terms)


def is_dy_only(p: WeylOperator) -> bool:
    return all(i == 0 for i, _ in p._terms)


def leading(p: WeylOperator, var: str) -> Tuple[int, BiPoly]:
    """(order, leading coefficient) of a single-variable operator."""
    k = p.order(var)
    return k, p.coeff(*_dpow(var, k))
