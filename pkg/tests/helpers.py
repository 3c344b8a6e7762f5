"""Random generators and brute-force oracles shared by the test modules."""

from __future__ import annotations

import random

from weylelim.exactarith import BiPoly
from weylelim.reduce import AnnihilatorPair, make_system
from weylelim.weyl import WeylOperator


def random_poly(rng: random.Random, deg: int, lo: int = -9, hi: int = 9, density: float = 0.6) -> BiPoly:
    terms = {}
    for a in range(deg + 1):
        for b in range(deg + 1 - a):
            if rng.random() < density:
                terms[(a, b)] = rng.randint(lo, hi)
    return BiPoly(terms)


def random_nonzero_poly(rng: random.Random, deg: int, **kw) -> BiPoly:
    while True:
        p = random_poly(rng, deg, **kw)
        if p:
            return p


def random_operator(rng: random.Random, max_order: int, deg: int, density: float = 0.5) -> WeylOperator:
    terms = {}
    for i in range(max_order + 1):
        for j in range(max_order + 1 - i):
            if rng.random() < density:
                terms[(i, j)] = random_poly(rng, deg, density=0.5)
    return WeylOperator(terms)


def random_system(rng: random.Random, max_mn: int = 3, max_d: int = 3, density: float = 0.5) -> AnnihilatorPair:
    m = rng.randint(1, max_mn)
    n = rng.randint(1, max_mn)
    d = rng.randint(0, max_d)
    L = random_nonzero_poly(rng, d, density=max(density, 0.3))
    A = {(m, 0): L}
    B = {(0, n): L}
    for i in range(m):
        A[(i, 0)] = random_poly(rng, d, density=density)
    for j in range(n):
        B[(0, j)] = random_poly(rng, d, density=density)
    return make_system(WeylOperator(A), WeylOperator(B))


def apply_to_poly(p: WeylOperator, f: BiPoly) -> BiPoly:
    """Action of ``sum c_ij d^i/dx^i d^j/dy^j`` on a polynomial, term by term."""
    out = BiPoly()
    for (i, j), c in p.items():
        out = out + c * f.diff("x", i).diff("y", j)
    return out


def action_equal(p: WeylOperator, q: WeylOperator, deg: int) -> bool:
    """Compare two operators by their action on every monomial up to ``deg``.

    The polynomial action of the Weyl algebra is faithful in characteristic
    zero; monomials of degree above the total order suffice.
    """
    for a in range(deg + 1):
        for b in range(deg + 1 - a):
            f = BiPoly.monomial(a, b)
            if apply_to_poly(p, f) != apply_to_poly(q, f):
                return False
    return True


def apply_chain(ops, f: BiPoly) -> BiPoly:
    """Apply ``ops[0] * ops[1] * ... `` to ``f`` by successive actions."""
    for p in reversed(ops):
        f = apply_to_poly(p, f)
    return f


def identity_by_action(lhs: WeylOperator, products, deg: int) -> bool:
    """Check ``lhs == sum of products`` (each a list of factors) by action on monomials."""
    for a in range(deg + 1):
        for b in range(deg + 1 - a):
            f = BiPoly.monomial(a, b)
            rhs = BiPoly()
            for chain in products:
                rhs = rhs + apply_chain(chain, f)
            if apply_to_poly(lhs, f) != rhs:
                return False
    return True


def rank_over_q(rows) -> int:
    """Plain Gaussian elimination over ``Fraction``; independent of the library."""
    from fractions import Fraction

    m = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def left_times(vec, rows):
    ncols = len(rows[0])
    return [sum(v * r[c] for v, r in zip(vec, rows)) for c in range(ncols)]


ACCEPTANCE_LOG: list = []


class criterion:
    """Context manager recording one acceptance criterion as a pass/fail line."""

    def __init__(self, number: int, title: str, limit_s: float | None = None):
        self.number, self.title, self.limit_s = number, title, limit_s

    def __enter__(self):
        import time

        self._t0 = time.perf_counter()
        self.detail = ""
        return self

    def __exit__(self, exc_type, exc, tb):
        import time

        elapsed = time.perf_counter() - self._t0
        ok = exc_type is None
        if ok and self.limit_s is not None and elapsed >= self.limit_s:
            ok = False
            self.detail += f" exceeded {self.limit_s:g}s"
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {self.number:2d}: {self.title} ({elapsed:.2f}s){self.detail}"
        ACCEPTANCE_LOG.append(line)
        print(line)
        if exc_type is None and not ok:
            raise AssertionError(line)
        return False
