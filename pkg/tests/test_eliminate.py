import csv
import random
from fractions import Fraction
from math import comb

import pytest

from helpers import left_times, random_system, rank_over_q
from weylelim.eliminate import (
    NoKernelWithinBudget,
    VIndex,
    build_matrix,
    counting_bound,
    eliminate,
    enumerate_V,
    enumerate_W,
    nullspace,
)
from weylelim.exactarith import ONE, X, Y
from weylelim.reduce import make_system
from weylelim.verify import check_certificate
from weylelim.weyl import DX, DY, WeylOperator


def brute_counting_bound(m, n, d):
    N = 1
    while not comb(N + 3, 3) > m * n * comb(N * (d + 1) + 2, 2):
        N += 1
    return N


def test_enumerate_V():
    assert enumerate_V(1) == [VIndex(0, 0, 0), VIndex(1, 0, 0), VIndex(0, 1, 0), VIndex(0, 0, 1)]
    assert len(enumerate_V(2)) == 10
    assert len(enumerate_V(12)) == 455
    for N in range(1, 9):
        vs = enumerate_V(N)
        assert len(vs) == len(set(vs)) == comb(N + 3, 3)
        assert all(sum(v) <= N for v in vs)
    with pytest.raises(ValueError):
        enumerate_V(0)


def test_enumerate_W(geometric, exp_system):
    ws = enumerate_W(geometric, 1)
    assert [(w.s, w.t) for w in ws] == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert all(w.i == 0 and w.j == 0 for w in ws)
    assert len(enumerate_W(exp_system, 3)) == 10


def test_enumerate_W_closed_form():
    rng = random.Random(11)
    for _ in range(6):
        sys_ = random_system(rng, 3, 3)
        for N in range(1, 5):
            ws = enumerate_W(sys_, N)
            assert len(ws) == len(set(ws)) == sys_.m * sys_.n * comb(N * (sys_.d + 1) + 2, 2)


def test_build_matrix_geometric(geometric):
    mat = build_matrix(geometric, 1)
    assert mat.shape == (4, 6)
    assert mat.entries[0] == [1, -1, -1, 0, 0, 0]
    assert mat.entries[1] == [0, 1, 0, -1, -1, 0]
    assert mat.entries[2] == mat.entries[3] == [1, 0, 0, 0, 0, 0]


def test_build_matrix_rows_carry_certificates(geometric):
    from weylelim.weyl import op_mul

    mat = build_matrix(geometric, 3)
    LN = geometric.L ** 3
    for v, row_op, (u, w) in zip(mat.rows, mat.row_ops, mat.row_cofactors):
        lhs = WeylOperator.monomial(v.alpha, v.beta, LN * X ** v.gamma)
        assert lhs - row_op == op_mul(u, geometric.A) + op_mul(w, geometric.B)


def test_nullspace_examples(geometric):
    assert nullspace(build_matrix(geometric, 1)) == [[0, 0, 1, -1]]
    assert nullspace([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []
    assert nullspace([[Fraction(1, 2), 3, -7], [Fraction(1, 2), 3, -7]]) == [[1, -1]]
    assert nullspace([]) == []


def test_nullspace_random_against_rank():
    rng = random.Random(2024)
    for _ in range(40):
        r, c = rng.randint(1, 9), rng.randint(1, 9)
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) if rng.random() < 0.6 else 0
                 for _ in range(c)] for _ in range(r)]
        if rng.random() < 0.5 and r > 1:
            rows[-1] = [a + 2 * b for a, b in zip(rows[0], rows[1 % r])]
        basis = nullspace(rows)
        assert len(basis) == r - rank_over_q(rows)
        for v in basis:
            assert any(v) and all(x == 0 for x in left_times(v, rows))
        if basis:
            assert rank_over_q(basis) == len(basis)


@pytest.mark.parametrize("m, n, d", [(1, 1, 1), (1, 1, 0), (2, 1, 3), (3, 3, 3)])
def test_counting_bound_brute_force(m, n, d):
    rng = random.Random(m * 100 + n * 10 + d)
    while True:
        sys_ = random_system(rng, 3, 3)
        if (sys_.m, sys_.n, sys_.d) == (m, n, d):
            break
    N = counting_bound(sys_)
    assert N == brute_counting_bound(m, n, d)
    assert comb(N + 3, 3) > m * n * comb(N * (d + 1) + 2, 2)
    if N > 1:
        assert not comb(N + 2, 3) > m * n * comb((N - 1) * (d + 1) + 2, 2)


def test_counting_bound_values(geometric, exp_system):
    assert counting_bound(geometric) == 8
    # C(4,3) = 4 > C(3,2) = 3 already at N = 1
    assert counting_bound(exp_system) == 1


def test_eliminate_geometric(geometric):
    res = eliminate(geometric)
    assert res.N == 1 and res.S == DX - DY
    assert res.cofactor_a == WeylOperator.from_poly(ONE)
    assert res.cofactor_b == WeylOperator.from_poly(-ONE)
    assert res.kernel == {VIndex(0, 1, 0): 1, VIndex(0, 0, 1): -1}
    assert check_certificate(geometric, res).passed


def test_eliminate_exp(exp_system):
    res = eliminate(exp_system)
    assert res.N == 1 and res.S == DX - DY
    assert check_certificate(exp_system, res).passed


def test_eliminate_unequal_leading():
    sys_ = make_system(WeylOperator({(1, 0): X, (0, 0): -1}), WeylOperator({(0, 1): Y, (0, 0): -1}))
    res = eliminate(sys_)
    assert check_certificate(sys_, res).passed
    assert all(b == 0 for c in res.S.terms.values() for (_, b) in c)


def test_eliminate_budget():
    sys_ = make_system(
        WeylOperator({(2, 0): ONE + X * Y, (0, 0): Y}), WeylOperator({(0, 2): ONE + X * Y, (0, 0): X})
    )
    with pytest.raises(NoKernelWithinBudget):
        eliminate(sys_, "search", 1)


def test_eliminate_bound_mode_kernel(geometric):
    res = eliminate(geometric, "bound")
    assert res.N == 8 and res.S and res.matrix_shape == (165, 153)
    assert check_certificate(geometric, res).passed


def test_eliminate_random_systems():
    rng = random.Random(99)
    for _ in range(4):
        sys_ = random_system(rng, 2, 1)
        res = eliminate(sys_)
        rep = check_certificate(sys_, res)
        assert rep.passed, rep.contracts


def test_matrix_dump(tmp_path, geometric):
    mat = build_matrix(geometric, 1)
    path = tmp_path / "m.csv"
    mat.dump_csv(path)
    with open(path, newline="") as fh:
        table = list(csv.reader(fh))
    assert table[0][:3] == ["V\\W", "W(0,0,0,0)", "W(1,0,0,0)"]
    assert table[1] == ["V(0,0,0)", "1", "-1", "-1", "0", "0", "0"]
    assert len(table) == 5


def test_elimination_json_round_trip(geometric):
    from weylelim.eliminate import EliminationResult

    res = eliminate(geometric)
    back = EliminationResult.from_json(res.to_json())
    assert back.S == res.S and back.cofactor_a == res.cofactor_a and back.kernel == res.kernel
    assert back.sys == geometric
