import random

import pytest

from helpers import identity_by_action, random_system
from weylelim.exactarith import ONE, X, Y
from weylelim.reduce import (
    AnnihilatorPair,
    InvalidSystemError,
    claim_gap_demo,
    reduction_power_bound,
    make_system,
    reduce_full,
    reduce_step,
)
from weylelim.verify import check_certificate
from weylelim.weyl import DX, DY, WeylOperator

L = ONE - X - Y


def op(terms):
    return WeylOperator(terms)


def test_make_system_geometric(geometric):
    assert (geometric.L, geometric.m, geometric.n, geometric.d) == (L, 1, 1, 1)


def test_make_system_constant_leading(exp_system):
    assert (exp_system.L, exp_system.m, exp_system.n, exp_system.d) == (ONE, 1, 1, 0)


def test_make_system_normalises_leading_coefficients():
    sys_ = make_system(op({(1, 0): X, (0, 0): -1}), op({(0, 1): Y, (0, 0): -1}))
    assert sys_.A == op({(1, 0): X * Y, (0, 0): -Y})
    assert sys_.B == op({(0, 1): X * Y, (0, 0): -X})
    assert sys_.L == X * Y and sys_.d == 2


def test_make_system_is_idempotent(geometric):
    again = make_system(geometric.A, geometric.B)
    assert again == geometric


@pytest.mark.parametrize(
    "A, B",
    [
        (WeylOperator(), op({(0, 1): 1})),
        (op({(0, 0): X}), op({(0, 1): 1})),
        (op({(1, 0): 1, (0, 1): 1}), op({(0, 1): 1})),
        (op({(1, 0): 1}), op({(1, 0): 1})),
    ],
)
def test_make_system_rejects(A, B):
    with pytest.raises(InvalidSystemError):
        make_system(A, B)


def test_pair_validates_fields(geometric):
    with pytest.raises(InvalidSystemError):
        AnnihilatorPair(geometric.A, geometric.B, geometric.L, 1, 1, 0)
    with pytest.raises(InvalidSystemError):
        AnnihilatorPair(geometric.A, geometric.B, X, 1, 1, 1)


def test_step_dy_only(geometric):
    r = reduce_step(geometric, 0, 1)
    assert r.remainder == op({(0, 0): 1})
    assert r.cofactor_a.is_zero() and r.cofactor_b == op({(0, 0): 1})
    assert r.k == 1


def test_step_base_case(geometric):
    r = reduce_step(geometric, 0, 0)
    assert r.k == 0 and r.remainder == op({(0, 0): L})
    assert r.cofactor_a.is_zero() and r.cofactor_b.is_zero()


def test_step_mixed_matches_hand_computation(geometric):
    # Dx*B = L*Dx*Dy - Dx - Dy, hence L*Dx*Dy = Dx*B + Dx + Dy
    r = reduce_step(geometric, 1, 1)
    assert r.remainder == DX + DY
    assert r.cofactor_a.is_zero() and r.cofactor_b == DX
    assert identity_by_action(op({(1, 1): L}), [[r.remainder], [DX, geometric.B]], 5)


def test_full_mixed(geometric):
    # L*(Dx + Dy) = (A + 1) + (B + 1)
    r = reduce_full(geometric, 1, 1)
    assert r.k == 2
    assert r.remainder == op({(0, 0): 2})
    assert r.cofactor_a == op({(0, 0): 1})
    assert r.cofactor_b == op({(1, 0): L, (0, 0): 1})
    lhs = op({(1, 1): L * L})
    assert identity_by_action(lhs, [[r.remainder], [geometric.A], [r.cofactor_b, geometric.B]], 5)


def test_full_base_and_first_order(geometric):
    r = reduce_full(geometric, 0, 0)
    assert (r.k, r.l_power) == (0, 0) and r.remainder == op({(0, 0): 1})
    r = reduce_full(geometric, 1, 0)
    assert r.k == 1 and r.remainder == op({(0, 0): 1}) and r.cofactor_a == op({(0, 0): 1})


def test_full_exp_system(exp_system):
    # L = 1 so Dx^a Dy^b reduces to 1 with a single pass per order
    for a in range(4):
        for b in range(4):
            r = reduce_full(exp_system, a, b)
            assert r.remainder == op({(0, 0): 1})
            assert check_certificate(exp_system, r).passed


def test_gap_geometric(geometric):
    rep = claim_gap_demo(geometric)
    # L*Dy*Dx = Dy*L*Dx - L_y*Dx, so the single-L remainder keeps -L_y*Dx = +Dx
    assert rep.obstruction
    assert rep.obstruction_terms == DX
    assert rep.single_remainder == DX + DY
    assert rep.squared_reduced
    assert all(i < 1 for (i, _) in rep.squared_remainder.terms)
    assert check_certificate(None, rep).passed


def test_gap_no_obstruction_when_L_free_of_y():
    rep = claim_gap_demo(op({(1, 0): ONE + X, (0, 0): -1}))
    assert not rep.obstruction and rep.squared_reduced
    assert check_certificate(None, rep).passed


def test_gap_one_plus_xy():
    Lxy = ONE + X * Y
    A = op({(1, 0): Lxy, (0, 0): -1})
    rep = claim_gap_demo(A)
    assert rep.obstruction and rep.obstruction_terms == op({(1, 0): -X})
    assert rep.squared_reduced
    assert identity_by_action(op({(1, 1): Lxy}), [[rep.single_remainder], [rep.single_cofactor, A]], 5)
    assert identity_by_action(
        op({(1, 1): Lxy * Lxy}), [[rep.squared_remainder], [rep.squared_cofactor, A]], 5
    )


def test_gap_higher_order():
    Lc = ONE + X * Y + Y * Y
    A = op({(2, 0): Lc, (1, 0): X, (0, 0): 3})
    rep = claim_gap_demo(A)
    assert rep.m == 2 and rep.obstruction and rep.squared_reduced
    assert check_certificate(None, rep).passed


def test_gap_rejects_mixed_operator():
    with pytest.raises(InvalidSystemError):
        claim_gap_demo(DX + DY)


def test_random_systems_small():
    rng = random.Random(7)
    for _ in range(8):
        sys_ = random_system(rng, 2, 2)
        for a in range(4):
            for b in range(4):
                st = reduce_step(sys_, a, b)
                assert check_certificate(sys_, st).passed
                full = reduce_full(sys_, a, b)
                assert check_certificate(sys_, full).passed
                assert full.k <= reduction_power_bound(sys_, a, b)


def test_certificate_independent_of_op_mul():
    rng = random.Random(3)
    sys_ = random_system(rng, 2, 1)
    r = reduce_full(sys_, 2, 2)
    lhs = WeylOperator.monomial(2, 2, sys_.L ** r.k)
    assert identity_by_action(
        lhs, [[r.remainder], [r.cofactor_a, sys_.A], [r.cofactor_b, sys_.B]], 6
    )


def test_reduced_form_json_round_trip(geometric):
    from weylelim.reduce import ReducedForm

    r = reduce_full(geometric, 2, 1)
    assert ReducedForm.from_json(r.to_json()) == r
