import random

import pytest

from chevalley.group import x_elem
from chevalley.rings import RingError, make_ring
from chevalley.torusext import build_lift, coweight_exponents, lift_exponents, verify_lift
from chevalley.roots import system

Z125 = make_ring("zmod:5^3")


@pytest.mark.parametrize("token,m,exps", [
    ("A2", 3, (2, 1)),
    ("A3", 4, (3, 2, 1)),
    ("D4", 2, (2, 2, 1, 1)),
    ("D5", 2, (2, 2, 2, 1, 1)),
    ("E6", 3, (4, 3, 5, 6, 4, 2)),
    ("E7", 1, (2, 2, 3, 4, 3, 2, 1)),
    ("E8", 1, (4, 5, 7, 10, 8, 6, 4, 2)),
])
def test_lift_exponent_tables(token, m, exps):
    sys = system(token)
    assert lift_exponents(sys) == (m, exps)
    # independent derivation: the first fundamental coweight cleared of denominators
    assert coweight_exponents(sys) == (m, exps)


def test_lift_with_r_one_is_identity():
    sys = system("A3")
    lift = build_lift(sys, Z125, Z125.one)
    assert lift.element.is_identity()


def test_lift_rejects_non_unit():
    with pytest.raises(RingError):
        build_lift(system("A3"), Z125, Z125.from_int(5))


@pytest.mark.parametrize("token", ["A3", "D4", "E6"])
def test_lift_verifies(token):
    sys = system(token)
    rng = random.Random(0)
    lift = build_lift(sys, Z125, Z125.from_int(2))
    report = verify_lift(lift, sys, rng)
    assert report.ok
    simple_checks = [c for c in report.checks if c.root in sys.simple]
    assert len(simple_checks) == sys.rank
    assert simple_checks[0].expected_power == 1
    assert all(c.expected_power == 0 for c in simple_checks[1:])


def test_lift_diagonal_and_unit_entries():
    sys = system("D4")
    lift = build_lift(sys, Z125, Z125.from_int(3))
    assert lift.element.mat.is_diagonal()
    S = lift.ring
    for e in lift.element.mat.diagonal_elems():
        assert S.is_unit_vec(e.vec)
    assert lift.gen ** lift.root_power == S.embed(lift.r)


def test_lift_action_telescopes_to_first_root_only():
    # conjugation multiplies the first simple-root generator by r and fixes the rest
    sys = system("D5")
    rng = random.Random(1)
    lift = build_lift(sys, Z125, Z125.from_int(7))
    S = lift.ring
    u = Z125.from_int(4)
    diag = lift.element.mat.diagonal_elems()
    for i, s in enumerate(sys.simple):
        x = x_elem(sys, S, s, lift.embed(u))
        conj = x.mat.conjugate_by_diagonal(diag)
        expected = lift.embed(u * Z125.from_int(7)) if i == 0 else lift.embed(u)
        assert conj == x_elem(sys, S, s, expected).mat


@pytest.mark.parametrize("token", ["A2", "D4"])
def test_lift_over_z81(token):
    ring = make_ring("zmod:3^4")
    sys = system(token)
    rng = random.Random(5)
    for _ in range(3):
        lift = build_lift(sys, ring, ring.random_unit(rng))
        assert verify_lift(lift, sys, rng, general_roots=6).ok


def test_e7_lift_needs_no_extension():
    sys = system("E7")
    lift = build_lift(sys, Z125, Z125.from_int(2))
    assert lift.ring is Z125
    rng = random.Random(2)
    assert verify_lift(lift, sys, rng, general_roots=5).ok


def test_e8_lift_reaches_power_two():
    sys = system("E8")
    lift = build_lift(sys, Z125, Z125.from_int(2))
    rng = random.Random(3)
    report = verify_lift(lift, sys, rng, general_roots=5)
    assert report.ok
    assert max(abs(c.expected_power) for c in report.checks) == 2
