"""Greedy representation: worked examples, round trips, canonicity, uniqueness."""

import pytest

from recurcode.errors import RangeError, ValidationError
from recurcode.recurrence import RecurrenceSpec, extend_terms
from recurcode.representation import (
    Representation,
    canonical_q,
    is_canonical,
    reconstruct,
    represent,
)

EXAMPLE = RecurrenceSpec(4, (18, 10, 13, 3))
FIB = RecurrenceSpec(2, (1, 1))


def bounded_vectors(spec, limit):
    """Enumerate every coefficient vector whose running tail sums stay below
    the next term, up to the given value. Depth-first from the bottom level,
    so each vector appears exactly once."""
    terms = extend_terms(spec, [], spec.k)
    while terms[-1] <= limit:
        extend_terms(spec, terms, len(terms))
    q_max = len(terms) - 2
    found = []

    def walk(level, tail, coeffs):
        if tail > limit:
            return
        if level > q_max:
            found.append((tail, tuple(reversed(coeffs))))
            return
        bound = (terms[level + 1] - 1 - tail) // terms[level]
        for c in range(0, bound + 1):
            new_tail = tail + c * terms[level]
            if new_tail > limit:
                break
            walk(level + 1, new_tail, coeffs + [c])

    walk(spec.k - 1, 0, [])
    return q_max, found


def test_canonical_q_examples():
    assert canonical_q(EXAMPLE, 9140713) == 8
    assert canonical_q(FIB, 1) == 2
    assert canonical_q(FIB, 100) == 11
    assert canonical_q(FIB, 0) == 1


def test_canonical_q_validation():
    with pytest.raises(ValidationError):
        canonical_q(FIB, -1)
    with pytest.raises(ValidationError):
        canonical_q(RecurrenceSpec(2, (1, -1)), 5)


def test_represent_worked_examples():
    assert represent(EXAMPLE, 9140713).coeffs == (4, 4, 18, 8, 15, 5)
    assert represent(EXAMPLE, 26070018).coeffs == (12, 3, 4, 13, 1, 13)
    assert represent(EXAMPLE, 26002603).coeffs == (12, 2, 12, 7, 13, 13)
    assert represent(EXAMPLE, 14062626).coeffs == (6, 10, 10, 1, 3, 6)


def test_represent_fixed_length():
    assert represent(EXAMPLE, 0, fixed_s=3).coeffs == (0, 0, 0)
    rep = represent(FIB, 5, fixed_s=7)
    assert rep.coeffs == (0, 0, 1, 0, 0, 0, 0)
    assert reconstruct(FIB, rep) == 5
    with pytest.raises(RangeError):
        represent(FIB, 100, fixed_s=3)
    with pytest.raises(ValidationError):
        represent(FIB, 1, fixed_s=0)


def test_reconstruct_worked_examples():
    rep = Representation(EXAMPLE, 8, (4, 4, 18, 8, 15, 5))
    assert reconstruct(EXAMPLE, rep) == 9140713
    rep = Representation(EXAMPLE, 8, (6, 10, 10, 1, 3, 6))
    assert reconstruct(EXAMPLE, rep) == 14062626
    assert reconstruct(FIB, Representation(FIB, 4, (0, 0, 0, 0))) == 0


def test_representation_shape_validation():
    with pytest.raises(ValidationError):
        Representation(EXAMPLE, 8, (1, 2, 3))
    with pytest.raises(ValidationError):
        Representation(FIB, 3, (1, -1, 0))
    with pytest.raises(ValidationError):
        reconstruct(FIB, Representation(EXAMPLE, 8, (4, 4, 18, 8, 15, 5)))


@pytest.mark.parametrize(
    "spec",
    [FIB, RecurrenceSpec(3, (1, 1, 1)), EXAMPLE, RecurrenceSpec(2, (30, 1))],
)
def test_round_trip_small_range(spec):
    for n in range(0, 3000):
        rep = represent(spec, n)
        assert reconstruct(spec, rep) == n
        assert is_canonical(rep)


def test_greedy_top_coefficient_positive():
    for n in range(1, 500):
        rep = represent(FIB, n)
        assert rep.coeffs[0] >= 1
        assert rep.q == canonical_q(FIB, n)


def test_unrestricted_vectors_can_collide():
    # 2 = d_3 = d_1 + d_2 over the Fibonacci terms: two nonnegative vectors,
    # only one of which survives the tail bounds.
    two_a = Representation(FIB, 3, (1, 0, 0))
    two_b = Representation(FIB, 3, (0, 1, 1))
    assert reconstruct(FIB, two_a) == reconstruct(FIB, two_b) == 2
    assert is_canonical(two_a)
    assert not is_canonical(two_b)


def test_bounded_vectors_are_unique_per_value():
    q_max, found = bounded_vectors(FIB, 300)
    values = [v for v, _ in found]
    assert sorted(values) == list(range(0, 301))
    s = q_max - FIB.k + 2
    for value, coeffs in found:
        assert represent(FIB, value, fixed_s=s).coeffs == coeffs


def test_fixed_length_injective_exhaustively():
    terms = extend_terms(FIB, [], 9)
    seen = {}
    for n in range(terms[8]):
        rep = represent(FIB, n, fixed_s=7)
        assert rep.coeffs not in seen
        seen[rep.coeffs] = n
