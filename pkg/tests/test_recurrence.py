"""Sequence generation, Cassini-type identities, completeness criterion."""

import random

import pytest

from recurcode.errors import ValidationError
from recurcode.recurrence import (
    RecurrenceSpec,
    SequenceTable,
    cassini_deg2,
    cassini_deg3,
    completeness_check,
    format_spec_line,
    generate,
    parse_spec_line,
)


def naive_terms(coeffs, m):
    """Independent term-by-term iteration, used as the oracle throughout."""
    k = len(coeffs)
    d = [0] * (k - 1) + [1]
    while len(d) <= m:
        d.append(sum(coeffs[i] * d[-1 - i] for i in range(k)))
    return d


def test_generate_worked_examples():
    assert generate(RecurrenceSpec(4, (18, 10, 13, 3)), 8).values == (
        0, 0, 0, 1, 18, 334, 6205, 115267, 2141252,
    )
    assert generate(RecurrenceSpec(4, (18, 4, 13, 3)), 8).values == (
        0, 0, 0, 1, 18, 328, 5989, 109351, 1996592,
    )
    assert generate(RecurrenceSpec(2, (1, 1)), 7).values == (0, 1, 1, 2, 3, 5, 8, 13)


def test_generate_matches_naive_iteration():
    rng = random.Random(11)
    for _ in range(50):
        k = rng.randint(2, 5)
        coeffs = [rng.randint(-9, 9) for _ in range(k)]
        coeffs[-1] = rng.choice([c for c in range(-9, 10) if c])
        m = rng.randint(k - 1, 30)
        table = generate(RecurrenceSpec(k, tuple(coeffs)), m)
        assert list(table.values) == naive_terms(coeffs, m)


def test_generate_prefix_stable():
    rng = random.Random(13)
    for _ in range(25):
        k = rng.randint(2, 5)
        coeffs = tuple(rng.randint(1, 9) for _ in range(k))
        spec = RecurrenceSpec(k, coeffs)
        m = rng.randint(k, 20)
        shorter = generate(spec, m)
        longer = generate(spec, m + rng.randint(1, 5))
        assert longer.values[: m + 1] == shorter.values


def test_spec_validation():
    with pytest.raises(ValidationError):
        RecurrenceSpec(1, (3,))
    with pytest.raises(ValidationError):
        RecurrenceSpec(3, (1, 2))
    with pytest.raises(ValidationError):
        RecurrenceSpec(2, (5, 0))
    with pytest.raises(ValidationError):
        generate(RecurrenceSpec(3, (1, 1, 1)), 1)


def test_table_extension_reuses_prefix():
    spec = RecurrenceSpec(2, (1, 1))
    table = generate(spec, 5)
    assert table.extended(3) is table
    assert table.extended(9).values[:6] == table.values


def test_cassini_deg2_examples():
    rep = cassini_deg2(1, 1, 5)
    assert (rep.lhs, rep.rhs, rep.holds) == (-1, -1, True)
    rep = cassini_deg2(4, 3, 3)
    assert (rep.lhs, rep.rhs, rep.holds) == (-9, -9, True)
    rep = cassini_deg2(1, 1, 1)
    assert (rep.lhs, rep.rhs, rep.holds) == (-1, -1, True)


def test_cassini_deg2_randomized():
    rng = random.Random(23)
    for _ in range(200):
        a = rng.randint(-9, 9)
        b = rng.choice([v for v in range(-9, 10) if v])
        n = rng.randint(1, 40)
        assert cassini_deg2(a, b, n).holds


def test_cassini_deg2_printed_sign_differs():
    # The (-b)^(n-1) variant fails for Fibonacci at odd n, which is why the
    # right-hand side here is (-1)^n * b^(n-1).
    rep = cassini_deg2(1, 1, 5)
    assert rep.lhs == -1
    assert (-1) ** (5 - 1) == 1  # the other reading would demand +1


def test_cassini_deg3_examples():
    rep = cassini_deg3(1, 1, 1, 4)
    assert (rep.lhs, rep.rhs, rep.holds) == (1, 1, True)
    rep = cassini_deg3(1, 1, 1, 2)
    assert (rep.lhs, rep.rhs, rep.holds) == (1, 1, True)
    rep = cassini_deg3(2, 1, 3, 5)
    assert (rep.lhs, rep.rhs, rep.holds) == (27, 27, True)


def test_cassini_deg3_randomized_against_oracle():
    rng = random.Random(29)
    for _ in range(100):
        a = rng.randint(-5, 5)
        b = rng.randint(-5, 5)
        c = rng.choice([v for v in range(-5, 6) if v])
        n = rng.randint(2, 30)
        rep = cassini_deg3(a, b, c, n)
        assert rep.holds
        d = naive_terms((a, b, c), n + 2)
        lhs = (
            d[n] * (d[n] ** 2 - d[n - 1] * d[n + 1])
            + d[n - 2] * (d[n + 1] ** 2 - d[n] * d[n + 2])
            + d[n - 1] * (d[n - 1] * d[n + 2] - d[n] * d[n + 1])
        )
        assert rep.lhs == lhs


def test_identity_validation():
    with pytest.raises(ValidationError):
        cassini_deg2(1, 0, 3)
    with pytest.raises(ValidationError):
        cassini_deg2(1, 1, 0)
    with pytest.raises(ValidationError):
        cassini_deg3(1, 1, 0, 4)
    with pytest.raises(ValidationError):
        cassini_deg3(1, 1, 1, 1)


def test_completeness_fibonacci():
    report = completeness_check(generate(RecurrenceSpec(2, (1, 1)), 20))
    assert report.complete and report.first_violation is None


def test_completeness_4_3_fails_at_second_term():
    table = generate(RecurrenceSpec(2, (4, 3)), 8)
    report = completeness_check(table)
    assert not report.complete
    assert report.first_violation == 2          # the term 4 > 1 + 1
    assert table.values[report.first_violation] == 4


def test_completeness_trivial_pair():
    spec = RecurrenceSpec(2, (1, 1))
    report = completeness_check(SequenceTable(spec, (1, 1)))
    assert report.complete


def test_completeness_validation():
    spec = RecurrenceSpec(2, (1, 1))
    with pytest.raises(ValidationError):
        completeness_check(SequenceTable(spec, (0, 2, 3)))
    with pytest.raises(ValidationError):
        completeness_check(SequenceTable(spec, (0, 0)))
    # decreasing terms (possible with mixed-sign coefficients)
    with pytest.raises(ValidationError):
        completeness_check(generate(RecurrenceSpec(2, (1, -1)), 6))


def reachable_by_distinct_terms(terms, limit):
    """Subset-sum oracle: which n <= limit are 0/1 sums of the terms."""
    reachable = {0}
    for t in [t for t in terms if 0 < t <= limit]:
        reachable |= {s + t for s in reachable if s + t <= limit}
    return reachable


@pytest.mark.parametrize(
    "coeffs", [(1, 1), (4, 3), (1, 2), (2, 1), (1, 1, 1)]
)
def test_completeness_agrees_with_subset_sum_oracle(coeffs):
    spec = RecurrenceSpec.from_coeffs(coeffs)
    values = naive_terms(coeffs, spec.k)
    while values[-1] <= 400:
        values.append(sum(spec.coeffs[i] * values[-1 - i] for i in range(spec.k)))
    table = SequenceTable(spec, tuple(values))
    report = completeness_check(table)
    positive = [v for v in values if v > 0]
    oracle_complete = all(
        n in reachable_by_distinct_terms(positive, 200) for n in range(1, 201)
    )
    assert report.complete == oracle_complete


def test_spec_line_round_trip():
    spec = RecurrenceSpec(4, (18, 10, 13, 3))
    line = format_spec_line(spec)
    assert line == "4 18 10 13 3"
    assert parse_spec_line(line) == spec
    with pytest.raises(ValidationError):
        parse_spec_line("4 18 x 13 3")
    with pytest.raises(ValidationError):
        parse_spec_line("7")
