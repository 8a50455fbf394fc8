"""k-term linear recurrence sequences over exact integers.

A degree-k recurrence d_n = a_1*d_{n-1} + ... + a_k*d_{n-k} with the fixed
initial terms d_0 = ... = d_{k-2} = 0, d_{k-1} = 1 drives everything else in
this package: the companion-matrix algebra, the greedy number representation,
the cipher and the block code. Terms are plain Python integers, so they never
overflow and every identity below is checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True)
class RecurrenceSpec:
    """Degree k and coefficients (a_1, ..., a_k) of a linear recurrence.

    Requires k >= 2, exactly k coefficients, and a_k != 0 (otherwise the
    recurrence degenerates to a lower degree).
    """

    k: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValidationError(f"degree must be at least 2, got {self.k}")
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.k:
            raise ValidationError(
                f"expected {self.k} coefficients, got {len(coeffs)}"
            )
        if coeffs[-1] == 0:
            raise ValidationError("trailing coefficient a_k must be nonzero")

    @classmethod
    def from_coeffs(cls, coeffs) -> "RecurrenceSpec":
        coeffs = tuple(int(c) for c in coeffs)
        return cls(len(coeffs), coeffs)

    def is_positive(self) -> bool:
        return all(c >= 1 for c in self.coeffs)

    def require_positive(self) -> None:
        """Raise unless every coefficient is a positive integer.

        The representation, cipher and block code layers all need positive
        coefficients (nondecreasing terms, dominant real root); the identity
        layer does not.
        """
        if not self.is_positive():
            raise ValidationError(
                f"coefficients must all be >= 1 for this operation, got {self.coeffs}"
            )


@dataclass(frozen=True)
class SequenceTable:
    """Cached terms d_0..d_m of a recurrence, exact and immutable."""

    spec: RecurrenceSpec
    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> int:
        return self.values[index]

    def extended(self, m: int) -> "SequenceTable":
        """Return a table covering indices 0..m (prefix-stable)."""
        if m < len(self.values):
            return self
        values = extend_terms(self.spec, list(self.values), m)
        return SequenceTable(self.spec, tuple(values))


def extend_terms(spec: RecurrenceSpec, values: list[int], m: int) -> list[int]:
    """Grow a mutable term list in place up to index m and return it."""
    if not values:
        values.extend([0] * (spec.k - 1) + [1])
    coeffs = spec.coeffs
    k = spec.k
    while len(values) <= m:
        values.append(sum(coeffs[i] * values[-1 - i] for i in range(k)))
    return values


def generate(spec: RecurrenceSpec, m: int) -> SequenceTable:
    """Compute d_0..d_m for the given spec.

    m must be at least k-1 so the table contains the full initial segment.
    """
    if m < spec.k - 1:
        raise ValidationError(f"need m >= {spec.k - 1}, got {m}")
    return SequenceTable(spec, tuple(extend_terms(spec, [], m)))


@dataclass(frozen=True)
class IdentityReport:
    """Both sides of a sequence identity, so discrepancies stay visible."""

    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def cassini_deg2(a: int, b: int, n: int) -> IdentityReport:
    """Cassini-type identity for degree 2: d_{n-1}*d_{n+1} - d_n^2.

    The right-hand side used here is (-1)^n * b^(n-1), which follows from
    det(D^n) = (-b)^n; it reduces to the classic Fibonacci Cassini identity
    for a = b = 1.
    """
    if b == 0:
        raise ValidationError("b must be nonzero")
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    d = generate(RecurrenceSpec(2, (a, b)), n + 1)
    lhs = d[n - 1] * d[n + 1] - d[n] ** 2
    rhs = (-1) ** n * b ** (n - 1)
    return IdentityReport(lhs, rhs)


def cassini_deg3(a: int, b: int, c: int, n: int) -> IdentityReport:
    """Cassini-type identity for degree 3, equal to c^(n-2) for n >= 2.

    Uses the same initial terms as :func:`generate` with k = 3 (d_0 = d_1 = 0,
    d_2 = 1); all indices touched by the identity are nonnegative once n >= 2.
    """
    if c == 0:
        raise ValidationError("c must be nonzero")
    if n < 2:
        raise ValidationError(f"need n >= 2, got {n}")
    d = generate(RecurrenceSpec(3, (a, b, c)), n + 2)
    lhs = (
        d[n] * (d[n] ** 2 - d[n - 1] * d[n + 1])
        + d[n - 2] * (d[n + 1] ** 2 - d[n] * d[n + 2])
        + d[n - 1] * (d[n - 1] * d[n + 2] - d[n] * d[n + 1])
    )
    rhs = c ** (n - 2)
    return IdentityReport(lhs, rhs)


@dataclass(frozen=True)
class CompletenessReport:
    """Result of the completeness criterion check.

    ``first_violation`` is the index (into the checked table's values) of the
    first term that exceeds one plus the sum of all previous terms, or None
    when the criterion holds everywhere.
    """

    complete: bool
    first_violation: int | None


def completeness_check(table: SequenceTable) -> CompletenessReport:
    """Brown's criterion: every prefix must satisfy d_{k+1} <= 1 + sum(d_1..d_k).

    Leading zeros are stripped; the first positive term must be 1 and the
    remaining terms must be nondecreasing, otherwise the criterion does not
    apply and a validation error is raised.
    """
    values = table.values
    start = 0
    while start < len(values) and values[start] == 0:
        start += 1
    if start == len(values) or values[start] != 1:
        raise ValidationError("first nonzero term must be 1")
    for i in range(start + 1, len(values)):
        if values[i] < values[i - 1]:
            raise ValidationError(
                f"terms must be nondecreasing, got {values[i]} after {values[i - 1]}"
            )
    running = values[start]
    for i in range(start + 1, len(values)):
        if values[i] > 1 + running:
            return CompletenessReport(False, i)
        running += values[i]
    return CompletenessReport(True, None)


def format_spec_line(spec: RecurrenceSpec) -> str:
    """One-line text form shared repo-wide: ``k a1 a2 ... ak``."""
    return " ".join([str(spec.k)] + [str(c) for c in spec.coeffs])


def parse_spec_line(line: str) -> RecurrenceSpec:
    parts = line.split()
    if len(parts) < 2:
        raise ValidationError(f"expected 'k a1 ... ak', got {line!r}")
    try:
        numbers = [int(p) for p in parts]
    except ValueError as exc:
        raise ValidationError(f"non-integer in spec line {line!r}") from exc
    return RecurrenceSpec(numbers[0], tuple(numbers[1:]))
