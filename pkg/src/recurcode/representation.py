"""Greedy quotient-remainder representation of naturals over recurrence terms.

For a recurrence with positive coefficients the terms 1 = d_{k-1} <= d_k <= ...
cover every natural number: divide n by the largest term not exceeding it,
carry the remainder down one level, and stop at d_{k-1} = 1. The resulting
coefficient vector is the canonical representation; it is unique among all
vectors whose running tail sums stay below the next term.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RangeError, ValidationError
from .recurrence import RecurrenceSpec, extend_terms


@dataclass(frozen=True)
class Representation:
    """Coefficient vector (c_q, c_{q-1}, ..., c_{k-1}) for one number.

    Only the shape is enforced here (q >= k-1, length q-k+2, nonnegative
    coefficients); :func:`represent` always emits the canonical form, while
    :func:`reconstruct` accepts any well-formed vector so that decoding with
    an arbitrary key stays possible. Use :func:`is_canonical` to test the
    remainder bounds.
    """

    spec: RecurrenceSpec
    q: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if self.q < self.spec.k - 1:
            raise ValidationError(f"top index {self.q} below k-1")
        if len(coeffs) != self.q - self.spec.k + 2:
            raise ValidationError(
                f"expected {self.q - self.spec.k + 2} coefficients for top index "
                f"{self.q}, got {len(coeffs)}"
            )
        if any(c < 0 for c in coeffs):
            raise ValidationError("coefficients must be nonnegative")


def _terms_through(spec: RecurrenceSpec, index: int) -> list[int]:
    return extend_terms(spec, [], max(index, spec.k - 1))


def canonical_q(spec: RecurrenceSpec, n: int) -> int:
    """Largest index q with d_q <= n; ties between equal terms go to the
    largest index. n = 0 degenerates to q = k-1."""
    spec.require_positive()
    if n < 0:
        raise ValidationError(f"need n >= 0, got {n}")
    if n == 0:
        return spec.k - 1
    terms = _terms_through(spec, spec.k - 1)
    q = spec.k - 1
    while True:
        extend_terms(spec, terms, q + 1)
        if terms[q + 1] > n:
            return q
        q += 1


def represent(
    spec: RecurrenceSpec, n: int, fixed_s: int | None = None
) -> Representation:
    """Greedy decomposition of n over the sequence terms.

    With ``fixed_s`` the vector is computed against the top index
    q = fixed_s + k - 2 and padded with leading zeros, so one length can
    serve every block of a message; n must then satisfy n < d_{q+1}.
    """
    spec.require_positive()
    if n < 0:
        raise ValidationError(f"need n >= 0, got {n}")
    if fixed_s is None:
        q = canonical_q(spec, n)
    else:
        if fixed_s < 1:
            raise ValidationError(f"need fixed_s >= 1, got {fixed_s}")
        q = fixed_s + spec.k - 2
    terms = _terms_through(spec, q + 1)
    if n >= terms[q + 1]:
        raise RangeError(
            f"{n} needs more than {q - spec.k + 2} coefficients "
            f"(limit {terms[q + 1]})"
        )
    coeffs = []
    remainder = n
    for j in range(q, spec.k - 2, -1):
        coeffs.append(remainder // terms[j])
        remainder %= terms[j]
    return Representation(spec, q, tuple(coeffs))


def reconstruct(spec: RecurrenceSpec, rep: Representation) -> int:
    """Inner product of the coefficients with d_q, d_{q-1}, ..., d_{k-1}."""
    if rep.spec != spec:
        raise ValidationError("representation belongs to a different spec")
    terms = _terms_through(spec, rep.q)
    return sum(
        c * terms[j] for c, j in zip(rep.coeffs, range(rep.q, spec.k - 2, -1))
    )


def is_canonical(rep: Representation) -> bool:
    """True iff every running tail sum stays below the next sequence term.

    The tail over levels k-1..j is the remainder the greedy chain sees right
    before dividing by d_j, so these bounds characterise greedy output.
    """
    spec = rep.spec
    terms = _terms_through(spec, rep.q + 1)
    tail = 0
    for c, j in zip(reversed(rep.coeffs), range(spec.k - 1, rep.q + 1)):
        tail += c * terms[j]
        if tail >= terms[j + 1]:
            return False
    return True
