"""Companion matrices and exact integer matrix algebra.

The companion matrix of a degree-k recurrence carries the sequence terms in
its powers; its determinant and adjugate give exact inverses, which is what
the block code layer relies on for divisibility-based decoding. Everything
here is plain-integer arithmetic; inverses are scaled integer matrices, never
floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ValidationError
from .recurrence import RecurrenceSpec, generate


class Matrix:
    """Immutable square-or-rectangular integer matrix."""

    __slots__ = ("rows",)

    def __init__(self, rows) -> None:
        tup = tuple(tuple(int(v) for v in row) for row in rows)
        if not tup or not tup[0]:
            raise ValidationError("matrix must have at least one row and column")
        width = len(tup[0])
        if any(len(r) != width for r in tup):
            raise ValidationError("ragged rows in matrix")
        object.__setattr__(self, "rows", tup)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def with_entry(self, i: int, j: int, value: int) -> "Matrix":
        rows = [list(r) for r in self.rows]
        rows[i][j] = int(value)
        return Matrix(rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Matrix({[list(r) for r in self.rows]!r})"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._require_same_shape(other)
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._require_same_shape(other)
        return Matrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __rmul__(self, scalar: int) -> "Matrix":
        return Matrix([[scalar * v for v in row] for row in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValidationError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        cols = list(zip(*other.rows))
        return Matrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in cols]
                for row in self.rows
            ]
        )

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)))

    def det(self) -> int:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValidationError("determinant needs a square matrix")
        n = self.nrows
        m = [list(r) for r in self.rows]
        sign = 1
        prev = 1
        for col in range(n - 1):
            pivot_row = next((r for r in range(col, n) if m[r][col] != 0), None)
            if pivot_row is None:
                return 0
            if pivot_row != col:
                m[col], m[pivot_row] = m[pivot_row], m[col]
                sign = -sign
            pivot = m[col][col]
            for r in range(col + 1, n):
                for c in range(col + 1, n):
                    m[r][c] = (pivot * m[r][c] - m[r][col] * m[col][c]) // prev
                m[r][col] = 0
            prev = pivot
        return sign * m[n - 1][n - 1]

    def minor(self, i: int, j: int) -> "Matrix":
        return Matrix(
            [
                [v for c, v in enumerate(row) if c != j]
                for r, row in enumerate(self.rows)
                if r != i
            ]
        )

    def cofactor(self, i: int, j: int) -> int:
        if self.nrows == 1:
            return 1
        sign = -1 if (i + j) % 2 else 1
        return sign * self.minor(i, j).det()

    def adjugate(self) -> "Matrix":
        """Transpose of the cofactor matrix; adj(A) @ A = det(A) * I exactly."""
        if not self.is_square():
            raise ValidationError("adjugate needs a square matrix")
        n = self.nrows
        return Matrix(
            [[self.cofactor(j, i) for j in range(n)] for i in range(n)]
        )

    def to_text(self) -> str:
        """Shared repo-wide matrix text format: dimensions line then rows."""
        lines = [f"{self.nrows} {self.ncols}"]
        lines += [" ".join(str(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Matrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValidationError("empty matrix text")
        header = lines[0].split()
        if len(header) != 2:
            raise ValidationError(f"expected 'rows cols' header, got {lines[0]!r}")
        try:
            nrows, ncols = int(header[0]), int(header[1])
            rows = [[int(v) for v in ln.split()] for ln in lines[1 : 1 + nrows]]
        except ValueError as exc:
            raise ValidationError("non-integer entry in matrix text") from exc
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValidationError("matrix text does not match its header")
        return cls(rows)

    def _require_same_shape(self, other: "Matrix") -> None:
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValidationError("matrix shape mismatch")


@dataclass(frozen=True)
class ScaledMatrix:
    """numerator / denominator as an exact rational matrix.

    Stored in lowest form: the gcd of all numerator entries and the
    denominator is 1, and the denominator is positive.
    """

    numerator: Matrix
    denominator: int

    def __post_init__(self) -> None:
        if self.denominator == 0:
            raise ValidationError("denominator must be nonzero")
        g = abs(self.denominator)
        for row in self.numerator.rows:
            for v in row:
                g = math.gcd(g, v)
            if g == 1:
                break
        sign = -1 if self.denominator < 0 else 1
        div = g * sign
        if div != 1:
            object.__setattr__(
                self,
                "numerator",
                Matrix([[v // div for v in row] for row in self.numerator.rows]),
            )
            object.__setattr__(self, "denominator", self.denominator // div)

    def apply(self, other: Matrix) -> ScaledMatrix:
        return ScaledMatrix(self.numerator @ other, self.denominator)

    def equals_matrix(self, other: Matrix) -> bool:
        return self.numerator == self.denominator * other

    def is_identity(self) -> bool:
        return self.equals_matrix(Matrix.identity(self.numerator.nrows))


def companion(spec: RecurrenceSpec) -> Matrix:
    """First row (a_1, ..., a_k), ones on the subdiagonal, zeros elsewhere."""
    k = spec.k
    rows = [list(spec.coeffs)]
    for i in range(1, k):
        rows.append([1 if j == i - 1 else 0 for j in range(k)])
    return Matrix(rows)


def power(spec: RecurrenceSpec, n: int) -> Matrix:
    """n-th power of the companion matrix by square-and-multiply, n >= 1."""
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    base = companion(spec)
    result = None
    while n:
        if n & 1:
            result = base if result is None else result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def det_companion_power(spec: RecurrenceSpec, n: int) -> int:
    """Closed form (-1)^((k+1)n) * a_k^n for det of the n-th companion power."""
    sign = -1 if ((spec.k + 1) * n) % 2 else 1
    return sign * spec.coeffs[-1] ** n


def inverse_power(spec: RecurrenceSpec, n: int) -> ScaledMatrix:
    """Exact inverse of the n-th companion power: adjugate over determinant."""
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    p = power(spec, n)
    return ScaledMatrix(p.adjugate(), p.det())


@dataclass(frozen=True)
class DetReport:
    """Computed determinant of a companion power next to its closed form."""

    value: int
    expected: int

    @property
    def holds(self) -> bool:
        return self.value == self.expected


def det_power(spec: RecurrenceSpec, n: int) -> DetReport:
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    return DetReport(power(spec, n).det(), det_companion_power(spec, n))


def structure_check(spec: RecurrenceSpec, n: int) -> bool:
    """Check the closed-form entries of the n-th companion power.

    Column 1 of row r is d_{n+k-r}; column j >= 2 is the combination
    sum_{t=1..k-j+1} a_{t+j-1} * d_{n+k-t-r}. Sequence terms at negative
    indices are taken as zero, which is only faithful for n >= k-1; below
    that the bottom-left entries genuinely depend on backward-extended
    terms and the check reports False.
    """
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    k = spec.k
    d = generate(spec, n + k - 1)

    def term(idx: int) -> int:
        return d[idx] if idx >= 0 else 0

    actual = power(spec, n)
    for r in range(1, k + 1):
        expected_row = [term(n + k - r)]
        for j in range(2, k + 1):
            expected_row.append(
                sum(
                    spec.coeffs[t + j - 2] * term(n + k - t - r)
                    for t in range(1, k - j + 2)
                )
            )
        if list(actual.rows[r - 1]) != expected_row:
            return False
    return True


def save_matrix(matrix: Matrix, path) -> None:
    Path(path).write_text(matrix.to_text())


def load_matrix(path) -> Matrix:
    return Matrix.from_text(Path(path).read_text())
