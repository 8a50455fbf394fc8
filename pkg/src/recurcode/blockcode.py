"""Matrix block code with a determinant checksum and ratio-guided correction.

A k x k message matrix M is encoded as E = P @ M, where P is the n-th power
of the recurrence's companion matrix. det(M) travels with E; since det(P) has
the closed form sign * a_k^n, the receiver can check det(E) against it
exactly. On mismatch, single errors are repaired by solving the determinant
equation (affine in any one entry), and heavier error patterns are searched
with integer candidates clustered around estimates from the dominant-root
ratio structure of E's columns.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .companion import (
    Matrix,
    ScaledMatrix,
    det_companion_power,
    inverse_power,
    power,
)
from .errors import DecodeError, ValidationError
from .recurrence import RecurrenceSpec

INTACT = "intact"
CORRECTED = "corrected"
UNCORRECTABLE = "uncorrectable"


@dataclass(frozen=True)
class CodeMessage:
    """Transmitted unit: code matrix E, encoding exponent n, checksum det M."""

    spec: RecurrenceSpec
    n: int
    matrix: Matrix
    det_m: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"need n >= 1, got {self.n}")
        if not self.matrix.is_square() or self.matrix.nrows != self.spec.k:
            raise ValidationError(
                f"code matrix must be {self.spec.k}x{self.spec.k}"
            )


@dataclass(frozen=True)
class DominantRoot:
    """Largest real root of x^k - a_1 x^(k-1) - ... - a_k, with its tolerance."""

    value: float
    tol: float
    spec: RecurrenceSpec


@dataclass(frozen=True)
class RatioCell:
    """One column ratio e_{i,j} / e_{i+r,j} compared against root^r.

    ``ratio`` and ``rel_err`` are None when the denominator entry is zero
    (the cell cannot be checked); ``ok`` is None in that case too.
    """

    row: int
    col: int
    offset: int
    ratio: float | None
    rel_err: float | None
    ok: bool | None


@dataclass(frozen=True)
class CorrectionReport:
    status: str
    positions: tuple[tuple[int, int], ...]
    message: CodeMessage | None
    decoded: Matrix | None
    detm_repaired: bool = False


@dataclass(frozen=True)
class TrialOutcome:
    """One randomized channel round: corrupt, detect, repair, compare."""

    n: int
    weight: int
    detected: bool
    corrected: bool
    exact: bool


def encode(spec: RecurrenceSpec, n: int, matrix: Matrix) -> CodeMessage:
    """E = (companion power) @ M with the checksum det M attached."""
    spec.require_positive()
    if not matrix.is_square() or matrix.nrows != spec.k:
        raise ValidationError(f"message matrix must be {spec.k}x{spec.k}")
    if any(v < 0 for row in matrix.rows for v in row):
        raise ValidationError("message matrix entries must be nonnegative")
    return CodeMessage(spec, n, power(spec, n) @ matrix, matrix.det())


def _exact_decode(inv: ScaledMatrix, matrix: Matrix) -> Matrix:
    scaled = inv.numerator @ matrix
    den = inv.denominator
    rows = []
    for row in scaled.rows:
        out = []
        for v in row:
            if v % den:
                raise DecodeError("inexact division: corrupted message or wrong key")
            q = v // den
            if q < 0:
                raise DecodeError("negative entry after decoding")
            out.append(q)
        rows.append(out)
    return Matrix(rows)


def decode(spec: RecurrenceSpec, msg: CodeMessage) -> Matrix:
    """Exact inverse transform; raises on inexact division or negative entries.

    Does not consult the checksum, so callers can attempt diagnostic decodes
    of messages that failed :func:`detect`.
    """
    return _exact_decode(inverse_power(spec, msg.n), msg.matrix)


def target_det(spec: RecurrenceSpec, n: int, det_m: int) -> int:
    """Determinant E must have when the transmission was clean."""
    return det_companion_power(spec, n) * det_m


def detect(spec: RecurrenceSpec, msg: CodeMessage) -> bool:
    """True iff the determinant checksum relation holds exactly."""
    return msg.matrix.det() == target_det(spec, msg.n, msg.det_m)


def dominant_root(spec: RecurrenceSpec, tol: float = 1e-12) -> DominantRoot:
    """Bisect the characteristic polynomial on (1, 1 + max coefficient).

    Positive coefficients guarantee exactly one sign change there: the
    polynomial is negative at 1 and positive at the upper bound.
    """
    spec.require_positive()
    if tol <= 0:
        raise ValidationError(f"need tol > 0, got {tol}")

    def char_poly(x: float) -> float:
        acc = 1.0
        for c in spec.coeffs:
            acc = acc * x - c
        return acc

    lo, hi = 1.0, 1.0 + max(spec.coeffs)
    for _ in range(400):
        if hi - lo <= tol * lo:
            break
        mid = (lo + hi) / 2
        if char_poly(mid) > 0:
            hi = mid
        else:
            lo = mid
    return DominantRoot((lo + hi) / 2, tol, spec)


def ratio_check(
    msg: CodeMessage, root: DominantRoot, r: int = 1, tol: float = 1e-3
) -> list[RatioCell]:
    """Compare every column ratio at row offset r against root^r."""
    k = msg.spec.k
    if not 0 <= r < k:
        raise ValidationError(f"row offset must be in [0, {k - 1}], got {r}")
    expected = root.value**r
    cells = []
    for j in range(k):
        for i in range(k - r):
            denom = msg.matrix.entry(i + r, j)
            if denom == 0:
                cells.append(RatioCell(i + 1, j + 1, r, None, None, None))
                continue
            ratio = msg.matrix.entry(i, j) / denom
            rel_err = abs(ratio - expected) / expected
            cells.append(
                RatioCell(i + 1, j + 1, r, ratio, rel_err, rel_err <= tol)
            )
    return cells


def _try_entry_repair(
    msg: CodeMessage, inv: ScaledMatrix, target: int, i: int, j: int
) -> CorrectionReport | None:
    """Solve the checksum equation for entry (i, j); det E is affine in it."""
    e = msg.matrix
    cof = e.cofactor(i, j)
    if cof == 0:
        return None
    rest = e.with_entry(i, j, 0).det()
    if (target - rest) % cof:
        return None
    value = (target - rest) // cof
    if value < 0 or value == e.entry(i, j):
        return None
    repaired = e.with_entry(i, j, value)
    try:
        decoded = _exact_decode(inv, repaired)
    except DecodeError:
        return None
    fixed = CodeMessage(msg.spec, msg.n, repaired, msg.det_m)
    return CorrectionReport(CORRECTED, ((i + 1, j + 1),), fixed, decoded)


def correct_single(spec: RecurrenceSpec, msg: CodeMessage) -> CorrectionReport:
    """Repair one corrupted entry of E, or a corrupted checksum.

    Every position is tried in row-major order: with e_ij treated as the
    unknown, the checksum equation is linear with the cofactor as slope, so
    each position yields at most one integer candidate. A candidate is
    accepted only if the repaired matrix also decodes exactly to nonnegative
    integers, which prunes determinant collisions. If no entry repair works
    but E itself decodes cleanly, the checksum is assumed corrupted and is
    recomputed from the decoded message.
    """
    if detect(spec, msg):
        return CorrectionReport(INTACT, (), msg, decode(spec, msg))
    inv = inverse_power(spec, msg.n)
    target = target_det(spec, msg.n, msg.det_m)
    k = spec.k
    for i in range(k):
        for j in range(k):
            report = _try_entry_repair(msg, inv, target, i, j)
            if report is not None:
                return report
    try:
        decoded = _exact_decode(inv, msg.matrix)
    except DecodeError:
        return CorrectionReport(UNCORRECTABLE, (), None, None)
    fixed = CodeMessage(spec, msg.n, msg.matrix, decoded.det())
    return CorrectionReport(CORRECTED, (), fixed, decoded, detm_repaired=True)


def _nearest_reference(k: int, row: int, col: int, excluded) -> int | None:
    """Closest row in the column that is not itself suspected."""
    best = None
    for other in range(k):
        if other == row or (other, col) in excluded:
            continue
        if best is None or abs(other - row) < abs(best - row):
            best = other
    return best


def correct_multi(
    spec: RecurrenceSpec,
    msg: CodeMessage,
    max_weight: int = 2,
    window: int = 16,
) -> CorrectionReport:
    """Search error patterns of weight 2..max_weight.

    For each candidate position set (row-major lexicographic order) all but
    the last position get integer candidates within +/- window of a
    dominant-root ratio estimate taken from an unsuspected entry in the same
    column; the last position is then solved from the checksum equation.
    The first assignment that decodes exactly to nonnegative integers wins.
    Candidates are enumerated smallest value first, so the result is
    deterministic.
    """
    if detect(spec, msg):
        return CorrectionReport(INTACT, (), msg, decode(spec, msg))
    k = spec.k
    if not 2 <= max_weight <= k * k - 1:
        raise ValidationError(
            f"max weight must be in [2, {k * k - 1}], got {max_weight}"
        )
    if window < 1:
        raise ValidationError(f"need window >= 1, got {window}")
    inv = inverse_power(spec, msg.n)
    target = target_det(spec, msg.n, msg.det_m)
    alpha = dominant_root(spec).value
    e = msg.matrix
    cells = [(i, j) for i in range(k) for j in range(k)]
    for weight in range(2, max_weight + 1):
        for combo in itertools.combinations(cells, weight):
            guessed, solved = combo[:-1], combo[-1]
            ranges = []
            feasible = True
            for i, j in guessed:
                ref = _nearest_reference(k, i, j, set(combo))
                if ref is None:
                    feasible = False
                    break
                estimate = e.entry(ref, j) * alpha ** (ref - i)
                if not math.isfinite(estimate) or estimate > 1e18:
                    feasible = False
                    break
                center = round(estimate)
                ranges.append(range(max(0, center - window), center + window + 1))
            if not feasible:
                continue
            for values in itertools.product(*ranges):
                trial = e
                for (i, j), v in zip(guessed, values):
                    trial = trial.with_entry(i, j, v)
                cof = trial.cofactor(*solved)
                if cof == 0:
                    continue
                rest = trial.with_entry(*solved, 0).det()
                if (target - rest) % cof:
                    continue
                last = (target - rest) // cof
                if last < 0:
                    continue
                repaired = trial.with_entry(*solved, last)
                if repaired == e:
                    continue
                try:
                    decoded = _exact_decode(inv, repaired)
                except DecodeError:
                    continue
                changed = tuple(
                    (i + 1, j + 1)
                    for i, j in cells
                    if repaired.entry(i, j) != e.entry(i, j)
                )
                fixed = CodeMessage(spec, msg.n, repaired, msg.det_m)
                return CorrectionReport(CORRECTED, changed, fixed, decoded)
    return CorrectionReport(UNCORRECTABLE, (), None, None)


def correct(
    spec: RecurrenceSpec,
    msg: CodeMessage,
    max_weight: int = 2,
    window: int = 16,
) -> CorrectionReport:
    """Full pipeline: single-entry and checksum repairs, then wider search."""
    report = correct_single(spec, msg)
    if report.status == UNCORRECTABLE and max_weight >= 2:
        report = correct_multi(spec, msg, max_weight, window)
    return report


def correction_coefficient(k: int) -> Fraction:
    """Ratio of correctable to detectable error patterns on a k x k matrix."""
    if k < 2:
        raise ValidationError(f"need k >= 2, got {k}")
    total = 2 ** (k * k) - 1
    return Fraction(total - 1, total)


def corrupt_message(
    msg: CodeMessage,
    weight: int,
    delta_range: tuple[int, int],
    rng: random.Random,
) -> tuple[CodeMessage, tuple[tuple[int, int], ...]]:
    """Flip `weight` distinct entries of E by nonzero signed deltas."""
    k = msg.spec.k
    if not 0 <= weight <= k * k:
        raise ValidationError(f"weight must be in [0, {k * k}], got {weight}")
    lo, hi = delta_range
    if not 1 <= lo <= hi:
        raise ValidationError(f"bad delta range {delta_range}")
    positions = rng.sample([(i, j) for i in range(k) for j in range(k)], weight)
    matrix = msg.matrix
    for i, j in positions:
        delta = rng.randint(lo, hi) * rng.choice((-1, 1))
        matrix = matrix.with_entry(i, j, matrix.entry(i, j) + delta)
    corrupted = CodeMessage(msg.spec, msg.n, matrix, msg.det_m)
    return corrupted, tuple((i + 1, j + 1) for i, j in positions)


def channel_trial(
    spec: RecurrenceSpec,
    n: int,
    matrix: Matrix,
    weight: int,
    delta_range: tuple[int, int] = (1, 50),
    seed: int = 0,
    window: int = 16,
    max_weight: int = 2,
) -> TrialOutcome:
    """One reproducible channel round against a known ground truth."""
    original = encode(spec, n, matrix)
    if weight == 0:
        return TrialOutcome(n, 0, detected=False, corrected=False, exact=True)
    rng = random.Random(seed)
    received, _ = corrupt_message(original, weight, delta_range, rng)
    if detect(spec, received):
        return TrialOutcome(n, weight, detected=False, corrected=False, exact=False)
    report = correct(spec, received, max_weight=max_weight, window=window)
    corrected = report.status == CORRECTED
    exact = (
        corrected
        and report.message.matrix == original.matrix
        and report.message.det_m == original.det_m
    )
    return TrialOutcome(n, weight, detected=True, corrected=corrected, exact=exact)


def save_message(msg: CodeMessage, path) -> None:
    """Message file: `k n`, coefficients, det M, then the matrix block."""
    lines = [
        f"{msg.spec.k} {msg.n}",
        " ".join(str(c) for c in msg.spec.coeffs),
        str(msg.det_m),
    ]
    Path(path).write_text("\n".join(lines) + "\n" + msg.matrix.to_text())


def load_message(path) -> CodeMessage:
    lines = Path(path).read_text().splitlines()
    if len(lines) < 4:
        raise ValidationError(f"message file {path} is truncated")
    try:
        k, n = (int(v) for v in lines[0].split())
        coeffs = tuple(int(c) for c in lines[1].split())
        det_m = int(lines[2])
    except ValueError as exc:
        raise ValidationError(f"malformed message file {path}") from exc
    matrix = Matrix.from_text("\n".join(lines[3:]))
    return CodeMessage(RecurrenceSpec(k, coeffs), n, matrix, det_m)
