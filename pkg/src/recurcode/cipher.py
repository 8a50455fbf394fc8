"""Block cipher over a labeled alphabet, driven by the greedy representation.

Plaintext characters are packed into one integer per fixed-length block, each
block number is rewritten as its canonical coefficient vector over the key's
recurrence terms, and the coefficients become cipher symbols. Coefficients
below the alphabet size map back to letters; larger ones are carried as
escaped numerals so the stream stays decodable without out-of-band width
knowledge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import DecodeError, FrameError, ValidationError
from .recurrence import RecurrenceSpec
from .representation import canonical_q, represent, Representation, reconstruct

ESCAPE = "#"


@dataclass(frozen=True)
class Alphabet:
    """Ordered distinct symbols labeled 0..N-1, with a designated pad symbol.

    W is the decimal width of the largest label; block numbers are the
    base-10^W concatenation of the labels.
    """

    symbols: str
    pad_symbol: str = ""

    def __post_init__(self) -> None:
        if len(set(self.symbols)) != len(self.symbols):
            raise ValidationError("alphabet symbols must be distinct")
        if len(self.symbols) < 2:
            raise ValidationError("alphabet needs at least two symbols")
        if ESCAPE in self.symbols:
            raise ValidationError(f"symbol {ESCAPE!r} is reserved for numerals")
        if any(ch.isdigit() for ch in self.symbols):
            raise ValidationError("digits are reserved for numeral tokens")
        pad = self.pad_symbol or self.symbols[-1]
        if pad not in self.symbols:
            raise ValidationError(f"pad symbol {pad!r} not in alphabet")
        object.__setattr__(self, "pad_symbol", pad)
        object.__setattr__(
            self, "_labels", {ch: i for i, ch in enumerate(self.symbols)}
        )

    @property
    def size(self) -> int:
        return len(self.symbols)

    @property
    def label_width(self) -> int:
        return len(str(self.size - 1))

    def label(self, ch: str) -> int:
        try:
            return self._labels[ch]
        except KeyError:
            raise ValidationError(f"character {ch!r} not in alphabet") from None

    def char(self, label: int) -> str:
        if not 0 <= label < self.size:
            raise DecodeError(f"label {label} outside alphabet of size {self.size}")
        return self.symbols[label]

    def __contains__(self, ch: str) -> bool:
        return ch in self._labels


# A..Z plus 'x' for the blank, labels 0..26.
DEFAULT_ALPHABET = Alphabet("ABCDEFGHIJKLMNOPQRSTUVWXYZx")


@dataclass(frozen=True)
class Token:
    """One cipher symbol: a letter label (< N) or an escaped numeral (>= N)."""

    value: int
    numeral: bool

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValidationError("token value must be nonnegative")


def token_for_label(value: int, alphabet: Alphabet) -> Token:
    return Token(value, numeral=value >= alphabet.size)


def _check_tokens(tokens, alphabet: Alphabet) -> None:
    for t in tokens:
        if t.numeral != (t.value >= alphabet.size):
            raise ValidationError(
                f"token {t.value} mislabeled for alphabet of size {alphabet.size}"
            )


@dataclass(frozen=True)
class CipherKey:
    """Secret material: recurrence coefficients, block-vector length s, the
    plaintext block length, and the alphabet everything is read against."""

    spec: RecurrenceSpec
    s: int
    block_len: int = 4
    alphabet: Alphabet = field(default=DEFAULT_ALPHABET)

    def __post_init__(self) -> None:
        self.spec.require_positive()
        if self.s < 1:
            raise ValidationError(f"need s >= 1, got {self.s}")
        if self.block_len < 1:
            raise ValidationError(f"need block length >= 1, got {self.block_len}")


def text_to_number(text: str, alphabet: Alphabet) -> int:
    """Pack the labels of ``text`` into one integer, W digits per character."""
    w = alphabet.label_width
    digits = "".join(str(alphabet.label(ch)).zfill(w) for ch in text)
    return int(digits) if digits else 0


def number_to_text(n: int, length: int, alphabet: Alphabet) -> str:
    """Unpack ``n`` into exactly ``length`` characters (inverse of packing).

    Fails with a decode error when a W-digit group falls outside the
    alphabet or when n has too many digits for the requested length; both
    indicate a wrong key or a corrupted block.
    """
    if n < 0:
        raise ValidationError(f"need n >= 0, got {n}")
    if length < 1:
        raise ValidationError(f"need length >= 1, got {length}")
    w = alphabet.label_width
    digits = str(n)
    if len(digits) > w * length:
        raise DecodeError(f"{n} has too many digits for {length} characters")
    digits = digits.zfill(w * length)
    chars = []
    for i in range(0, len(digits), w):
        group = int(digits[i : i + w])
        if group >= alphabet.size:
            raise DecodeError(
                f"label group {group} outside alphabet of size {alphabet.size}"
            )
        chars.append(alphabet.symbols[group])
    return "".join(chars)


def render_block(tokens, alphabet: Alphabet) -> str:
    """Render one block; numerals become #digits# sharing the block's width.

    All numerals in a block are zero-padded to the widest numeral's digit
    count, mirroring how plain labels share the alphabet's label width.
    """
    _check_tokens(tokens, alphabet)
    width = max((len(str(t.value)) for t in tokens if t.numeral), default=0)
    parts = []
    for t in tokens:
        if t.numeral:
            parts.append(f"{ESCAPE}{str(t.value).zfill(width)}{ESCAPE}")
        else:
            parts.append(alphabet.char(t.value))
    return "".join(parts)


def render_block_compat(tokens, alphabet: Alphabet) -> str:
    """Bare-digit rendering: numerals are unescaped, zero-padded to the
    block's widest numeral. Coincides with :func:`render_block` when every
    label fits the alphabet; otherwise the result is only parseable when the
    reader already knows the digit width."""
    _check_tokens(tokens, alphabet)
    width = max((len(str(t.value)) for t in tokens if t.numeral), default=0)
    return "".join(
        str(t.value).zfill(width) if t.numeral else alphabet.char(t.value)
        for t in tokens
    )


def parse_block_compat(
    text: str, alphabet: Alphabet, width: int, s: int | None = None
) -> tuple[Token, ...]:
    """Parse the bare-digit rendering given its numeral width.

    Needed only for interoperability; the escaped format carries the width
    in-band and should be preferred.
    """
    if width < 1:
        raise ValidationError(f"need width >= 1, got {width}")
    tokens: list[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isdigit():
            digits = text[i : i + width]
            if len(digits) < width or not digits.isdigit():
                raise FrameError(f"truncated numeral at offset {i} in {text!r}")
            value = int(digits)
            if value < alphabet.size:
                raise DecodeError(
                    f"numeral {digits!r} collides with letter labels"
                )
            tokens.append(Token(value, numeral=True))
            i += width
        else:
            tokens.append(Token(alphabet.label(ch), numeral=False))
            i += 1
    if s is not None and len(tokens) != s:
        raise FrameError(f"expected {s} tokens, parsed {len(tokens)}")
    return tuple(tokens)


def split_blocks(
    cipher_text: str, s: int, alphabet: Alphabet
) -> list[tuple[Token, ...]]:
    """Parse a cipher text into blocks of s tokens each.

    Numeral widths are validated against the per-block shared-width rule so
    that re-rendering the result reproduces the input byte for byte; any
    trailing partial block is a framing error.
    """
    if s < 1:
        raise ValidationError(f"need s >= 1, got {s}")
    tokens: list[Token] = []
    widths: list[int] = []
    i = 0
    while i < len(cipher_text):
        ch = cipher_text[i]
        if ch == ESCAPE:
            end = cipher_text.find(ESCAPE, i + 1)
            if end == -1:
                raise FrameError(f"unterminated numeral at offset {i}")
            digits = cipher_text[i + 1 : end]
            if not digits.isdigit():
                raise FrameError(f"bad numeral {digits!r} at offset {i}")
            value = int(digits)
            if value < alphabet.size:
                raise FrameError(
                    f"numeral {digits!r} is a letter label and must not be escaped"
                )
            tokens.append(Token(value, numeral=True))
            widths.append(len(digits))
            i = end + 1
        else:
            tokens.append(Token(alphabet.label(ch), numeral=False))
            widths.append(0)
            i += 1
    if len(tokens) % s:
        raise FrameError(
            f"{len(tokens)} tokens do not frame into blocks of {s}"
        )
    blocks = []
    for b in range(0, len(tokens), s):
        block = tuple(tokens[b : b + s])
        expected = max(
            (len(str(t.value)) for t in block if t.numeral), default=0
        )
        for t, w in zip(block, widths[b : b + s]):
            if t.numeral and w != expected:
                raise FrameError(
                    f"numeral {t.value} rendered with width {w}, block width is {expected}"
                )
        blocks.append(block)
    return blocks


def encrypt_block(key: CipherKey, n: int) -> tuple[Token, ...]:
    """Coefficient vector of one block number, as s tokens."""
    rep = represent(key.spec, n, fixed_s=key.s)
    return tuple(token_for_label(c, key.alphabet) for c in rep.coeffs)


def decrypt_block(key: CipherKey, tokens) -> int:
    """Rebuild the block number from s token values."""
    if len(tokens) != key.s:
        raise FrameError(f"expected {key.s} tokens, got {len(tokens)}")
    _check_tokens(tokens, key.alphabet)
    q = key.s + key.spec.k - 2
    rep = Representation(key.spec, q, tuple(t.value for t in tokens))
    return reconstruct(key.spec, rep)


def encrypt_message(
    spec: RecurrenceSpec,
    plaintext: str,
    alphabet: Alphabet = DEFAULT_ALPHABET,
    block_len: int = 4,
) -> tuple[CipherKey, str]:
    """Encrypt a message, deriving the shared vector length from its blocks.

    The plaintext is right-padded with the alphabet's pad symbol to a whole
    number of blocks; s is chosen so the largest block number still fits,
    and is recorded in the returned key.
    """
    if not plaintext:
        raise ValidationError("plaintext must be non-empty")
    if block_len < 1:
        raise ValidationError(f"need block length >= 1, got {block_len}")
    spec.require_positive()
    for ch in plaintext:
        if ch not in alphabet:
            raise ValidationError(f"character {ch!r} not in alphabet")
    if len(plaintext) % block_len:
        plaintext = plaintext + alphabet.pad_symbol * (
            block_len - len(plaintext) % block_len
        )
    numbers = [
        text_to_number(plaintext[i : i + block_len], alphabet)
        for i in range(0, len(plaintext), block_len)
    ]
    q = canonical_q(spec, max(numbers))
    key = CipherKey(spec, q - spec.k + 2, block_len, alphabet)
    cipher_text = "".join(
        render_block(encrypt_block(key, n), alphabet) for n in numbers
    )
    return key, cipher_text


def decrypt_message(key: CipherKey, cipher_text: str) -> str:
    """Invert :func:`encrypt_message`; trailing pad symbols are preserved."""
    blocks = split_blocks(cipher_text, key.s, key.alphabet)
    return "".join(
        number_to_text(decrypt_block(key, block), key.block_len, key.alphabet)
        for block in blocks
    )


def coeffs_from_compact(digits: str, k: int) -> tuple[int, ...]:
    """Split a fixed-width concatenated key string into k coefficients.

    Accepts forms like ``18101303`` (width 2) or ``182010013003`` (width 3);
    the width must divide the string length evenly by k.
    """
    if k < 2:
        raise ValidationError(f"need k >= 2, got {k}")
    if not digits.isdigit():
        raise ValidationError(f"compact key must be all digits, got {digits!r}")
    if len(digits) % k:
        raise ValidationError(
            f"compact key of length {len(digits)} does not split into {k} groups"
        )
    width = len(digits) // k
    return tuple(int(digits[i : i + width]) for i in range(0, len(digits), width))


def save_key(key: CipherKey, path) -> None:
    """Key file: k, coefficients, s, block length, alphabet; one per line."""
    lines = [
        str(key.spec.k),
        " ".join(str(c) for c in key.spec.coeffs),
        str(key.s),
        str(key.block_len),
        key.alphabet.symbols,
    ]
    Path(path).write_text("\n".join(lines) + "\n")


def load_key(path) -> CipherKey:
    lines = Path(path).read_text().splitlines()
    if len(lines) < 5:
        raise ValidationError(f"key file {path} needs 5 lines, got {len(lines)}")
    try:
        k = int(lines[0])
        coeffs = tuple(int(c) for c in lines[1].split())
        s = int(lines[2])
        block_len = int(lines[3])
    except ValueError as exc:
        raise ValidationError(f"malformed key file {path}") from exc
    if len(coeffs) != k:
        raise ValidationError(
            f"key file {path}: expected {k} coefficients, got {len(coeffs)}"
        )
    return CipherKey(
        RecurrenceSpec(k, coeffs), s, block_len, Alphabet(lines[4])
    )
