"""Linear recurrence toolkit: sequences, companion matrices, a greedy number
representation, a block cipher, and a determinant-checksum block code."""

from .blockcode import (
    CodeMessage,
    CorrectionReport,
    DominantRoot,
    TrialOutcome,
    channel_trial,
    correct,
    correct_multi,
    correct_single,
    correction_coefficient,
    decode,
    detect,
    dominant_root,
    encode,
    ratio_check,
)
from .cipher import (
    DEFAULT_ALPHABET,
    Alphabet,
    CipherKey,
    Token,
    decrypt_block,
    decrypt_message,
    encrypt_block,
    encrypt_message,
    number_to_text,
    split_blocks,
    text_to_number,
)
from .companion import (
    Matrix,
    ScaledMatrix,
    companion,
    det_power,
    inverse_power,
    power,
    structure_check,
)
from .errors import (
    DecodeError,
    FrameError,
    RangeError,
    RecurcodeError,
    ValidationError,
)
from .recurrence import (
    RecurrenceSpec,
    SequenceTable,
    cassini_deg2,
    cassini_deg3,
    completeness_check,
    generate,
)
from .representation import Representation, canonical_q, reconstruct, represent

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "CipherKey",
    "CodeMessage",
    "CorrectionReport",
    "DEFAULT_ALPHABET",
    "DecodeError",
    "DominantRoot",
    "FrameError",
    "Matrix",
    "RangeError",
    "RecurcodeError",
    "RecurrenceSpec",
    "Representation",
    "ScaledMatrix",
    "SequenceTable",
    "Token",
    "TrialOutcome",
    "ValidationError",
    "canonical_q",
    "cassini_deg2",
    "cassini_deg3",
    "channel_trial",
    "companion",
    "completeness_check",
    "correct",
    "correct_multi",
    "correct_single",
    "correction_coefficient",
    "decode",
    "decrypt_block",
    "decrypt_message",
    "det_power",
    "detect",
    "dominant_root",
    "encode",
    "encrypt_block",
    "encrypt_message",
    "generate",
    "inverse_power",
    "number_to_text",
    "power",
    "ratio_check",
    "reconstruct",
    "represent",
    "split_blocks",
    "structure_check",
    "text_to_number",
]
