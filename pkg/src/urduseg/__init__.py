"""Word and sub-word segmentation for Urdu text.

A character-level linear-chain CRF decides, for every character, whether
it starts a word (B_w, rendered as a space), starts a sub-word unit
(B_s, rendered as a zero-width non-joiner), or continues the current
unit (I). The package covers the whole workflow: script-aware text
cleanup, the annotated corpus format, feature extraction, training,
evaluation, and a one-call segmentation pipeline.
"""

from .corpus import (
    Corpus,
    CorpusIssue,
    Label,
    LABEL_TAGS,
    LabeledSequence,
    cohen_kappa,
    label_tag,
    load_corpus,
    parse_annotated,
    render_segmented,
    split_corpus,
)
from .crf import (
    CrfModel,
    ForwardBackward,
    Lattice,
    build_lattice,
    decode_lattice,
    forward_backward,
    score_sequence,
    viterbi,
)
from .errors import (
    AdjacentMarkers,
    AlignmentMismatch,
    CorpusParseError,
    CorruptModel,
    DivergenceDetected,
    EmptyAfterNormalization,
    EmptyCorpus,
    EmptyInput,
    EmptySentence,
    IoFailure,
    LengthMismatch,
    PositionOutOfRange,
    UrdusegError,
    VersionMismatch,
)
from .evaluation import (
    AblationRow,
    ClassMetrics,
    ConfusionMatrix,
    EvalReport,
    ablate,
    evaluate,
    macro_micro,
    prf,
    report_from_matrix,
    round_half_up,
)
from .features import (
    FeatureIndex,
    FeatureTemplateSet,
    build_index,
    cumulative_ladder,
    extract,
    vectorize,
)
from .pipeline import SegmentOptions, segment_text
from .script import (
    CharClass,
    DEFAULT_DIACRITICS,
    Direction,
    SPACE,
    ZWNJ,
    classify,
    direction,
    is_diacritic,
    is_digit,
    is_joiner,
    normalize,
    strip_diacritics,
)
from .serialization import (
    describe_model,
    load_model,
    model_digest,
    save_model,
    serialize_model,
)
from .training import TrainConfig, gradient, log_likelihood, train

__version__ = "0.1.0"

__all__ = [
    "AblationRow",
    "AdjacentMarkers",
    "AlignmentMismatch",
    "CharClass",
    "ClassMetrics",
    "ConfusionMatrix",
    "Corpus",
    "CorpusIssue",
    "CorpusParseError",
    "CorruptModel",
    "CrfModel",
    "DEFAULT_DIACRITICS",
    "Direction",
    "DivergenceDetected",
    "EmptyAfterNormalization",
    "EmptyCorpus",
    "EmptyInput",
    "EmptySentence",
    "EvalReport",
    "FeatureIndex",
    "FeatureTemplateSet",
    "ForwardBackward",
    "IoFailure",
    "LABEL_TAGS",
    "Label",
    "LabeledSequence",
    "Lattice",
    "LengthMismatch",
    "PositionOutOfRange",
    "SPACE",
    "SegmentOptions",
    "TrainConfig",
    "UrdusegError",
    "VersionMismatch",
    "ZWNJ",
    "ablate",
    "build_index",
    "build_lattice",
    "classify",
    "cohen_kappa",
    "cumulative_ladder",
    "decode_lattice",
    "describe_model",
    "direction",
    "evaluate",
    "extract",
    "forward_backward",
    "gradient",
    "is_diacritic",
    "is_digit",
    "is_joiner",
    "label_tag",
    "load_corpus",
    "load_model",
    "log_likelihood",
    "macro_micro",
    "model_digest",
    "normalize",
    "parse_annotated",
    "prf",
    "render_segmented",
    "report_from_matrix",
    "round_half_up",
    "save_model",
    "score_sequence",
    "segment_text",
    "serialize_model",
    "split_corpus",
    "strip_diacritics",
    "train",
    "vectorize",
    "viterbi",
]
