"""Word-boundary conversion, evaluation, and inspection for dependency treebanks."""

from .align import (
    AlignmentResult,
    CharSpan,
    MergeGroup,
    align_tokenizations,
    char_index,
    read_segmented,
)
from .conllu import (
    Document,
    Sentence,
    Token,
    Violation,
    load_document,
    parse_document,
    serialize_document,
    validate_sentence,
)
from .diff import ParseDiff, diff_parses
from .merge import MergePolicy, apply_merges, check_legality, convert_corpus, fuse_group
from .metrics import (
    AttachmentReport,
    SegReport,
    attachment_scores,
    corpus_eval,
    segmentation_prf,
)
from .service import SchemeCatalog, build_catalog, create_app, load_catalog

__version__ = "0.1.0"

__all__ = [
    "AlignmentResult",
    "AttachmentReport",
    "CharSpan",
    "Document",
    "MergeGroup",
    "MergePolicy",
    "ParseDiff",
    "SchemeCatalog",
    "SegReport",
    "Sentence",
    "Token",
    "Violation",
    "align_tokenizations",
    "apply_merges",
    "attachment_scores",
    "build_catalog",
    "char_index",
    "check_legality",
    "convert_corpus",
    "corpus_eval",
    "create_app",
    "diff_parses",
    "fuse_group",
    "load_catalog",
    "load_document",
    "parse_document",
    "read_segmented",
    "segmentation_prf",
    "serialize_document",
    "validate_sentence",
]
