"""
mstair.mediaprofile.corpus public API.
"""

from mstair.mediaprofile.corpus.labels import (
    BIAS3_LABELS,
    BIAS7_LABELS,
    FACTUALITY_LABELS,
    TASKS,
    decode_label,
    encode_bias7,
    encode_factuality,
    map_bias_7_to_3,
    num_classes,
)
from mstair.mediaprofile.corpus.loaders import (
    dump_bundle,
    labels_for_task,
    load_bundle,
    load_bundles,
    load_corpus,
    normalize_medium_id,
    save_bundle,
    save_corpus,
)
from mstair.mediaprofile.corpus.records import (
    ArticleDoc,
    EvidenceBundle,
    MediumRecord,
    TwitterProfile,
    WikiSnapshot,
)
from mstair.mediaprofile.corpus.stats import CorpusStats, corpus_stats
from mstair.mediaprofile.corpus.synthetic import SyntheticCorpus, build_synthetic_corpus


__all__ = [
    "BIAS3_LABELS",
    "BIAS7_LABELS",
    "FACTUALITY_LABELS",
    "TASKS",
    "ArticleDoc",
    "CorpusStats",
    "EvidenceBundle",
    "MediumRecord",
    "SyntheticCorpus",
    "TwitterProfile",
    "WikiSnapshot",
    "build_synthetic_corpus",
    "corpus_stats",
    "decode_label",
    "dump_bundle",
    "encode_bias7",
    "encode_factuality",
    "labels_for_task",
    "load_bundle",
    "load_bundles",
    "load_corpus",
    "map_bias_7_to_3",
    "normalize_medium_id",
    "num_classes",
    "save_bundle",
    "save_corpus",
]
