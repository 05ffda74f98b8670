"""
mstair.mediaprofile.embedlex public API.
"""

from mstair.mediaprofile.embedlex.embeddings import (
    EmbeddingTable,
    avg_embedding,
    load_embeddings,
    read_embedding_header,
)
from mstair.mediaprofile.embedlex.lexicon import Lexicon, lexicon_ratio, load_lexicon, load_lexicons
from mstair.mediaprofile.embedlex.nltk_helpers import load_stopwords, nltk_cache
from mstair.mediaprofile.embedlex.resources import (
    REQUIRED_LEXICONS,
    ResourceBundle,
    default_resources,
    load_resources,
    resource_fingerprint,
)
from mstair.mediaprofile.embedlex.tokenizer import (
    DEFAULT_ABBREVIATIONS,
    TokenizedText,
    count_sentences,
    tokenize,
)


__all__ = [
    "DEFAULT_ABBREVIATIONS",
    "REQUIRED_LEXICONS",
    "EmbeddingTable",
    "Lexicon",
    "ResourceBundle",
    "TokenizedText",
    "avg_embedding",
    "count_sentences",
    "default_resources",
    "lexicon_ratio",
    "load_embeddings",
    "load_lexicon",
    "load_lexicons",
    "load_resources",
    "load_stopwords",
    "nltk_cache",
    "read_embedding_header",
    "resource_fingerprint",
    "tokenize",
]
