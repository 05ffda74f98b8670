"""
mstair.mediaprofile.features public API.
"""

from mstair.mediaprofile.features.article_features import (
    ARTICLE_DIM,
    ARTICLE_FEATURE_MANIFEST,
    article_manifest_json,
    article_segment_names,
    count_syllables,
    medium_article_block,
    segment_features,
)
from mstair.mediaprofile.features.featurizer import FeatureMatrix, MediumFeaturizer
from mstair.mediaprofile.features.manifest import (
    FAMILY_ORDER,
    FeatureManifest,
    FeatureSpan,
    build_manifest,
)
from mstair.mediaprofile.features.profile_features import (
    TwitterFeatureBlock,
    WikiFeatureBlock,
    normalize_host,
    twitter_features,
    url_match,
    wiki_features,
)
from mstair.mediaprofile.features.url_features import (
    URL_FEATURE_NAMES,
    UrlFeatureBlock,
    UrlNgramVectorizer,
    traffic_feature,
    url_char_ngrams,
    url_sections,
    url_structure_features,
)


__all__ = [
    "ARTICLE_DIM",
    "ARTICLE_FEATURE_MANIFEST",
    "FAMILY_ORDER",
    "URL_FEATURE_NAMES",
    "FeatureManifest",
    "FeatureMatrix",
    "FeatureSpan",
    "MediumFeaturizer",
    "TwitterFeatureBlock",
    "UrlFeatureBlock",
    "UrlNgramVectorizer",
    "WikiFeatureBlock",
    "article_manifest_json",
    "article_segment_names",
    "build_manifest",
    "count_syllables",
    "medium_article_block",
    "normalize_host",
    "segment_features",
    "traffic_feature",
    "twitter_features",
    "url_char_ngrams",
    "url_match",
    "url_sections",
    "url_structure_features",
    "wiki_features",
]
