"""Exhaustive classification, randomized search and manifest verification."""

from .classify import ClassificationRow, classify, enumerate_connection_sets
from .manifest import ManifestReport, verify_manifest
from .random_search import SearchRecord, fingerprint, random_search, search_dimensions

__all__ = [
    "ClassificationRow",
    "ManifestReport",
    "SearchRecord",
    "classify",
    "enumerate_connection_sets",
    "fingerprint",
    "random_search",
    "search_dimensions",
    "verify_manifest",
]
