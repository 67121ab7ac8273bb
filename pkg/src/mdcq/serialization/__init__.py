"""Serialization helpers for reports and graph spec files."""

from .json_serializer import JsonSerializer, strip_volatile

__all__ = ["JsonSerializer", "strip_volatile"]
