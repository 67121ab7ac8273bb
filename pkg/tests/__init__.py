"""Tests for the mdcq package."""
