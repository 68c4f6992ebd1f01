"""Exact computations for degenerations of polarized Hodge structures."""

from __future__ import annotations

__version__ = "0.1.0"
