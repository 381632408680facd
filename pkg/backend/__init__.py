"""
HTTP backend exposing the analysis verbs.
"""

from backend.api import app

__all__ = ["app"]
