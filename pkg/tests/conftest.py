"""Shared test configuration.

Exact-arithmetic examples can be slow on first construction (squarefree
factorization of fresh discriminants), so the wall-clock deadline is
disabled; derandomization keeps every run byte-reproducible.
"""

import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("acflab", deadline=None, derandomize=True)
settings.load_profile("acflab")
