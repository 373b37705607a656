"""Lexical prior-case retrieval engine and evaluation harness."""

from ._lexret import *  # noqa: F401,F403
from ._lexret import __version__  # noqa: F401
