"""Incidence algebras and coalgebras of posets, their Cotor and Hochschild cohomology."""

from .errors import CotorlabError

__version__ = "0.1.0"
