"""Exception types shared across the library.

Undecided-at-cutoff and resource-bound conditions are first-class outcomes,
never silent; they carry enough context to report what was attempted.
"""

from __future__ import annotations


class YDWeylError(Exception):
    pass


class ValidationError(YDWeylError):
    """An input object violates a structural invariant (cocycle, YD axioms, ...)."""


class CutoffError(YDWeylError):
    pass


class UndecidedAtCutoff(CutoffError):
    """A search (ad-power vanishing, reflection) hit its cutoff without deciding."""


class ResourceBoundError(CutoffError):
    """A hard resource bound (vertex count, truncation degree) was exceeded."""
