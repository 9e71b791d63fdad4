"""Exception types shared across the package.

Input and precondition problems raise plain ``ValueError`` (or a subclass);
``InvariantViolation`` is reserved for breaches of internal contracts that
should be impossible on valid inputs and therefore indicate a bug.
"""


class InvariantViolation(RuntimeError):
    """An internal invariant that is guaranteed by theory failed to hold."""


class LemmaHypothesisError(ValueError):
    """Inputs do not satisfy the hypotheses of the lemma being applied."""
