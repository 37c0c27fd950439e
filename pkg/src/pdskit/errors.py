"""Exception types.

Malformed input (bad descriptors, out-of-range ranks, even orders) raises a
plain ``ValueError``.  ``HypothesisError`` marks a well-formed request whose
mathematical hypotheses do not hold, e.g. a Hall subgroup whose index is even.
"""


class HypothesisError(ValueError):
    """A hypothesis of the requested operation is violated."""


class InconsistencyError(RuntimeError):
    """A verified input produced a result the theory rules out."""
