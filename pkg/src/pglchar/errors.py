"""Shared exception types.

Argument errors are plain ValueError.  The two classes here separate "the
request is too big for the desk-scale envelope" from "an exact identity the
implementation relies on failed", because callers (notably the CLI) map them
to different exit codes.
"""


class CapacityError(Exception):
    """Requested computation exceeds the configured capacity envelope."""


class InvariantViolation(Exception):
    """An exact internal invariant failed; indicates a bug, never bad input."""
