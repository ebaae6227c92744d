"""Exception hierarchy shared by all picardtrop modules.

Exit-code mapping for the CLI lives in cli.py; library code only raises.
"""


class PicardTropError(Exception):
    """Base class for all errors raised by this package."""


class ExprSyntaxError(PicardTropError):
    """Malformed input expression. Carries the 0-based character offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at position {offset})")
        self.offset = offset


class NonSeparableError(PicardTropError):
    """The form has a repeated root (vanishing discriminant)."""


class UnsupportedCharacteristicError(PicardTropError):
    """Residue characteristic 2 or 3 is outside the classifier's scope."""


class InternalConsistencyError(PicardTropError):
    """A mathematically impossible state was reached; signals a bug, never bad input."""


class VerificationMismatchError(PicardTropError):
    """Classifier output disagrees with the independent root-based oracle."""
