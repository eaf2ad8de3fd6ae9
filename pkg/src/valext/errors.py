"""Exception hierarchy shared by the library and the CLI."""
from __future__ import annotations


class ValextError(Exception):
    """Base class for all errors raised by valext."""


class ReducibleModulusError(ValextError, ValueError):
    """A tower extension was requested with a reducible (or linear) modulus."""

    def __init__(self, message, factors=()):
        super().__init__(message)
        self.factors = list(factors)


class NotSquarefreeError(ValextError, ValueError):
    """The input polynomial shares a factor with its derivative."""

    def __init__(self, poly, common_factor):
        super().__init__(
            f"input polynomial {poly} is not squarefree "
            f"(gcd with its derivative is {common_factor}); "
            "only separable extensions are supported")
        self.poly = poly
        self.common_factor = common_factor


class ConditionStarError(ValextError, ValueError):
    """Augmentation value does not exceed alpha times the previous value."""

    def __init__(self, beta_prev, alpha, beta_next):
        super().__init__(
            f"augmentation rejected: new value {beta_next} must exceed "
            f"{alpha} * {beta_prev} = {alpha * beta_prev}")
        self.beta_prev = beta_prev
        self.alpha = alpha
        self.beta_next = beta_next


class NonTerminationError(ValextError, RuntimeError):
    """Augmentation budget exhausted along a branch."""

    def __init__(self, betas, limit):
        from .arith.values import format_value

        seq = ", ".join(format_value(b) for b in betas)
        super().__init__(
            f"no terminal key polynomial after {limit} augmentations; "
            f"key values so far: [{seq}]. A bounded, non-terminating value "
            "sequence is the Case 2b / limit key polynomial regime, which is "
            "outside the supported (defectless) setting; raise --max-aug if "
            "the sequence is still growing")
        self.betas = list(betas)
        self.limit = limit


class InvariantError(ValextError, AssertionError):
    """An internal consistency check on the extension tree failed."""

    def __init__(self, message, chain=None):
        if chain is not None:
            message = f"{message}\n  chain: {chain}"
        super().__init__(message)
        self.chain = chain


class ParseError(ValextError, ValueError):
    """Malformed polynomial text."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
