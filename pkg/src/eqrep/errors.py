"""Exception types shared across the package."""


class PreconditionViolated(ValueError):
    """A doubling step was attempted with a translation that collides.

    Raised when the translation ``m`` lies in the symmetric difference set
    (A - B) union (B - A) of the two base sets.  ``witness`` is a pair
    ``(a, b)`` with ``a`` in A, ``b`` in B and ``|a - b| == m``.
    """

    def __init__(self, m, witness, step=None):
        self.m = m
        self.witness = witness
        self.step = step
        a, b = witness
        where = f" at step {step}" if step is not None else ""
        super().__init__(
            f"translation m={m} collides{where}: witness pair "
            f"(a={a}, b={b}) with |a - b| = {m}"
        )


class BoundExceeded(ValueError):
    """A search or build parameter is beyond the supported maximum."""


class SetFileError(ValueError):
    """A set file is malformed; ``line`` is the 1-based offending line."""

    def __init__(self, path, line, message):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")
