"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed input text.  Carries 1-based line (and optional field) info."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            loc = f"line {line}" if column is None else f"line {line}, field {column}"
            message = f"{loc}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(ValueError):
    """A structurally invalid mathematical object was constructed or requested."""


class CapExceededError(RuntimeError):
    """Subset enumeration would exceed the configured cap."""

    def __init__(self, r, cap):
        super().__init__(
            f"arrangement has {r} hyperplanes, enumeration cap is {cap} "
            f"(raise the cap to enumerate 2^{r} subsets)"
        )
        self.r = r
        self.cap = cap


class ConsistencyError(RuntimeError):
    """An internal cross-check failed.

    This means an assumption the pipeline relies on (row exactness, position
    of the surviving entry, degeneration, oracle agreement) was violated for
    the given input; it is always reported loudly, never swallowed.
    """
