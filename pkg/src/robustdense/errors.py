"""Exceptions shared across the package."""


class ParseError(ValueError):
    """Malformed edge-list or results input, annotated with the source location."""

    def __init__(self, message, *, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"line {line}: "
        super().__init__(where + message if where else message)


class BudgetExceededError(RuntimeError):
    """A sampling run would exceed the per-edge oracle call cap."""

    def __init__(self, edge, required, cap):
        self.edge = int(edge)
        self.required = int(required)
        self.cap = int(cap)
        super().__init__(
            f"edge {self.edge} needs {self.required} oracle calls, "
            f"above the cap of {self.cap}"
        )
