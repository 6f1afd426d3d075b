"""Exception hierarchy shared by every analysis module."""


class LabelSpaceError(Exception):
    """Base class for all analyzer errors."""


class GraphParseError(LabelSpaceError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(LabelSpaceError):
    """Raised when a decider is handed a graph that violates the standing assumptions."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"graph fails validation: {report.summary()}")


class ResourceError(LabelSpaceError):
    """A configured cap was exceeded; results are never silently truncated."""

    def __init__(self, what, cap, flag):
        self.cap = cap
        self.flag = flag
        super().__init__(f"{what} exceeded cap {cap} (raise it with {flag})")


class UndefinedResultError(LabelSpaceError):
    pass


class FamilyError(LabelSpaceError):
    """A set fell outside the working accommodating family."""
