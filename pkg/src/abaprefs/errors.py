"""Exception hierarchy shared by every module."""


class AbaError(Exception):
    """Base class for all errors raised by this package."""


class InvalidFramework(AbaError):
    def __init__(self, report):
        self.report = report
        super().__init__("invalid framework: " + "; ".join(str(v) for v in report.violations))


class UnknownAssumption(AbaError, ValueError):
    pass


class InconsistencyError(AbaError):
    """Transitive closure of a preference set contradicts one of its strict preferences."""


class NotConflictFree(AbaError):
    pass


class ResourceError(AbaError):
    """Enumeration refused because the instance exceeds the configured cap."""


class CapExceeded(ResourceError):
    pass


class ParseError(AbaError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))
