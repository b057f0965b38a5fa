class FamfreqError(Exception):
    """Base class for all errors raised by famfreq."""


class IngestError(FamfreqError):
    """Corpus input could not be decoded or read."""

    def __init__(self, message, path=None, offset=None):
        self.path = path
        self.offset = offset
        where = []
        if path is not None:
            where.append(str(path))
        if offset is not None:
            where.append(f"byte {offset}")
        prefix = ":".join(where)
        self.message = message
        super().__init__(f"{prefix}: {message}" if prefix else message)

    def __reduce__(self):
        return type(self), (self.message, self.path, self.offset)


class ValidationError(FamfreqError, ValueError):
    """A data file or value violates its format or range contract."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        if path is not None and line is not None:
            message = f"{path}:{line}: {message}"
        elif path is not None:
            message = f"{path}: {message}"
        super().__init__(message)


class UndefinedStatistic(FamfreqError, ValueError):
    """A statistic is undefined for the given (degenerate) input."""


class UndefinedCorrelation(UndefinedStatistic):
    """Correlation requested on a degenerate series (too few points or zero variance)."""


class TargetNotReached(FamfreqError):
    """The reversal simulation hit its swap cap before reaching the target correlation."""

    def __init__(self, cap, correlation):
        self.cap = cap
        self.correlation = correlation
        super().__init__(f"target not reached after {cap} swaps (correlation {correlation:.6f})")
