"""Exception hierarchy shared across the package."""


class VeridictError(Exception):
    """Base class for all errors raised by veridict."""


class CorpusError(VeridictError, ValueError):
    pass


class MissingColumnError(CorpusError):
    def __init__(self, column):
        super().__init__(f"required column {column!r} missing from CSV header")
        self.column = column


class BadLabelError(CorpusError):
    def __init__(self, row, value):
        super().__init__(f"row {row}: cannot parse label {value!r}")
        self.row = row
        self.value = value


class EmptyCorpusError(CorpusError):
    pass


class SplitError(VeridictError, ValueError):
    pass


class BadFractionError(SplitError):
    pass


class TooSmallClassError(SplitError):
    pass


class BadKError(SplitError):
    pass


class EmptyVocabularyError(VeridictError, ValueError):
    pass


class DimensionMismatchError(VeridictError, ValueError):
    pass


class EmptyTrainingSetError(VeridictError, ValueError):
    pass


class EmptyClassError(VeridictError, ValueError):
    pass


class NoConvergenceWarning(UserWarning):
    """SMO stopped at its iteration cap before meeting the KKT tolerance."""


class LexiconParseError(VeridictError, ValueError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line


class ModelFileError(VeridictError):
    pass


class VersionMismatchError(ModelFileError):
    pass


class CorruptFileError(ModelFileError):
    pass
