"""Exception hierarchy.

``DataError`` subclasses describe problems with the input series or files and
map to CLI exit code 3; ``UsageError`` subclasses describe bad parameters and
map to exit code 2.
"""


class MtaError(Exception):
    pass


class DataError(MtaError):
    pass


class UsageError(MtaError):
    pass


class InvariantViolation(MtaError):
    """An internal consistency check failed (exit code 4)."""


class SeriesTooShort(DataError):
    pass


class WindowTooLarge(DataError):
    pass


class ParseError(DataError):
    def __init__(self, path, row, column, value):
        super().__init__(f"{path}: row {row}, column {column}: cannot parse {value!r} as a number")
        self.path, self.row, self.column, self.value = path, row, column, value


class EmptyAfterSlice(DataError):
    pass


class SeriesTooLong(DataError):
    pass


class PlacementFailed(DataError):
    pass


class TooFewOccurrences(DataError):
    pass


class InvalidAlphabetSize(UsageError):
    pass


class InvalidConfig(UsageError):
    pass


class IndivisibleLength(UsageError):
    pass


class GenerationTooLong(MtaError):
    """No valid start position exists for words of the requested generation."""


class GenerationMismatch(MtaError):
    pass


class LengthMismatch(MtaError):
    pass


class EmptyTemplate(MtaError):
    pass
