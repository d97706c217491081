"""Error hierarchy. Every error knows the CLI exit code it terminates with."""


class ExitCode:
    SUCCESS = 0
    USAGE = 1
    SYNTAX = 2
    SEMANTIC = 3
    IO = 4
    STORE = 5


class CasCostError(Exception):
    exit_code = ExitCode.USAGE

    def render(self, path=None):
        """Format the error as a single diagnostic line."""
        prefix = f"{path}: " if path else ""
        return f"{prefix}error: {self}"


class UsageError(CasCostError):
    exit_code = ExitCode.USAGE


class SpannedError(CasCostError):
    """An error attached to a location in CAS+ source."""

    def __init__(self, span, message):
        super().__init__(message)
        self.span = span
        self.message = message

    def __str__(self):
        return f"{self.span.line}:{self.span.column}: {self.message}"

    def render(self, path=None):
        prefix = f"{path}:" if path else ""
        return f"{prefix}{self.span.line}:{self.span.column}: error: {self.message}"


class LexError(SpannedError):
    exit_code = ExitCode.SYNTAX

    def __init__(self, span, char):
        self.char = char
        super().__init__(span, f"unexpected character {char!r}")


class ParseError(SpannedError):
    exit_code = ExitCode.SYNTAX

    def __init__(self, span, expected, found):
        self.expected = expected
        self.found = found
        super().__init__(span, f"expected {expected}, found {found}")


class MissingSection(ParseError):
    def __init__(self, span, name, found="end of input"):
        self.name = name
        super().__init__(span, f"section '{name}'", found)


class SemanticError(SpannedError):
    exit_code = ExitCode.SEMANTIC

    def __init__(self, span, description):
        self.description = description
        super().__init__(span, description)


class ModelFormatError(CasCostError):
    exit_code = ExitCode.USAGE


class ModelValueError(CasCostError):
    exit_code = ExitCode.USAGE


class ChartError(CasCostError):
    exit_code = ExitCode.USAGE


class StoreError(CasCostError):
    exit_code = ExitCode.STORE


class NotFound(StoreError):
    def __init__(self, names):
        self.names = list(names)
        super().__init__("no stored result for " + ", ".join(repr(n) for n in self.names))


class SlugCollision(StoreError):
    def __init__(self, slug, existing, incoming):
        self.slug = slug
        super().__init__(
            f"protocols {existing!r} and {incoming!r} both map to result file slug {slug!r}"
        )


class EmptySet(StoreError):
    def __init__(self):
        super().__init__("cannot compare an empty comparison set")
