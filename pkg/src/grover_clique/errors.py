"""Exception hierarchy shared by every module of the package."""


class CliqueError(Exception):
    """Base class for all package errors."""


class DomainError(CliqueError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ResourceLimitError(CliqueError, RuntimeError):
    """A request exceeds an enumeration or memory guard."""


class ParseError(CliqueError, ValueError):
    """Malformed textual input (DIMACS graph or circuit file).

    ``lineno`` is 1-based and ``None`` when the problem is not tied to a line.
    """

    def __init__(self, message, lineno=None, line=None):
        self.lineno = lineno
        self.line = line
        if lineno is not None:
            message = f"line {lineno}: {message}"
            if line is not None:
                message = f"{message} ({line.strip()!r})"
        super().__init__(message)
