"""Exception hierarchy shared by every module."""


class KnotError(Exception):
    """Base class for all errors raised by :mod:`lagknot`."""


class ParseError(KnotError, ValueError):
    """Malformed text input.

    ``offset`` is a byte offset for single-line grammars, ``line`` a 1-based
    line number for line-oriented formats; either may be ``None``.
    """

    def __init__(self, message, offset=None, line=None, expected=None):
        self.offset = offset
        self.line = line
        self.expected = expected
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        text = message
        if expected:
            text += f" (expected {expected})"
        if where:
            text = f"{', '.join(where)}: {text}"
        super().__init__(text)


class NonDivisible(KnotError, ArithmeticError):
    pass


class ZeroPolynomial(KnotError, ValueError):
    pass


class InvalidDiagram(KnotError, ValueError):
    """A diagram failed structural validation; ``diagnostics`` lists why."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class EmptyDiagram(KnotError, ValueError):
    pass


class EmptyLink(KnotError, ValueError):
    pass


class MultiComponent(KnotError, ValueError):
    pass


class NonRealizable(KnotError, ValueError):
    pass


class StrandCountError(KnotError, ValueError):
    pass


class UnboundParameter(KnotError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ClosureError(KnotError, ValueError):
    pass


class DomainError(KnotError, ValueError):
    pass


class InvalidFront(KnotError, ValueError):
    pass


class InvalidPosition(KnotError, IndexError):
    pass


class NotATorusKnot(KnotError, ValueError):
    pass


class EngineError(KnotError, RuntimeError):
    """The skein engine exceeded its recursion budget; indicates a bug."""
