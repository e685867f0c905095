"""Exception hierarchy.

Every error raised by the library derives from :class:`SingularizeError`,
which itself is a :class:`ValueError`, so callers can catch broadly or
pick the precise failure.
"""

from __future__ import annotations


class SingularizeError(ValueError):
    """Base class for all library errors."""


# complex-core
class MalformedInput(SingularizeError):
    pass


class NotASurface(SingularizeError):
    pass


class NonOrientable(SingularizeError):
    pass


class DisconnectedInput(SingularizeError):
    pass


class UnsupportedSubdivision(SingularizeError):
    pass


class InvalidCut(SingularizeError):
    pass


# builders
class DegenerateGrid(SingularizeError):
    pass


class NoSuchLoop(SingularizeError):
    pass


class NameClash(SingularizeError):
    pass


class CannotCoarsen(SingularizeError):
    pass


# loops
class NotSimple(SingularizeError):
    pass


class NotACycle(SingularizeError):
    pass


# surgery
class OverlapError(SingularizeError):
    pass


class ArcMismatch(SingularizeError):
    pass


class DegenerateArc(SingularizeError):
    pass


class LengthMismatch(SingularizeError):
    pass


class SelfIdentification(SingularizeError):
    pass


# verify
class CannotBeConnected(SingularizeError):
    pass


class OracleTimeout(SingularizeError):
    """Raised when the genus oracle exceeds its enumeration budget."""


# pipeline
class NoGeometry(SingularizeError):
    pass


class ScriptError(SingularizeError):
    """A located diagnostic for a singularization script."""

    def __init__(self, message, line, column=1, suggestion=None, source="<script>"):
        self.message = message
        self.line = line
        self.column = column
        self.suggestion = suggestion
        self.source = source
        super().__init__(self.render())

    def render(self):
        text = f"{self.source}:{self.line}:{self.column}: error: {self.message}"
        if self.suggestion:
            text += f" (did you mean '{self.suggestion}'?)"
        return text
