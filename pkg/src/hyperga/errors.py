"""Exception hierarchy shared by the algebra, geometry, and parser layers."""


class HyperGAError(Exception):
    """Base class for every error raised by this package."""


class AlgebraMismatch(HyperGAError, ValueError):
    pass


class GradeError(HyperGAError, ValueError):
    """An operation received a multivector of the wrong grade structure."""


class NullObject(HyperGAError, ValueError):
    """The object has (numerically) zero pseudo-norm and cannot be normalized."""


class NotInvertible(HyperGAError, ValueError):
    pass


# geometry layer


class GeometryError(HyperGAError):
    """Base for errors that signal an invalid geometric configuration."""


class PlueckerViolation(GeometryError, ValueError):
    pass


class NullOrImproperInput(GeometryError, ValueError):
    pass


class ImproperInput(GeometryError, ValueError):
    pass


class MeetNotProper(GeometryError, ValueError):
    pass


class NotHyperparallel(GeometryError, ValueError):
    pass


class NullMirror(GeometryError, ValueError):
    pass


class NotRightAngled(GeometryError, ValueError):
    pass


class NullVertexAtP(GeometryError, ValueError):
    pass


class DegenerateTriangle(GeometryError, ValueError):
    pass


class LinesIntersect(GeometryError, ValueError):
    pass


class WrongGeneratorClass(GeometryError, ValueError):
    pass


class WeightVanishes(GeometryError, ValueError):
    pass


# parser layer


class ParseError(HyperGAError, ValueError):
    """Malformed text input. ``position`` is a 0-based character offset when known."""

    def __init__(self, message: str, position: int | None = None, line: int | None = None):
        self.message = message
        self.position = position
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"col {position + 1}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class MVSyntaxError(ParseError):
    pass


class UnknownGenerator(ParseError):
    pass


class DuplicateGeneratorInBlade(ParseError):
    pass


class UnknownQueryOp(ParseError):
    pass


class UnboundName(ParseError):
    pass


class UnknownCase(HyperGAError, KeyError):
    pass
