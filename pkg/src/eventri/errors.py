"""Exception hierarchy.

``InvalidInput`` subclasses mean the input itself is malformed (CLI exit 1);
``PreconditionError`` subclasses mean a well-formed input fails a mathematical
hypothesis of the requested operation (CLI exit 2).
"""

from __future__ import annotations


class EventriError(Exception):
    def to_json(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class InvalidInput(EventriError, ValueError):
    pass


class InvalidTriangulation(InvalidInput):
    """Gluing table violates a triangulation axiom.

    ``kind`` is one of ``syntax``, ``dimension``, ``involution``, ``unglued``,
    ``self_gluing``, ``disconnected``.
    """

    def __init__(self, kind: str, message: str, simplex: int | None = None, facet: int | None = None):
        super().__init__(message)
        self.kind = kind
        self.simplex = simplex
        self.facet = facet

    def to_json(self) -> dict:
        out = super().to_json()
        out["kind"] = self.kind
        if self.simplex is not None:
            out["simplex"] = self.simplex
        if self.facet is not None:
            out["facet"] = self.facet
        return out


class InvalidMatrix(InvalidInput):
    pass


class PreconditionError(EventriError):
    pass


class NotEven(PreconditionError):
    """Some (n-2)-orbit has odd degree; ``witness`` is that orbit's record."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            f"triangulation is not even: {witness.dim}-face orbit {witness.index} has degree {witness.degree}"
        )

    def to_json(self) -> dict:
        out = super().to_json()
        out["witness"] = {
            "orbit": self.witness.index,
            "degree": self.witness.degree,
            "incidences": [[s, list(f)] for s, f in self.witness.incidences],
        }
        return out


class Dim2Unsupported(PreconditionError):
    pass


class UnsupportedDimension(PreconditionError):
    pass


class NonTrivialImage(PreconditionError):
    def __init__(self, image):
        self.image = image
        super().__init__(f"canonical image is non-trivial ({image.label}, order {image.order})")


class RelatorViolation(PreconditionError):
    def __init__(self, orbit: int, perm):
        self.orbit = orbit
        self.perm = perm
        super().__init__(f"action is not trivial around (n-2)-orbit {orbit}: walk-around acts as {perm}")


class WeightsNotZeroOne(PreconditionError):
    pass


class InadmissibleSolution(PreconditionError):
    pass


class NonSquare(PreconditionError):
    pass


class NotSymmetric(PreconditionError):
    pass


class NonzeroDiagonal(PreconditionError):
    pass


class NonsingularInput(PreconditionError):
    pass
