"""Exception hierarchy shared by all modules."""


class ToricError(ValueError):
    """Base class for every error raised by toricsub."""


class ZeroVector(ToricError):
    pass


class RankDeficient(ToricError):
    pass


class NotUnimodular(ToricError):
    def __init__(self, det):
        self.det = det
        super().__init__(f"matrix is not unimodular (det={det})")


class DimensionMismatch(ToricError):
    pass


class NotAVertex(ToricError):
    pass


class NonRationalDirection(ToricError):
    pass


class NotFullDimensional(ToricError):
    pass


class UnknownLabel(ToricError, KeyError):
    def __str__(self):
        return ToricError.__str__(self)


class DomainViolation(ToricError):
    pass


class ZeroCoordinate(ToricError):
    pass


class NotPrimitive(ToricError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"spanning vector {index} is not primitive")


class Dependent(ToricError):
    pass


class NonPositiveOffset(ToricError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"offset entry {index} must be a positive rational")


class NotAVertexImage(ToricError):
    pass


class NotSmooth(ToricError):
    pass


class DimensionUnsupported(ToricError):
    pass


class SceneSyntaxError(ToricError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class SceneSemanticError(ToricError):
    pass
