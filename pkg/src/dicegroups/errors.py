"""Exception hierarchy shared by all modules."""


class DiceError(ValueError):
    """Base class for every error raised by this package."""


class ShapeError(DiceError):
    """Points, words or vertices that do not fit the expected cube shape."""


class NonPrimeError(DiceError):
    pass


class CapacityError(DiceError):
    """A cube is too large to enumerate."""


class DegenerateLine(DiceError):
    """The zero vector spans no line."""


class ConfigSyntaxError(DiceError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class ChainError(DiceError):
    """Number of defining points at a level differs from the next rank."""


class IdentityPointError(DiceError):
    pass


class DuplicatePointError(DiceError):
    pass


class LevelMismatch(ShapeError):
    pass


class PathShapeError(ShapeError):
    def __init__(self, depth: int, message: str = ""):
        super().__init__(f"vertex letter at depth {depth} has the wrong shape" + (f": {message}" if message else ""))
        self.depth = depth


class WordSyntaxError(DiceError):
    pass


class ConfigError(DiceError):
    """Bad engine limits."""
