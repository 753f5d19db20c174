"""Exception hierarchy shared by the library and the CLI."""


class ChuaCryptError(Exception):
    """Base class for all errors raised by chuacrypt."""


class NonFiniteState(ChuaCryptError, ArithmeticError):
    """An integration step produced a NaN or infinite state component."""

    def __init__(self, step, detail=""):
        self.step = step
        msg = f"non-finite state at step {step}"
        if detail:
            msg = f"{msg} ({detail})"
        super().__init__(msg)


class DegenerateKey(ChuaCryptError, ValueError):
    """The key does not separate the two pseudo-orbits."""


class LengthMismatch(ChuaCryptError, ValueError):
    pass


class ZeroVariance(ChuaCryptError, ValueError):
    pass


class NoNeighbors(ChuaCryptError, ValueError):
    pass


class LogOfZero(ChuaCryptError, ValueError):
    pass


class FormatError(ChuaCryptError, ValueError):
    """Malformed input file (image or key)."""


class BadMagic(FormatError):
    pass


class BadHeader(FormatError):
    pass


class UnsupportedMaxval(FormatError):
    pass


class TruncatedRaster(FormatError):
    pass


class MissingField(FormatError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"missing field {name!r}")


class DuplicateField(FormatError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"duplicate field {name!r}")


class UnknownField(FormatError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown field {name!r}")


class BadHexEncoding(FormatError):
    pass
