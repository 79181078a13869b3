"""Exception types raised across the package."""


class EghError(Exception):
    """Base class for every error raised by this package."""


class ContextMismatchError(EghError, ValueError):
    pass


class ParseError(EghError, ValueError):
    pass


class HomogeneityError(ParseError):
    """A form mixes monomials of different degrees."""


class DegreeMismatchError(EghError, ValueError):
    pass


class CapacityError(EghError, ValueError):
    """More monomials were requested than are available."""


class InputError(EghError, ValueError):
    pass


class NonMinimalGenerationError(InputError):
    """Extra generators are dependent modulo the rest of the ideal."""


class UnsupportedShapeError(InputError):
    pass


class DegenerateInputError(InputError):
    pass


class GenerationFailure(EghError, RuntimeError):
    """Rejection sampling ran out of attempts."""


class NoLppIdealError(EghError):
    """No lex-plus-powers ideal realizes the requested Hilbert function.

    ``degree`` is the first degree where the greedy construction got stuck,
    ``achievable`` the largest Hilbert function value an LPP ideal agreeing
    in lower degrees can have there, and ``target`` the requested value.
    """

    def __init__(self, degree: int, achievable: int, target: int):
        super().__init__(
            f"no LPP ideal: degree {degree} needs Hf={target} but at most {achievable} is reachable"
        )
        self.degree = degree
        self.achievable = achievable
        self.target = target
