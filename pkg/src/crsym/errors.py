"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit code 1); a fired
consistency assertion is :class:`InternalInconsistency` (exit code 2).
"""


class CRSymError(Exception):
    pass


class InputError(CRSymError, ValueError):
    pass


class ParseError(InputError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if text else ""
        super().__init__(f"{message}{where}")


class NonRealModel(InputError):
    pass


class PluriharmonicInput(InputError):
    pass


class NoFiniteMultitype(InputError):
    pass


class NotHomogeneous(InputError):
    pass


class DegenerateModel(InputError):
    pass


class InvalidParams(InputError):
    pass


class DegenerateInstance(InputError):
    pass


class AntiholomorphicCoefficient(InputError):
    pass


class NotMonomialDiagonal(InputError):
    pass


class NonlinearRotation(InputError):
    pass


class NotAnXPair(InputError):
    pass


class InternalInconsistency(CRSymError, AssertionError):
    pass
