"""Exception hierarchy.

Every precondition failure maps to CLI exit status 2; a broken internal
invariant maps to 3.
"""


class ForgeError(Exception):
    exit_code = 2

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_json(self):
        out = {"error": type(self).__name__, "message": str(self)}
        for key, value in self.details.items():
            out[key] = value if isinstance(value, (int, str, bool)) else repr(value)
        return out


class MalformedInput(ForgeError):
    pass


class UnsupportedRing(ForgeError):
    pass


class MismatchedRing(ForgeError):
    pass


class ModulusTooLarge(ForgeError):
    pass


class NormTooLarge(ForgeError):
    pass


class IncompleteTargets(ForgeError):
    pass


class NotAUnit(ForgeError):
    pass


class NotAField(ForgeError):
    pass


class NotZMod(ForgeError):
    pass


class DimensionTooLarge(ForgeError):
    pass


class NotIdempotent(ForgeError):
    pass


class _IdealError(ForgeError):
    """Failure located at a specific maximal ideal."""

    def __init__(self, message="", ideal=None, **details):
        super().__init__(message, **details)
        self.ideal = ideal

    def to_json(self):
        out = super().to_json()
        if self.ideal is not None:
            out["ideal"] = self.ideal.describe()
        return out


class PreconditionViolated(_IdealError):
    pass


class NotGenerating(_IdealError):
    pass


class OnMinorLocus(_IdealError):
    pass


class NotUnimodular(_IdealError):
    pass


class NotGeneratingModI(_IdealError):
    pass


class TooFewElements(ForgeError):
    pass


class NotSL(ForgeError):
    pass


class NotAFrame(ForgeError):
    pass


class NotInImage(ForgeError):
    pass


class NonConstantRank(ForgeError):
    pass


class WrongCharPoly(ForgeError):
    pass


class BadRoot(ForgeError):
    pass


class SearchExhausted(ForgeError):
    pass


class NotCharP(ForgeError):
    pass


class RankMismatch(ForgeError):
    pass


class NoSolution(ForgeError):
    pass


class NotCyclicP(ForgeError):
    pass


class InvariantBreach(ForgeError):
    """An internal cross-check disagreed. Never expected."""

    exit_code = 3
