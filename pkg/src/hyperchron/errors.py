"""Exception types raised by hyperchron.

Every error derives from :class:`HyperchronError`, which is itself a
``ValueError`` so callers that only care about bad input can catch that.
"""


class HyperchronError(ValueError):
    pass


class NonHermitianInput(HyperchronError):
    def __init__(self, max_asymmetry, message=None):
        self.max_asymmetry = float(max_asymmetry)
        super().__init__(
            message or f"matrix is not weakly Hermitian (max |M - M^H| = {self.max_asymmetry:.3e})"
        )


class WrongArity(HyperchronError):
    pass


class WrongDimension(HyperchronError):
    pass


class DimensionMismatch(HyperchronError):
    pass


class NotTimelike(HyperchronError):
    pass


class NotTimelikeTangent(NotTimelike):
    def __init__(self, parameter, label):
        self.parameter = float(parameter)
        self.label = label
        super().__init__(f"tangent is {label} at parameter {self.parameter!r}, not FutureTimelike")


class SingularSample(HyperchronError):
    pass


class NotUnimodular(HyperchronError):
    pass


class TracefulGenerator(HyperchronError):
    pass


class TachyonicMomentum(HyperchronError):
    pass


class MasslessSystem(HyperchronError):
    pass


class SingularCorrelation(HyperchronError):
    pass


class ZeroInput(HyperchronError):
    pass


class InvalidDensityMatrix(HyperchronError):
    pass
