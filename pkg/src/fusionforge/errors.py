"""Exception hierarchy. Every error carries enough context to locate the offending entry."""


class FusionForgeError(ValueError):
    pass


# modular data
class NonIntegerFusion(FusionForgeError):
    pass


class NegativeFusion(FusionForgeError):
    pass


class NonRealQdim(FusionForgeError):
    pass


class NotSimpleCurrent(FusionForgeError):
    pass


class BadTwist(FusionForgeError):
    pass


class BadQdim(FusionForgeError):
    pass


class NotSelfDual(FusionForgeError):
    pass


class UnknownLabel(FusionForgeError):
    pass


class SchemaError(FusionForgeError):
    pass


# families
class NotCoprime(FusionForgeError):
    pass


class NotEven(FusionForgeError):
    pass


class NotPositiveDefinite(FusionForgeError):
    pass


class NotSymmetric(FusionForgeError):
    pass


class DescriptorError(FusionForgeError):
    pass


# extensions
class NotInvertible(FusionForgeError):
    pass


class NontrivialMutualMonodromy(FusionForgeError):
    pass


class BadTwistPattern(FusionForgeError):
    pass


class UnsupportedGroupOrder(FusionForgeError):
    pass


class InternalInconsistency(FusionForgeError):
    pass


class NonUniqueMinimum(FusionForgeError):
    pass


class VanishingDenominator(FusionForgeError):
    pass


class FixedPointPresent(FusionForgeError):
    pass


class WrongCase(FusionForgeError):
    pass


class NotIntegralGlue(FusionForgeError):
    pass


# cosets
class InconsistentAction(FusionForgeError):
    pass


class NonIntegerCount(FusionForgeError):
    pass


class WeightMismatch(FusionForgeError):
    pass


class AxiomFailure(FusionForgeError):
    pass


# q-series
class TruncationTooShort(FusionForgeError):
    pass


class DivisionByVanishingLead(FusionForgeError):
    pass


class NotUpperHalfPlane(FusionForgeError):
    pass


class ExpressionError(FusionForgeError):
    pass
