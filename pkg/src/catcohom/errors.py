"""Exception hierarchy.

Every user-facing failure raises a named subclass of :class:`CatcohomError`
so callers (and the CLI) can map failures to structured diagnostics.
``InternalInvariantError`` is deliberately *not* a ``CatcohomError``: it
signals a broken internal postcondition, i.e. a bug, and maps to a distinct
process exit code.
"""


class CatcohomError(Exception):
    """Base class for validation and usage errors."""


class InternalInvariantError(Exception):
    """A verified internal postcondition failed; this is a bug by contract."""


class MalformedInput(CatcohomError):
    """Raw tables or JSON that are not index- or name-consistent."""


# fincat
class MissingIdentity(CatcohomError):
    pass


class NonAssociative(CatcohomError):
    pass


class CompositionDomainMismatch(CatcohomError):
    pass


class NotAPartialOrder(CatcohomError):
    pass


class NotAMonoid(CatcohomError):
    pass


class NotAFunctor(CatcohomError):
    pass


class ObjectNotInTarget(CatcohomError):
    pass


# exactalg
class DegreeOutOfRange(CatcohomError):
    pass


class NonFunctorialDiagram(CatcohomError):
    pass


# simplex
class NotOrderPreserving(CatcohomError):
    pass


class InvalidSimplexMorphism(CatcohomError):
    pass


# coeff
class NonFunctorialData(CatcohomError):
    pass


class NotALocalization(CatcohomError):
    pass


class IncompleteTables(CatcohomError):
    pass


class CofaceRelationViolation(CatcohomError):
    pass


class BeyondTruncation(CatcohomError):
    pass


# complexes
class VarianceMismatch(CatcohomError):
    pass


class UnsupportedProvenance(CatcohomError):
    pass


class NaturalityViolation(CatcohomError):
    pass


# kan / fibration
class UnsupportedCoefficientKind(CatcohomError):
    pass


class RingUnsupported(CatcohomError):
    pass


class UnsupportedCoefficientShape(CatcohomError):
    pass


class NonStrictFunctor(CatcohomError):
    pass
