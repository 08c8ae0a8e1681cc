"""Exception hierarchy.

``InputError`` subclasses signal bad user input (CLI exit code 1);
``InvariantViolation`` subclasses signal that two independent computations
disagreed or a proven property failed (CLI exit code 2).
"""


class SRingError(Exception):
    """Base class for all package errors."""


class InputError(SRingError, ValueError):
    pass


class InvariantViolation(SRingError, AssertionError):
    pass


# ring validation
class NotAPartition(InputError):
    pass


class MissingIdentityBlock(InputError):
    pass


class NotInverseClosed(InputError):
    pass


class NotModuleClosed(InputError):
    def __init__(self, msg, triple=None):
        super().__init__(msg)
        self.triple = triple


class NonUnitMultiplier(InputError):
    pass


class NotCoprime(InputError):
    pass


class ModulusMismatch(InputError):
    pass


class SectionNotNested(InputError):
    pass


class RestrictionMismatch(InputError):
    pass


class NotASection(InputError):
    pass


class NotADivisor(InputError):
    pass


class NotAdmissible(InputError):
    pass


class NotQuasidense(InputError):
    pass


class NotSingular(InputError):
    pass


class NonCyclotomicSection(InputError):
    def __init__(self, section):
        super().__init__(f"restriction to section {tuple(section)} is not cyclotomic")
        self.section = section


class BoundExceeded(InputError):
    pass


class SearchBudgetExceeded(SRingError):
    pass


# fatal cross-check failures
class InternalAxiomFailure(InvariantViolation):
    pass


class AlgorithmDisagreement(InvariantViolation):
    pass


class SolverDisagreement(InvariantViolation):
    pass


class ConstructionAmbiguous(InvariantViolation):
    pass
