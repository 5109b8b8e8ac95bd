"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map failures onto its
stable exit-code contract without a lookup table.
"""


class CommonTorsionError(Exception):
    exit_code = 1


class PreconditionViolated(CommonTorsionError):
    exit_code = 4


class InvalidPrime(PreconditionViolated):
    pass


class UnsupportedPrime(PreconditionViolated):
    pass


class UndefinedGcd(PreconditionViolated):
    pass


class UndefinedInput(PreconditionViolated):
    pass


class UndefinedResultant(PreconditionViolated):
    pass


class RingMismatch(PreconditionViolated):
    pass


class SingularCurve(PreconditionViolated):
    pass


class PointNotOnCurve(PreconditionViolated):
    pass


class SingularReduction(PreconditionViolated):
    pass


class NotOrdinary(PreconditionViolated):
    pass


class BranchLociCoincide(PreconditionViolated):
    pass


class InadmissibleAuxiliaryPrime(PreconditionViolated):
    pass


class HypothesesNotVerified(PreconditionViolated):
    pass


class NotLarge(PreconditionViolated):
    pass


class InvalidArgument(PreconditionViolated):
    pass


class CoverageError(CommonTorsionError):
    """The chosen extension field does not contain the requested torsion."""


class SpecError(CommonTorsionError):
    exit_code = 2

    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.field = field


class SoundnessAlarm(CommonTorsionError):
    exit_code = 3
