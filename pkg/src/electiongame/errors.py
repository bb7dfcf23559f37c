"""Exception hierarchy shared by every module."""


class ElectionGameError(Exception):
    """Base class; ``code`` is the machine-readable name used by the CLI."""

    @property
    def code(self):
        return type(self).__name__


class ValidationError(ElectionGameError, ValueError):
    pass


class NegativeUtility(ValidationError):
    pass


class SocialUtilityExceedsBeta(ValidationError):
    pass


class UnsortedCandidates(ValidationError):
    pass


class EmptyParty(ValidationError):
    pass


class TooFewParties(ValidationError):
    pass


class ParseError(ElectionGameError, ValueError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.field = field


class NotEgoistic(ElectionGameError):
    pass


class NotStronglyEgoistic(ElectionGameError):
    pass


class NonMonotoneWp(ElectionGameError):
    pass


class ProfileSpaceTooLarge(ElectionGameError):
    pass


class CoalitionSpaceTooLarge(ElectionGameError):
    pass


class MemberIsSingleton(ElectionGameError):
    pass


class TooFewVariables(ElectionGameError, ValueError):
    pass


class InfeasibleConfig(ElectionGameError, ValueError):
    pass
