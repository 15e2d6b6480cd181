"""Exception types raised by the lobbying toolkit."""


class LobbyError(Exception):
    """Base class. ``field`` names the offending input location when known."""

    def __init__(self, message, field=None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class ValidationError(LobbyError, ValueError):
    pass


class ShapeMismatch(ValidationError):
    pass


class NonMonotoneCost(ValidationError):
    pass


class NonzeroBaseCost(ValidationError):
    pass


class MissingAgendaSideCost(ValidationError):
    pass


class WrongDirection(LobbyError, ValueError):
    pass


class ArithmeticOverflow(LobbyError, OverflowError):
    pass


class Infeasible(LobbyError):
    """Some issue cannot be won even with every voter fully bribed."""

    def __init__(self, message, issue=None, field=None):
        self.issue = issue
        super().__init__(message, field)


class InfeasibleIssue(Infeasible):
    pass


class InstanceTooLarge(LobbyError):
    pass


class ParseError(LobbyError, ValueError):
    pass
