from src.conf import messages


class PartySelectionError(Exception):
    """
    Base class for every error the library raises on purpose.

    ``exit_code`` is what the command line returns when the error escapes a command,
    ``status_code`` what the HTTP layer answers with.
    """
    exit_code = 2
    status_code = 422

    def __init__(self, message: str, detail: str | None = None):
        self.message = message
        self.detail = detail
        super().__init__(f"{message}: {detail}" if detail else message)


class RosterMismatchError(PartySelectionError):
    pass


class InvalidProfileError(PartySelectionError):
    def __init__(self, message: str, detail: str | None = None, line: int | None = None,
                 column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            detail = f"{where}: {detail}" if detail else where
        super().__init__(message, detail)


class InvalidThresholdError(PartySelectionError):
    pass


class InfeasibleStartError(PartySelectionError):
    def __init__(self, detail: str | None = None):
        super().__init__(messages.INFEASIBLE_START, detail)


class ApportionmentError(PartySelectionError):
    pass


class SurveyFormatError(PartySelectionError):
    def __init__(self, message: str, detail: str | None = None, row: int | None = None):
        self.row = row
        if row is not None:
            detail = f"row {row}: {detail}" if detail else f"row {row}"
        super().__init__(message, detail)


class ContingencyError(PartySelectionError):
    pass


class UnsupportedError(PartySelectionError):
    pass


class GuardExceededError(PartySelectionError):
    exit_code = 3
    status_code = 413

    def __init__(self, parties: int, limit: int):
        self.parties = parties
        self.limit = limit
        super().__init__(messages.GUARD_EXCEEDED, f"{parties} parties, limit {limit}")


def guard(parties: int, limit: int) -> None:
    """
    Raise :class:`GuardExceededError` when an exhaustive computation would run over ``limit`` parties.

    >>> guard(3, 5)
    >>> guard(6, 5)
    Traceback (most recent call last):
    ...
    src.entity.exceptions.GuardExceededError: Too many parties for exhaustive computation: 6 parties, limit 5
    """
    if parties > limit:
        raise GuardExceededError(parties, limit)
