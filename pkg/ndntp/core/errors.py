from __future__ import annotations


class NdntpError(Exception):
    """Base class for every failure raised by the ndntp package."""


class InvalidDecoration(NdntpError, ValueError):
    pass


class NotNdntp(NdntpError, ValueError):
    pass


class MalformedComponent(NdntpError, ValueError):
    pass


class NegativeDelay(NdntpError, ValueError):
    def __init__(self, offset: int, delay: int) -> None:
        super().__init__(f"computed round-trip delay {delay} us is negative")
        self.offset = offset
        self.delay = delay


class NoRoute(NdntpError, LookupError):
    pass


class BrokenLabel(NdntpError, LookupError):
    pass


class EmptyBuffer(NdntpError, RuntimeError):
    pass


class NoUsableSamples(NdntpError, RuntimeError):
    def __init__(self, message: str, discarded: tuple = ()) -> None:
        super().__init__(message)
        self.discarded = tuple(discarded)


class PastEvent(NdntpError, RuntimeError):
    pass


class ScenarioParseError(NdntpError, ValueError):
    def __init__(self, message: str, *, line: int | None = None, key: str | None = None) -> None:
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.key = key


class ScenarioValidationError(NdntpError, ValueError):
    pass


class UnknownScenario(NdntpError, LookupError):
    pass
