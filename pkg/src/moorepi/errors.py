"""Exceptions shared across modules.  Fact gaps map to CLI exit code 2."""
from __future__ import annotations


class FactGap(Exception):
    """Base class for errors caused by missing or uncurated data."""


class MissingFact(FactGap):
    def __init__(self, what: str, where: str = ""):
        self.what = what
        self.where = where
        super().__init__(f"MissingFact: {what}" + (f" in {where}" if where else ""))


class NotCurated(FactGap):
    def __init__(self, what: str):
        self.what = what
        super().__init__(f"NotCurated: {what}")


class RangeExceeded(FactGap):
    def __init__(self, what: str):
        super().__init__(f"RangeExceeded: {what}")


class UnresolvedExtension(FactGap):
    def __init__(self, target: str, candidates: list[str]):
        self.candidates = candidates
        super().__init__(f"UnresolvedExtension: {target} has candidates {', '.join(candidates)}")


class DimensionMismatch(ValueError):
    pass


class NotComposable(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"ParseError at line {line}: {reason}")


class ValidationError(ValueError):
    def __init__(self, record: str, reason: str):
        self.record = record
        self.reason = reason
        super().__init__(f"ValidationError in {record}: {reason}")


class AlphabetMismatch(ValueError):
    pass
