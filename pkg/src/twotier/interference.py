"""Complementary pairs, interfering features and the interference coefficient."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonPositiveDenominatorError


def is_complementary(t1: float, t2: float, t12: float) -> bool:
    """True when the pair scores strictly better than either feature alone."""
    return t12 > max(t1, t2)


def is_interfering(t12: float, t12s: float) -> bool:
    """True when adding the third feature strictly lowers the pair's score."""
    return t12 > t12s


def interference_coefficient(t12: float, t12s: float) -> float:
    """Ratio of the pair score to the triple score; > 1 means the third feature interferes."""
    if not t12s > 0:
        raise NonPositiveDenominatorError(
            f"triple score {t12s} is not positive; the coefficient is undefined")
    return t12 / t12s


@dataclass(frozen=True)
class PairFinding:
    f1: int
    f2: int
    t1: float
    t2: float
    t12: float

    def __post_init__(self):
        if self.f1 >= self.f2:
            raise ValueError(f"pair must be ordered f1 < f2, got ({self.f1}, {self.f2})")

    @property
    def complementary(self) -> bool:
        return is_complementary(self.t1, self.t2, self.t12)


@dataclass(frozen=True)
class TripleFinding:
    f1: int
    f2: int
    s: int
    t12: float
    t12s: float

    def __post_init__(self):
        if self.s in (self.f1, self.f2):
            raise ValueError("the interfering feature must differ from the pair")

    @property
    def interfering(self) -> bool:
        return is_interfering(self.t12, self.t12s)

    @property
    def flagged(self) -> bool:
        return not self.t12s > 0

    @property
    def coefficient(self) -> float | None:
        return None if self.flagged else interference_coefficient(self.t12, self.t12s)
