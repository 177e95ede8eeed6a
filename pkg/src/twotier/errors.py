"""Exception hierarchy shared by all modules."""


class TwoTierError(Exception):
    """Base class for errors raised by twotier."""


class DataError(TwoTierError, ValueError):
    """Malformed, inconsistent or insufficient input data."""


class DegenerateTargetError(TwoTierError, ValueError):
    """A score is undefined for the given targets (constant or single-class)."""


class NonPositiveDenominatorError(TwoTierError, ValueError):
    """A coefficient's denominator score is zero or negative."""
