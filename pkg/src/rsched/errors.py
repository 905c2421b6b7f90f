class RschedError(Exception):
    """
    Base class for every error raised by rsched
    """


class NotFound(RschedError):
    pass


class UnknownDepot(RschedError):
    def __init__(self, station: str, unit_type: str) -> None:
        super().__init__(f"no depot for unit type {unit_type!r} at station {station!r}")
        self.station = station
        self.unit_type = unit_type


class InstanceFormatError(RschedError):
    pass


class InfeasibleInstance(RschedError):
    pass


class NonConservingInput(RschedError):
    pass


class DecompositionFailure(RschedError):
    pass


class VariantMismatch(RschedError):
    pass


class MissingCutData(RschedError):
    pass


class InvalidOptions(RschedError):
    pass


class NumericalFailure(RschedError):
    pass


class NodeLimitReached(RschedError):
    """
    Raised when branch-and-bound stops at its node limit. The partial result
    (incumbent, if any, and the best bound) travels with the exception.
    """
    def __init__(self, partial) -> None:
        super().__init__(f"node limit reached after {partial.nodes} nodes")
        self.partial = partial

    @property
    def incumbent(self):
        """Objective of the best integer solution found, None if there is none."""
        return self.partial.objective

    @property
    def bound(self):
        return self.partial.bound


class LimitExceeded(RschedError):
    pass


class MissingPathBackref(RschedError):
    pass


class CutViolated(RschedError):
    pass


class InfeasibleSolution(RschedError):
    pass


class ConfigError(RschedError):
    pass


class UsageError(RschedError):
    pass
