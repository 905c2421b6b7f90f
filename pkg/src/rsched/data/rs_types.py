from enum import Enum


class CONNECTION_KIND(Enum):
    ONE_TO_ONE = "OneToOne"
    ONE_TO_TWO = "OneToTwo"
    TWO_TO_ONE = "TwoToOne"


class SIDE(Enum):
    FRONT = "front"
    REAR = "rear"


class EVENT_SIDE(Enum):
    DEP = "+"
    ARR = "-"


class NODE_KIND(Enum):
    EVENT = "Event"
    DEPOT_TIMELINE = "DepotTimeline"
    SLACK = "Slack"


class ARC_KIND(Enum):
    TRIP_SERVICE = "TripService"
    CONNECTION_CHANGE = "ConnectionChange"
    PULL_IN = "PullIn"
    PULL_OUT = "PullOut"
    PARKING = "Parking"
    DIRECT = "Direct"
    INVENTORY_DEVIATION = "InventoryDeviation"
    COMPOSITION_ARC = "CompositionArc"


class VARIANT(Enum):
    hD = "hD"
    hA = "hA"
    HD = "HD"
    HA = "HA"
    hA_CLOSURE = "hĀ"
    HA_CLOSURE = "HĀ"
    C = "C"

    @property
    def full(self) -> bool:
        return self in (VARIANT.HD, VARIANT.HA, VARIANT.HA_CLOSURE, VARIANT.C)

    @property
    def direct(self) -> bool:
        return self in (VARIANT.hA, VARIANT.HA, VARIANT.hA_CLOSURE, VARIANT.HA_CLOSURE)

    @property
    def closure(self) -> bool:
        return self in (VARIANT.hA_CLOSURE, VARIANT.HA_CLOSURE)

    @classmethod
    def parse(cls, text: str) -> "VARIANT":
        aliases = {"hAbar": "hĀ", "HAbar": "HĀ", "hA-bar": "hĀ", "HA-bar": "HĀ"}
        text = aliases.get(text, text)
        for v in cls:
            if v.value == text:
                return v
        raise ValueError(f"unknown variant {text!r}")


class CLOSURE_MODE(Enum):
    DECLARED = "declared"
    CLOSURE = "closure"


class SOLVE_STATUS(Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"
    NODE_LIMIT = "NodeLimit"


class VERDICT(Enum):
    EQUALITY_HOLDS = "EqualityHolds"
    TOLERANCE_EQUAL = "EqualityHolds(tol)"
    INEQUALITY_HOLDS = "InequalityHolds"
    STRICT_GAP = "StrictGap"
    VIOLATION = "VIOLATION"


class SENSE(Enum):
    EQ = "="
    GE = ">="
    LE = "<="
