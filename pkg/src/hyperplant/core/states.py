from enum import Enum


class Model(str, Enum):
    NULL = "null"
    PLANTED = "planted"
    AUX = "aux"


class Decision(str, Enum):
    NULL = "null"
    PLANTED = "planted"


class Regime(str, Enum):
    EASY = "easy"
    HARD = "hard"
    BOUNDARY = "boundary"


class StatisticKind(str, Enum):
    EDGE = "edge"
    MOTIF = "motif"


class LdlrMethod(str, Enum):
    EXACT = "exact-formula"
    BRUTEFORCE = "brute-force"
    CONDITIONAL = "conditional-exact"


class CellStatus(str, Enum):
    OK = "ok"
    INVALID = "invalid"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


# Child-stream tags keep null/planted/aux draws of one trial independent
STREAM_TAGS = {Model.NULL: 0, Model.PLANTED: 1, Model.AUX: 2}
