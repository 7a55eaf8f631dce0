"""Identifiers of the verifiable results and the inputs each one takes."""

from enum import Enum

from .errors import UnknownTheorem


class TheoremId(Enum):
    T3_7 = "T3_7"
    T3_9 = "T3_9"
    T3_13 = "T3_13"
    T3_14 = "T3_14"
    T3_15 = "T3_15"
    T3_16cor = "T3_16cor"
    T3_17 = "T3_17"
    T3_18 = "T3_18"
    T3_19 = "T3_19"
    ROL4_1 = "ROL4_1"
    ROL4_2 = "ROL4_2"
    ROL4_3 = "ROL4_3"
    ROL4_4 = "ROL4_4"
    ROL4_5 = "ROL4_5"
    ROL4_6 = "ROL4_6"
    ROL4_7 = "ROL4_7"
    L2_6 = "L2_6"
    C2_7 = "C2_7"
    P3_2 = "P3_2"
    P3_5 = "P3_5"
    P3_11 = "P3_11"
    P3_12 = "P3_12"
    L3_8 = "L3_8"

    def __str__(self):
        return self.value


SIGNATURE = {
    TheoremId.T3_7: ("A", "M"),
    TheoremId.T3_9: ("A", "N"),
    TheoremId.T3_13: ("A", "M", "N"),
    TheoremId.T3_14: ("A", "M"),
    TheoremId.T3_15: ("A", "N"),
    TheoremId.T3_16cor: ("A", "M", "N"),
    TheoremId.T3_17: ("A", "M"),
    TheoremId.T3_18: ("A", "M", "N"),
    TheoremId.T3_19: ("A", "M", "N"),
    TheoremId.ROL4_1: ("A", "B", "M"),
    TheoremId.ROL4_2: ("A", "B", "N"),
    TheoremId.ROL4_3: ("A", "B", "M"),
    TheoremId.ROL4_4: ("A", "B", "M"),
    TheoremId.ROL4_5: ("A", "B", "N"),
    TheoremId.ROL4_6: ("A", "B", "M"),
    TheoremId.ROL4_7: ("A", "B", "M"),
    TheoremId.L2_6: ("A",),
    TheoremId.C2_7: ("A",),
    TheoremId.P3_2: ("A",),
    TheoremId.P3_5: ("A",),
    TheoremId.P3_11: ("A", "M"),
    TheoremId.P3_12: ("A", "M"),
    TheoremId.L3_8: ("A", "M"),
}

ROL_IDS = tuple(t for t in TheoremId if t.value.startswith("ROL"))


def parse_theorem(text) -> TheoremId:
    if isinstance(text, TheoremId):
        return text
    try:
        return TheoremId(str(text).strip())
    except ValueError:
        raise UnknownTheorem(str(text)) from None
