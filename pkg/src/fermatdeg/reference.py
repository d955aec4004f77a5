"""Published values used as fixtures by ``analyze`` and the test-suite."""

from __future__ import annotations

import re
from typing import Sequence

# projection matrices, rows over ascending units, blocks in ledger order
MATRIX_15 = (
    (1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0),
    (0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1),
    (1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 1, 1, 0),
    (0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 1, 1, 0),
    (1, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 1),
    (0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1),
    (1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0),
    (0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 0, 1),
)
MATRIX_15_J5_COLUMN = (1, 1, 0, 1, 0, 1, 0, 0)

MATRIX_21 = (
    (1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 0),
    (0, 1, 1, 0, 1, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1),
    (0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0, 0, 1, 1, 0, 1, 0),
    (0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1, 0, 0, 1),
    (1, 0, 0, 0, 1, 0, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1),
    (0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 1, 1, 0, 0, 1, 1, 0),
    (1, 1, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1),
    (0, 1, 1, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1, 0),
    (1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 1, 0, 1, 0, 1, 1, 0),
    (1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 1, 0, 0, 1, 0, 1),
    (1, 0, 0, 1, 0, 0, 1, 1, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 1),
)

# m -> {target: verdict}
VERDICTS = {
    9: {("X",): "ISOMORPHISM"},
    15: {("X",): "ISOGENY(2)"},
    21: {("X",): "NEITHER", ("X", "J3"): "ISOMORPHISM"},
    27: {("X2",): "ISOMORPHISM"},
}

# number of exceptional codimension-2 monomials
EXCEPTIONAL_CODIM2 = {9: 2, 15: 12, 27: 8}
EXCEPTIONAL_27_CODIM2 = (
    "(1,10|3,8)", "(3,8|1,10)", "(2,11|6,7)", "(6,7|2,11)",
    "(3,12|6,9)", "(6,9|3,12)", "(4,13|5,12)", "(5,12|4,13)",
)

# identity components, in the U_i / Ubar_i notation
TORI = {
    9: ("U1", "U2", "U3", "Ubar1*U2*U3"),
    15: ("U1", "U2", "U3", "U4", "Ubar2*U3*U4", "Ubar1*U3*U4", "Ubar1*Ubar2*U3^2*U4"),
    21: ("U1", "U2", "U3", "Ubar1*U2*U3", "U5", "U6", "U7", "Ubar1*U3*U6", "Ubar2*U5*U6",
         "Ubar1*U5*U6"),
    27: ("U1", "U2", "U3", "U4", "U5", "U6", "U7", "U8", "U9", "Ubar1*U3*U8", "Ubar2*U6*U7",
         "Ubar3*U6*U9", "Ubar3*Ubar4*U5*U6*U9"),
}
TORUS_RANKS = {9: 3, 15: 4, 21: 6, 27: 9}

# exact moments M_2, M_4, ... (keyed by m and group)
TABLE_1 = (8, 216, 8000, 343000, 16003008)  # identity component, m = 9
TABLE_2 = (2, 38, 1340, 57190, 2667252, 131481812)  # full group with gamma, m = 9
TABLE_3 = (32, 3456, 512000, 87808000, 16387080192, 3231289442304)  # identity component, m = 18
TABLE_4 = (14, 834, 78260)  # identity component, m = 15

# published numerical a_1 moments (larger bounds than reproduced here)
NUMERICAL_TABLE_1 = (8.01253, 216.204, 7997.25, 342072, 15901600)
NUMERICAL_TABLE_2 = (2, 38, 1338, 57010, 2649180, 129958000)
NUMERICAL_TABLE_5 = {2: 13.993, 3: 0.093, 4: 833.023, 5: 11.991, 6: 78067.503}

SPLIT_FRACTION_15 = 0.5

_TOKEN = re.compile(r"^(Ubar|U)(\d+)(?:\^(\d+))?$")


def parse_torus_entries(entries: Sequence[str]) -> tuple[tuple[int, ...], ...]:
    """Exponent matrix of a diagonal torus written as U_i / Ubar_i monomials.

    Free coordinates are numbered by the U indices that occur; the result has
    one row per entry and one column per free coordinate (ascending index).
    """
    parsed = []
    names: set[int] = set()
    for e in entries:
        exps: dict[int, int] = {}
        for tok in e.split("*"):
            mt = _TOKEN.match(tok)
            if not mt:
                raise ValueError(f"cannot parse {tok!r}")
            i, k = int(mt.group(2)), int(mt.group(3) or 1)
            exps[i] = exps.get(i, 0) + (-k if mt.group(1) == "Ubar" else k)
            names.add(i)
        parsed.append(exps)
    order = sorted(names)
    return tuple(tuple(p.get(i, 0) for i in order) for p in parsed)
