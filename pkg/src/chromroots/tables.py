"""Access to the bundled reference tables and the comparison logic used by
the table-reproduction harness."""

from __future__ import annotations

import csv
from fractions import Fraction
from importlib import resources
from typing import Dict, List

from .chromatic import PartitionVector
from .exactnum import IntPolynomial, falling_factorial

#: Comparison tolerance for published root values (they carry 9-10 digits
#: with unstated rounding, so exact string match is not meaningful).
ROOT_TOLERANCE = Fraction(5, 10 ** 10)

#: Strip lengths listed in the two root tables.
BY_N_ROWS = (1, 2, 3, 4, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100)
DOUBLING_ROWS = (2, 4, 8, 16, 32, 64, 128, 256, 512)


def _read_table(name: str) -> List[dict]:
    text = (resources.files("chromroots") / "tables" / name).read_text()
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    return list(csv.DictReader(lines))


def reference_partition_components() -> PartitionVector:
    """The shipped expected value of the partitioned chromatic polynomial of
    the 16-vertex end graph, expanded from multiplier * polynomial form."""
    rows = _read_table("H_partition_components.csv")
    cols: Dict[str, dict] = {key: {} for key in ("P1", "P2", "P3", "P4")}
    for row in rows:
        power = int(row["power"])
        for key in cols:
            if row[key]:
                cols[key][power] = int(row[key])

    def poly(col: dict) -> IntPolynomial:
        top = max(col)
        return IntPolynomial([col.get(i, 0) for i in range(top + 1)])

    multipliers = {
        "P1": falling_factorial(5),
        "P2": falling_factorial(4),
        "P3": falling_factorial(4),
        "P4": falling_factorial(4) * IntPolynomial((-3, 1)),
    }
    return PartitionVector(*(multipliers[k] * poly(cols[k])
                             for k in ("P1", "P2", "P3", "P4")))


def reference_roots_by_n() -> Dict[int, Fraction]:
    """n -> published largest real root of the n-layer strip."""
    return {int(r["n"]): Fraction(r["root"])
            for r in _read_table("strip_roots_by_n.csv")}


def reference_roots_doubling() -> Dict[int, Fraction]:
    """n -> published root of the (n+1)-layer strip (doubling series)."""
    return {int(r["n"]): Fraction(r["root"])
            for r in _read_table("strip_roots_doubling.csv")}

