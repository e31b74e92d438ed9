"""Arithmetic of the known bounds on the virtual cohomological dimension of Mod_g.

Everything here is integer arithmetic in the genus g and the vanishing
parameter c: if the reduced homology of the boundary of the bordification
vanishes in degrees 0..c-1, then vcd(Mod_g) <= dim T_g - 1 - c = 6g - 7 - c.
A k-connected curve complex gives c = k + 1.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

FOOTNOTE = ("At g = 2 the simply-connected upper bound is 6g - 9 = 3. "
            "The expression 6*2 - 6 evaluates to 6, not 3, so it is not used as the bound.")

HARER_NOTE = ("Harer's value 4g - 5 and the number 6g - 7 - (2g - 3) = 4g - 4 are recorded separately. "
              "The second plugs the connectivity 2g - 3 in as c; a (2g - 3)-connected complex gives "
              "c = 2g - 2, whose bound is 4g - 5.")


def _check_genus(g: int) -> None:
    if not isinstance(g, int) or isinstance(g, bool):
        raise TypeError("genus must be an integer")
    if g < 2:
        raise ValueError(f"bounds need genus at least 2, got {g}")


@dataclass(frozen=True)
class HistoricalRow:
    key: str
    connectivity: int | None
    c: int | None
    value: int
    formula: str
    min_genus: int
    applicable: bool


@dataclass(frozen=True)
class BoundsReport:
    genus: int
    c: int
    lower: int
    trivial_upper: int
    connectivity_upper: int
    teich_dim: int
    historical: dict
    harer: int
    harer_connectivity: int
    harer_connectivity_as_c: int
    inconsistent: bool
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def lower_bound(g: int) -> int:
    """Rank of the free abelian group generated by twists along a pants decomposition."""
    return 3 * g - 3


def teich_dim(g: int) -> int:
    return 6 * g - 6


def connectivity_upper(g: int, c: int) -> int:
    """The upper bound 6g - 7 - c from homology vanishing in degrees below c."""
    if c < 0:
        raise ValueError("c must be non-negative")
    return teich_dim(g) - 1 - c


def historical_table(g: int) -> list[HistoricalRow]:
    """Known upper bounds and values, each with the least genus it applies to."""
    _check_genus(g)
    rows = [
        # key, connectivity k of the curve complex, formula in g, least genus
        ("trivial", None, "6g-7", 2),
        ("connectedness", 0, "6g-8", 2),
        ("simple_conn", 1, "6g-9", 2),
        ("conn3", 3, "6g-11", 3),
        ("conn4", 4, "6g-12", 4),
        ("conn5", 5, "6g-13", 4),
    ]
    out = []
    for key, k, formula, gmin in rows:
        c = 0 if k is None else k + 1
        out.append(HistoricalRow(key, k, c, connectivity_upper(g, c), formula, gmin, g >= gmin))
    out.append(HistoricalRow("harer", 2 * g - 3, None, 4 * g - 5, "4g-5", 2, True))
    return out


def vcd_bounds(g: int, c: int = 2) -> BoundsReport:
    """All bounds for genus g, with the connectivity bound taken at ``c``."""
    _check_genus(g)
    if c < 0:
        raise ValueError("c must be non-negative")
    lower = lower_bound(g)
    upper = connectivity_upper(g, c)
    hist = {r.key: r.value for r in historical_table(g) if r.applicable}
    hist["harer_connectivity"] = 2 * g - 3
    notes = [HARER_NOTE]
    if g == 2:
        notes.insert(0, FOOTNOTE)
    return BoundsReport(
        genus=g,
        c=c,
        lower=lower,
        trivial_upper=connectivity_upper(g, 0),
        connectivity_upper=upper,
        teich_dim=teich_dim(g),
        historical=hist,
        harer=4 * g - 5,
        harer_connectivity=2 * g - 3,
        harer_connectivity_as_c=connectivity_upper(g, 2 * g - 3),
        inconsistent=upper < lower,
        notes=notes,
    )


def format_report(rep: BoundsReport) -> str:
    """Plain text rendering: key = value lines, then the table, then notes."""
    lines = [
        f"genus = {rep.genus}",
        f"c = {rep.c}",
        f"lower = {rep.lower}",
        f"upper = {rep.connectivity_upper}",
        f"trivial_upper = {rep.trivial_upper}",
        f"teich_dim = {rep.teich_dim}",
        f"harer = {rep.harer}",
        f"harer_connectivity = {rep.harer_connectivity}",
        f"harer_connectivity_as_c = {rep.harer_connectivity_as_c}",
        f"inconsistent = {str(rep.inconsistent).lower()}",
        "",
        "key\tconnectivity\tc\tformula\tvalue\tapplies",
    ]
    for r in historical_table(rep.genus):
        conn = "-" if r.connectivity is None else str(r.connectivity)
        c = "-" if r.c is None else str(r.c)
        lines.append(f"{r.key}\t{conn}\t{c}\t{r.formula}\t{r.value}\t{'yes' if r.applicable else 'no'}")
    lines.append("")
    lines.extend(f"note: {n}" for n in rep.notes)
    return "\n".join(lines) + "\n"
