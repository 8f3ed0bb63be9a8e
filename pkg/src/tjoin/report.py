"""Table rows and CSV / Markdown rendering for the command line."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class BoundReportRow:
    size: int  # n for whole-graph rows, 2k for per-k rows
    lower: float
    harmonic_ub: float | None = None
    tsp_ub: float | None = None
    ear_ub: float | None = None
    opt: float | None = None

    @property
    def min_ub(self) -> float:
        present = [x for x in (self.harmonic_ub, self.tsp_ub, self.ear_ub) if x is not None]
        if not present:
            raise ValueError("row has no upper bound")
        return min(present)

    @property
    def ratio(self) -> float:
        return self.min_ub / self.lower


def fmt(x: float | int | None, precision: int = 6) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return f"{x:.{precision}f}"


def render(header: Sequence[str], rows: Sequence[Sequence[str]], style: str = "csv") -> str:
    if style == "csv":
        return "\n".join(",".join(r) for r in [header, *rows]) + "\n"
    if style == "md":
        lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {style!r}")


BOUNDS_HEADER = ("n", "LB", "UB", "ratio")
BOUNDS_HEADER_FULL = ("n", "LB", "harmonic_UB", "TSP_UB", "ear_UB", "UB", "ratio")
MU2K_HEADER = ("2k", "mwm", "opt", "harmonic_UB", "TSP_UB", "ratio")


def bounds_table(rows: Sequence[BoundReportRow], style: str = "csv", full: bool = False, precision: int = 6) -> str:
    out = []
    for r in rows:
        if full:
            cells = [r.size, r.lower, r.harmonic_ub, r.tsp_ub, r.ear_ub, r.min_ub, r.ratio]
        else:
            cells = [r.size, r.lower, r.min_ub, r.ratio]
        out.append([fmt(c, precision) for c in cells])
    return render(BOUNDS_HEADER_FULL if full else BOUNDS_HEADER, out, style)


def mu2k_table(rows: Sequence[BoundReportRow], style: str = "csv", precision: int = 6) -> str:
    out = [
        [fmt(c, precision) for c in (r.size, r.lower, r.opt, r.harmonic_ub, r.tsp_ub, r.ratio)]
        for r in rows
    ]
    return render(MU2K_HEADER, out, style)
