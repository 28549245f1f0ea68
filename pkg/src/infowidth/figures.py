"""Data behind the width, identity-property and efficiency figures.

Each figure is a table: one x column and one column per curve.  Points where
an estimate is evaluated outside the premises it was derived under are kept
and marked in a ``premise_ok`` column.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from . import asymptotics as asy
from .errors import DomainError, PreconditionWarning, UndefinedValueError
from .svg import line_chart
from .width import EXACT, LOGDOMAIN, info_width, kappa_star

FIGURE_IDS = ("1a", "1b", "2a", "2b", "3a", "3b", "4")

WIDTH_NS = (5, 6, 7)
IDENTITY_NS = tuple(range(2, 41))
EFFICIENCY_NS = tuple(range(4, 31))
SAMPLE_EXPONENTS = (0.01, 0.1, 0.5, 0.95)
FIG4_N = 10
FIG4_A = (0.1, 0.2, 0.3, 0.4)
FIG4_B = tuple(round(0.05 * i, 2) for i in range(1, 20))

DEFAULT_PRECISION = 9


@dataclass
class FigureData:
    figure_id: str
    title: str
    x_name: str
    y_label: str
    x: list[float]
    series: dict[str, list[float]]
    premise_ok: list[bool] | None = field(default=None)

    def columns(self) -> list[str]:
        cols = [self.x_name, *self.series]
        if self.premise_ok is not None:
            cols.append("premise_ok")
        return cols

    def rows(self) -> list[list[float | None]]:
        out = []
        for i, xv in enumerate(self.x):
            row: list = [xv] + [vals[i] for vals in self.series.values()]
            if self.premise_ok is not None:
                row.append(int(self.premise_ok[i]))
            out.append(row)
        return out

    def to_csv(self, precision: int = DEFAULT_PRECISION) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(self.columns())
        for row in self.rows():
            writer.writerow([format_cell(v, precision) for v in row])
        return buf.getvalue()

    def to_svg(self) -> str:
        return line_chart(
            self.x,
            self.series,
            title=self.title,
            xlabel=self.x_name,
            ylabel=self.y_label,
        )


def format_cell(value, precision: int = DEFAULT_PRECISION) -> str:
    """Fixed-point text with ``precision`` decimals; missing values are empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if not math.isfinite(value):
        return ""
    text = f"{value:.{precision}f}"
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _nan_on_error(fn: Callable[[], float]) -> float:
    try:
        return fn()
    except (DomainError, UndefinedValueError, OverflowError):
        return math.nan


# --- figure 1: width and its cost ----------------------------------------------------------


def width_table(ns: Sequence[int] = WIDTH_NS, backend: str = EXACT) -> FigureData:
    """``I*(l)`` on the integer grid ``l = 1..2**n`` (``|Z_x| = 2**(2**n - l)``)."""
    top = max(1 << n for n in ns)
    xs = list(range(1, top + 1))
    series = {}
    for n in ns:
        space = 1 << n
        vals = []
        for l in xs:
            vals.append(info_width(space, members=1 << (space - l), backend=backend).width_bits if l <= space else math.nan)
        series[f"Istar_n{n}"] = vals
    return FigureData("1a", "information width I*(l)", "l", "I* (bits)", [float(v) for v in xs], series)


def cost_table(ns: Sequence[int] = WIDTH_NS, backend: str = EXACT) -> FigureData:
    """``kappa*(l) = l / I*(l)`` on the same grid as :func:`width_table`."""
    top = max(1 << n for n in ns)
    xs = list(range(1, top + 1))
    series = {}
    for n in ns:
        space = 1 << n
        series[f"kappastar_n{n}"] = [
            kappa_star(space, members=1 << (space - l), backend=backend) if l <= space else math.nan for l in xs
        ]
    return FigureData("1b", "cost of maximal information kappa*(l)", "l", "kappa*", [float(v) for v in xs], series)


# --- figure 2: identity property -----------------------------------------------------------


def _identity_sizes(n: int) -> dict[str, float]:
    return {"sqrt_n": math.sqrt(n), "n": float(n), "2^(n-sqrt_n)": 2.0 ** (n - math.sqrt(n))}


def identity_table(ns: Sequence[int] = IDENTITY_NS, quantity: str = "info") -> FigureData:
    series: dict[str, list[float]] = {}
    for n in ns:
        for label, g in _identity_sizes(n).items():
            rep = asy.identity_report(n, g)
            val = rep.information_bits if quantity == "info" else rep.efficiency
            series.setdefault(f"{'I' if quantity == 'info' else 'eta'}_G={label}", []).append(
                math.nan if val is None else val
            )
    if quantity == "info":
        return FigureData("2a", "information of the identity property", "n", "I (bits)", [float(n) for n in ns], series)
    return FigureData("2b", "efficiency of the identity property", "n", "eta", [float(n) for n in ns], series)


# --- figures 3 and 4: efficiency of trace properties -----------------------------------------


def _eta(n: int, info_fn: Callable[[], float], ell_fn: Callable[[], float]) -> float:
    return _nan_on_error(lambda: asy.efficiency_at(n, info_fn(), ell_fn()))


def _premises(n: float, d: float, m: float = 0.0) -> bool:
    return d < n and d > math.log2(n) and n < d * 2.0**d and m < n


def efficiency_table(ns: Sequence[int] = EFFICIENCY_NS) -> FigureData:
    """Efficiency of ``L_d`` (both ends of ``c``), ``VC >= d`` and ``VC < d`` at ``d = sqrt(n)``."""
    series: dict[str, list[float]] = {k: [] for k in ("eta_Ld_c=d", "eta_Ld_c=1", "eta_Vdc", "eta_Vd")}
    ok = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PreconditionWarning)
        for n in ns:
            d = math.sqrt(n)
            ld_i = _nan_on_error(lambda: asy.ld_info(n, d, check=False))
            ld_l = asy.ld_complexity(n, d, check=False)
            series["eta_Ld_c=d"].append(_eta(n, lambda: ld_i, lambda: ld_l.low))
            series["eta_Ld_c=1"].append(_eta(n, lambda: ld_i, lambda: ld_l.high))
            series["eta_Vdc"].append(
                _eta(n, lambda: asy.vdc_info(n, d, check=False), lambda: asy.vdc_complexity(n, d, check=False))
            )
            series["eta_Vd"].append(
                _eta(n, lambda: asy.vd_info(n, d, check=False), lambda: asy.vd_complexity(n, d, check=False))
            )
            ok.append(_premises(n, d))
    return FigureData("3a", "efficiency, d = sqrt(n)", "n", "eta", [float(n) for n in ns], series, ok)


def _vdsm_eta(n: float, d: float, m: float) -> float:
    return _eta(
        int(n),
        lambda: asy.vdsm_info(n, d, m, check=False),
        lambda: asy.vdsm_complexity(n, d, m, check=False),
    )


def sample_efficiency_table(ns: Sequence[int] = EFFICIENCY_NS, exponents: Sequence[float] = SAMPLE_EXPONENTS) -> FigureData:
    """Efficiency of ``VC < d`` with ``m = n**a`` labeled points, ``d = sqrt(n)``."""
    series: dict[str, list[float]] = {f"eta_a={a:g}": [] for a in exponents}
    ok = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PreconditionWarning)
        for n in ns:
            d = math.sqrt(n)
            flags = []
            for a in exponents:
                m = float(n) ** a
                series[f"eta_a={a:g}"].append(_vdsm_eta(n, d, m))
                flags.append(n < d * 2.0**d and m < n)
            ok.append(all(flags))
    return FigureData("3b", "efficiency with a sample, m = n^a, d = sqrt(n)", "n", "eta", [float(n) for n in ns], series, ok)


def sample_dimension_table(
    n: int = FIG4_N, a_values: Sequence[float] = FIG4_A, b_values: Sequence[float] = FIG4_B
) -> FigureData:
    """Efficiency of ``VC < d`` with ``m = n**a`` points as ``d = n**b`` varies, fixed ``n``."""
    series: dict[str, list[float]] = {f"eta_a={a:g}": [] for a in a_values}
    ok = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PreconditionWarning)
        for b in b_values:
            d = float(n) ** b
            flags = []
            for a in a_values:
                m = float(n) ** a
                series[f"eta_a={a:g}"].append(_vdsm_eta(n, d, m))
                flags.append(n < d * 2.0**d)
            ok.append(all(flags))
    return FigureData("4", f"efficiency with a sample, n = {n}, m = n^a, d = n^b", "b", "eta", list(b_values), series, ok)


def build_figure(figure_id: str, backend: str = EXACT) -> FigureData:
    """Table for one figure id."""
    if figure_id == "1a":
        return width_table(backend=backend)
    if figure_id == "1b":
        return cost_table(backend=backend)
    if figure_id == "2a":
        return identity_table(quantity="info")
    if figure_id == "2b":
        return identity_table(quantity="eta")
    if figure_id == "3a":
        return efficiency_table()
    if figure_id == "3b":
        return sample_efficiency_table()
    if figure_id == "4":
        return sample_dimension_table()
    raise DomainError(f"unknown figure id {figure_id!r}; choose from {', '.join(FIGURE_IDS)}")


def read_csv(text: str) -> tuple[list[str], list[list[float]]]:
    """Parse a figure CSV back into its header and numeric rows (empty cells are NaN)."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    rows = [[float(c) if c != "" else math.nan for c in row] for row in reader if row]
    return header, rows


__all__ = [
    "DEFAULT_PRECISION",
    "FIGURE_IDS",
    "FigureData",
    "LOGDOMAIN",
    "build_figure",
    "cost_table",
    "efficiency_table",
    "format_cell",
    "identity_table",
    "read_csv",
    "sample_dimension_table",
    "sample_efficiency_table",
    "width_table",
]
