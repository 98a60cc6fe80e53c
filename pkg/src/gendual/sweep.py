"""Dense parameter sweeps of the duality landscapes (figure data)."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .landscape import (
    F_pure,
    F_spherical,
    duality_sum_omega_paper,
    f_cartesian,
    f_rotated,
    in_cartesian_domain,
)

ANGLE_PARAMS = frozenset({"theta", "xi", "omega"})


def _first_principles(sx, theta, xi, omega):
    st = np.sin(theta)
    m = np.stack([st * np.cos(xi), st * np.sin(xi), np.cos(theta)], axis=-1).reshape(-1, 3)
    om = np.broadcast_to(omega, np.shape(sx)).reshape(-1)
    # effective axis R_y(-omega) m, row by row
    c, s = np.cos(om), np.sin(om)
    t = np.stack([c * m[:, 0] - s * m[:, 2], m[:, 1], s * m[:, 0] + c * m[:, 2]], axis=1)
    states = np.zeros((t.shape[0], 3))
    states[:, 0] = np.reshape(sx, -1)
    return _kernels.duality_rows(t, om, states).reshape(np.shape(sx))


def _f_cartesian_masked(mx, mz):
    ok = in_cartesian_domain(mx, mz)
    out = np.full(np.shape(mx), np.nan)
    out[ok] = f_cartesian(mx[ok], mz[ok])
    return out


@dataclass(frozen=True)
class LandscapeFunction:
    name: str
    params: tuple[str, ...]
    evaluate: object
    defaults: dict = field(default_factory=dict)


FUNCTIONS = {
    f.name: f
    for f in (
        LandscapeFunction("F_pure", ("theta", "xi"), F_pure),
        LandscapeFunction("F_spherical", ("sx", "theta", "xi"), F_spherical),
        LandscapeFunction("f_cartesian", ("mx", "mz"), _f_cartesian_masked),
        LandscapeFunction("f_rotated", ("sx", "mxp"), f_rotated),
        LandscapeFunction(
            "duality_omega_paper", ("sx", "theta", "xi", "omega"), duality_sum_omega_paper,
            {"omega": math.pi / 2},
        ),
        LandscapeFunction(
            "duality_first_principles", ("sx", "theta", "xi", "omega"), _first_principles,
            {"omega": math.pi / 2},
        ),
    )
}


@dataclass(frozen=True)
class Range:
    """``count`` values from ``start`` towards ``end``.

    Half-open (``end`` excluded) unless ``closed``, in which case ``end`` is
    the last value.
    """

    start: float
    end: float
    count: int
    closed: bool = False

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("range count must be >= 1")
        if self.start == self.end and not (self.closed and self.count == 1):
            raise ValueError("empty range: start equals end")
        if self.closed and self.count < 2 and self.start != self.end:
            raise ValueError("a closed range needs count >= 2")
        if not (math.isfinite(self.start) and math.isfinite(self.end)):
            raise ValueError("range bounds must be finite")

    def values(self) -> np.ndarray:
        k = np.arange(self.count, dtype=float)
        if self.closed:
            return self.start + (self.end - self.start) * k / (self.count - 1)
        return self.start + (self.end - self.start) * k / self.count

    @classmethod
    def parse(cls, text: str) -> "Range":
        parts = text.split(":")
        closed = False
        if len(parts) == 4:
            if parts[3] != "closed":
                raise ValueError(f"unknown range flag {parts[3]!r} (only 'closed')")
            closed = True
            parts = parts[:3]
        if len(parts) != 3:
            raise ValueError(f"malformed range {text!r}; expected start:end:count[:closed]")
        try:
            start, end = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError as exc:
            raise ValueError(f"malformed range {text!r}: {exc}") from None
        return cls(start, end, count, closed)

    def scaled(self, factor: float) -> "Range":
        return Range(self.start * factor, self.end * factor, self.count, self.closed)

    def as_dict(self) -> dict:
        return {"start": self.start, "end": self.end, "count": self.count, "closed": self.closed}


@dataclass(frozen=True)
class SweepSpec:
    function: str
    ranges: dict
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.function not in FUNCTIONS:
            raise ValueError(
                f"unknown function {self.function!r}; choose from {', '.join(FUNCTIONS)}"
            )
        fn = FUNCTIONS[self.function]
        if not self.ranges:
            raise ValueError("a sweep needs at least one range")
        for name in (*self.ranges, *self.fixed):
            if name not in fn.params:
                raise ValueError(f"{self.function} has no parameter {name!r} ({fn.params})")
        both = set(self.ranges) & set(self.fixed)
        if both:
            raise ValueError(f"parameters both ranged and fixed: {sorted(both)}")
        missing = set(fn.params) - set(self.ranges) - set(self.fixed) - set(fn.defaults)
        if missing:
            raise ValueError(f"{self.function} needs values for {sorted(missing)}")

    def resolved_fixed(self) -> dict:
        fn = FUNCTIONS[self.function]
        out = {k: v for k, v in fn.defaults.items() if k not in self.ranges}
        out.update(self.fixed)
        return out

    def as_dict(self) -> dict:
        return {
            "function": self.function,
            "ranges": {k: r.as_dict() for k, r in self.ranges.items()},
            "fixed": self.resolved_fixed(),
        }


@dataclass
class SweepTable:
    columns: list
    coords: np.ndarray  # (rows, n_columns)
    values: np.ndarray  # NaN marks an absent (out-of-domain) cell

    def __len__(self) -> int:
        return len(self.values)

    def extrema(self) -> dict:
        ok = ~np.isnan(self.values)
        info = {"rows": int(len(self.values)), "absent": int((~ok).sum())}
        if ok.any():
            idx = np.flatnonzero(ok)
            i_max = idx[np.argmax(self.values[ok])]
            i_min = idx[np.argmin(self.values[ok])]
            info.update(
                max=float(self.values[i_max]),
                min=float(self.values[i_min]),
                argmax=dict(zip(self.columns, map(float, self.coords[i_max]))),
                argmin=dict(zip(self.columns, map(float, self.coords[i_min]))),
            )
        return info

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([*self.columns, "value"])
        for row, v in zip(self.coords, self.values):
            w.writerow([format(x, ".17g") for x in row] + ["" if np.isnan(v) else format(v, ".17g")])
        return buf.getvalue()


def sweep_grid(spec: SweepSpec) -> SweepTable:
    """Evaluate the named function on the Cartesian product of the ranges.

    Rows are in row-major order: the first range varies slowest.
    """
    fn = FUNCTIONS[spec.function]
    names = list(spec.ranges)
    axes = [spec.ranges[n].values() for n in names]
    grids = np.meshgrid(*axes, indexing="ij")
    shape = grids[0].shape
    fixed = spec.resolved_fixed()
    args = {n: g.reshape(-1) for n, g in zip(names, grids)}
    for n, v in fixed.items():
        args[n] = np.full(int(np.prod(shape)), float(v))
    values = np.asarray(fn.evaluate(*(args[p] for p in fn.params)), dtype=float).reshape(-1)
    columns = names + list(fixed)
    coords = np.stack([args[c] for c in columns], axis=1)
    return SweepTable(columns, coords, values)


def evaluate_row(function: str, coords: dict) -> float:
    """Re-evaluate one table row; NaN if the point is out of domain."""
    fn = FUNCTIONS[function]
    full = {**fn.defaults, **coords}
    args = [np.array([float(full[p])]) for p in fn.params]
    return float(np.asarray(fn.evaluate(*args)).reshape(-1)[0])


PRESETS = {
    "fig3": SweepSpec(
        "F_pure",
        {"theta": Range(0.0, math.pi, 201, closed=True), "xi": Range(0.0, 2 * math.pi, 200)},
    ),
    "fig4": SweepSpec(
        "f_cartesian",
        {"mx": Range(-1.0, 1.0, 201, closed=True), "mz": Range(-1.0, 1.0, 201, closed=True)},
    ),
    "fig5": SweepSpec("f_rotated", {"mxp": Range(0.0, 1.0, 101, closed=True)}, {"sx": 1.0}),
    "fig6": SweepSpec(
        "f_rotated",
        {"sx": Range(0.25, 1.0, 4, closed=True), "mxp": Range(0.0, 1.0, 101, closed=True)},
    ),
}


def iter_rows(table: SweepTable):
    for row, v in zip(table.coords, table.values):
        yield dict(zip(table.columns, map(float, row))), (None if np.isnan(v) else float(v))


__all__ = [
    "FUNCTIONS",
    "PRESETS",
    "Range",
    "SweepSpec",
    "SweepTable",
    "evaluate_row",
    "iter_rows",
    "sweep_grid",
]
