"""Parameter sweeps behind the four delta figures, and their CSV output."""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .deltas import DeltaRequest, Geometry, Method, Setup, evaluate
from .errors import ConfigError
from .materials import Prescription

__all__ = ["SweepSpec", "RunReport", "figure_spec", "run_sweep", "write_csv", "format_float"]

MAX_POINTS = 10_000
FIGURE_POINTS = 81
FIGURE_RADIUS_UM = 200.0


def format_float(x):
    """Fixed scientific notation with 12 significant digits."""
    return f"{x:.11e}"


@dataclass(frozen=True)
class SweepSpec:
    """A swept variable, its grid and the request every point starts from.

    ``swept`` is ``"t1"`` (K) or ``"gap"`` (nm). ``scale`` converts a delta
    into the reported unit; ``columns`` names the swept column followed by
    the Drude Nb-Nb and Drude Nb-Au columns.
    """

    swept: str
    grid: tuple
    fixed: DeltaRequest
    columns: tuple
    swept_scale: float = 1.0
    scale: float = 1.0
    output_path: str | None = None

    def __post_init__(self):
        if self.swept not in ("t1", "gap"):
            raise ConfigError(f"can only sweep t1 or gap, not {self.swept!r}")
        grid = tuple(float(v) for v in self.grid)
        object.__setattr__(self, "grid", grid)
        if not grid or len(grid) > MAX_POINTS:
            raise ConfigError(f"grid needs 1..{MAX_POINTS} points")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError("grid must be strictly increasing")

    def request(self, value, setup, prescription):
        return self.fixed.replace(**{self.swept: value, "setup": setup,
                                     "prescription": prescription})


@dataclass
class RunReport:
    """Rows of ``(swept, drude_nbnb, drude_nbau, plasma)`` in reported units."""

    spec: SweepSpec
    rows: list = field(default_factory=list)
    timing: float = 0.0

    @property
    def provenance(self):
        from . import __version__

        fixed = asdict(self.spec.fixed)
        fixed.pop(self.spec.swept)
        out = {"version": __version__}
        out.update({k: (v.value if hasattr(v, "value") else v) for k, v in fixed.items()})
        out.pop("setup")
        out.pop("prescription")
        out["swept"] = self.spec.swept
        out["grid"] = f"{self.spec.grid[0]:g}..{self.spec.grid[-1]:g} ({len(self.spec.grid)} points)"
        return out

    def column(self, i):
        return np.array([r[i] for r in self.rows])


def figure_spec(figure_id, t2=None, points=FIGURE_POINTS, output_path=None):
    """Sweep definition of figure 1-4.

    1 and 2 are parallel-plate pressure changes in mPa versus T1 (a = 150 nm)
    and versus a (T1 = 5 K); 3 and 4 are sphere-plate force changes per unit
    radius in 1e-10 N/m on the same axes.
    """
    if figure_id not in (1, 2, 3, 4):
        raise ConfigError(f"figure id must be 1..4, got {figure_id}")
    sphere = figure_id in (3, 4)
    base = DeltaRequest(gap=150.0, t1=5.0, t2=t2,
                        geometry=Geometry.SPHERE if sphere else Geometry.PARALLEL,
                        radius=FIGURE_RADIUS_UM if sphere else None,
                        method=Method.CLOSED)
    if figure_id in (1, 3):
        swept, grid, swept_scale, xname = "t1", np.linspace(1.0, 9.0, points), 1.0, "T1_K"
    else:
        swept, grid, swept_scale, xname = "gap", np.linspace(100.0, 2000.0, points), 1e-3, "a_um"
    if sphere:
        scale = 1.0 / (FIGURE_RADIUS_UM * 1e-6) / 1e-10
        cols = (xname, "dF_over_R_NbNb_1e-10_N_per_m", "dF_over_R_NbAu_1e-10_N_per_m")
    else:
        scale = 1e3
        cols = (xname, "dP_Dr_NbNb_mPa", "dP_Dr_NbAu_mPa")
    return SweepSpec(swept, tuple(grid), base, cols, swept_scale, scale, output_path)


def _row(spec, value):
    vals = [evaluate(spec.request(value, setup, presc)).value * spec.scale
            for setup, presc in ((Setup.NBNB, Prescription.DRUDE),
                                 (Setup.NBAU, Prescription.DRUDE),
                                 (Setup.NBNB, Prescription.PLASMA))]
    return (value * spec.swept_scale, *vals)


def run_sweep(spec, workers=None):
    """Evaluate every grid point; rows come back in grid order."""
    start = time.perf_counter()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda v: _row(spec, v), spec.grid))
    return RunReport(spec, rows, time.perf_counter() - start)


def csv_lines(header, columns, rows):
    lines = [f"# {k} = {v}" for k, v in header.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else format_float(v) for v in row))
    return lines


def write_csv(report, path):
    """Write the figure columns of ``report`` as UTF-8 CSV with a ``#`` header."""
    ncols = len(report.spec.columns)
    lines = csv_lines(report.provenance, report.spec.columns,
                      [r[:ncols] for r in report.rows])
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
