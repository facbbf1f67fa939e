"""Command-line front end.

Subcommands ``pressure``, ``force``, ``delta``, ``figure`` and ``validate``.
Results are written as UTF-8 CSV: ``#`` lines echoing the resolved
configuration, one row of column names, then the values.

Settings come from three layers, later ones winning: built-in defaults, an
optional INI file (``--config``) and command-line flags. The INI file has a
``[run]`` section whose keys are flag names (``gap_nm = 150``) and any number
of ``[material.NAME]`` sections defining materials usable as ``--plate1 NAME``::

    [material.myau]
    kind = drude
    omega_p = 8.9
    gamma = 0.0357
"""

import argparse
import configparser
import sys

from . import __version__
from .deltas import DeltaRequest, evaluate
from .errors import CancellationRefusal, CasimirError, ConfigError, NonConvergenceError
from .figures import csv_lines, figure_spec, run_sweep, write_csv
from .lifshitz import CavityConfig, pressure
from .materials import Kind, MaterialModel, preset
from .pfa import sphere_force

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_NONCONVERGENCE = 3
EXIT_CANCELLATION = 4

# (dest, type) of every setting that may also come from [run]
_RUN_KEYS = {
    "gap_nm": float, "temp_K": float, "t1_K": float, "t2_K": float,
    "plate1": str, "plate2": str, "setup": str, "prescription": str,
    "geometry": str, "radius_um": float, "method": str, "tol": float,
    "points": int,
}
_DEFAULTS = {"plate1": "Au", "plate2": "Au", "setup": "nbnb", "prescription": "drude",
             "geometry": "parallel", "method": "closed"}


def _add_common(p, *names):
    if "gap" in names:
        p.add_argument("--gap-nm", dest="gap_nm", type=float, help="separation a in nm")
    if "temp" in names:
        p.add_argument("--temp-K", dest="temp_K", type=float, help="temperature in K")
    if "plates" in names:
        p.add_argument("--plate1", help="Nb, Au, ideal or a [material.NAME] from --config")
        p.add_argument("--plate2")
        p.add_argument("--prescription", choices=("drude", "plasma"))
    if "radius" in names:
        p.add_argument("--radius-um", dest="radius_um", type=float, help="sphere radius in um")
    p.add_argument("--tol", type=float, help="relative quadrature tolerance")
    p.add_argument("--config", help="INI file with [run] and [material.NAME] sections")
    p.add_argument("--out", help="write CSV here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="supercasimir",
        description="Thermal Casimir pressures, forces and temperature-change deltas.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pressure", help="parallel-plate pressure breakdown")
    _add_common(p, "gap", "temp", "plates")

    p = sub.add_parser("force", help="PFA sphere-plate force breakdown")
    _add_common(p, "gap", "temp", "plates", "radius")

    p = sub.add_parser("delta", help="change of pressure or force between T1 and T2")
    _add_common(p, "gap", "radius")
    p.add_argument("--t1-K", dest="t1_K", type=float)
    p.add_argument("--t2-K", dest="t2_K", type=float, help="default 0.99 T_c")
    p.add_argument("--setup", choices=("nbnb", "nbau"))
    p.add_argument("--prescription", choices=("drude", "plasma"))
    p.add_argument("--geometry", choices=("parallel", "sphere"))
    p.add_argument("--method", choices=("closed", "numeric"))

    p = sub.add_parser("figure", help="CSV data for figure 1-4")
    p.add_argument("id", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--t2-K", dest="t2_K", type=float, help="default 0.99 T_c")
    p.add_argument("--points", type=int, help="grid points (default 81)")
    p.add_argument("--workers", type=int)
    p.add_argument("--config")
    p.add_argument("--out")

    p = sub.add_parser("validate", help="run the acceptance checks")
    p.add_argument("--only", action="append", help="criterion id; repeatable or comma separated")
    return parser


class Settings:
    """Flags merged over the ``[run]`` section over built-in defaults."""

    def __init__(self, args):
        self.materials = {}
        run = {}
        path = getattr(args, "config", None)
        if path:
            ini = configparser.ConfigParser()
            ini.optionxform = str
            try:
                with open(path, encoding="utf-8") as fh:
                    ini.read_file(fh)
            except configparser.Error as exc:
                raise ConfigError(f"cannot parse {path}: {exc}") from None
            for section in ini.sections():
                if section.startswith("material."):
                    name = section.split(".", 1)[1]
                    self.materials[name.lower()] = _material_from_ini(name, ini[section])
                elif section == "run":
                    for key, raw in ini[section].items():
                        if key not in _RUN_KEYS:
                            raise ConfigError(f"unknown [run] key {key!r}")
                        try:
                            run[key] = _RUN_KEYS[key](raw)
                        except ValueError:
                            raise ConfigError(f"bad value for {key}: {raw!r}") from None
                else:
                    raise ConfigError(f"unknown section [{section}]")
        self.values = dict(_DEFAULTS)
        self.values.update(run)
        self.values.update({k: v for k, v in vars(args).items()
                            if k in _RUN_KEYS and v is not None})

    def get(self, key, required=False):
        value = self.values.get(key)
        if required and value is None:
            raise ConfigError(f"missing required setting {key} (flag --{key.replace('_', '-')})")
        return value

    def material(self, name):
        return self.materials.get(name.lower()) or preset(name)

    def tolerance(self):
        tol = self.get("tol")
        return {} if tol is None else {"quad_rel_tol": tol}


def _material_from_ini(name, section):
    try:
        kind = Kind(section.get("kind", "drude").lower())
        t_c = section.get("t_c")
        return MaterialModel(kind, float(section["omega_p"]), float(section.get("gamma", 0.0)),
                             t_c=float(t_c) if t_c is not None else None, name=name)
    except KeyError:
        raise ConfigError(f"[material.{name}] needs omega_p") from None
    except ValueError as exc:
        raise ConfigError(f"[material.{name}]: {exc}") from None


def _cavity(s):
    return CavityConfig(s.get("gap_nm", True), s.get("temp_K", True),
                        s.material(s.get("plate1")), s.material(s.get("plate2")),
                        s.get("prescription"), **s.tolerance())


def _header(s, keys, extra=()):
    out = {"version": __version__}
    out.update({k: s.get(k) for k in keys if s.get(k) is not None})
    out.update(extra)
    return out


def cmd_pressure(s):
    cfg = _cavity(s)
    b = pressure(cfg)
    header = _header(s, ("gap_nm", "temp_K", "plate1", "plate2", "prescription"),
                     {"quad_rel_tol": cfg.quad_rel_tol, "sum_rel_tol": cfg.sum_rel_tol})
    cols = ("p0_te_Pa", "p0_tm_Pa", "p1_Pa", "total_Pa", "l_used", "max_quad_error_Pa")
    row = (b.p0_te, b.p0_tm, b.p1, b.total, str(b.l_used), b.max_quad_error)
    return csv_lines(header, cols, [row])


def cmd_force(s):
    cfg = _cavity(s)
    b = sphere_force(s.get("radius_um", True), cfg)
    header = _header(s, ("gap_nm", "temp_K", "radius_um", "plate1", "plate2", "prescription"),
                     {"quad_rel_tol": cfg.quad_rel_tol, "sum_rel_tol": cfg.sum_rel_tol})
    cols = ("f0_te_N", "f0_tm_N", "f1_N", "total_N", "l_used", "max_quad_error_N")
    row = (b.f0_te, b.f0_tm, b.f1, b.total, str(b.l_used), b.max_quad_error)
    return csv_lines(header, cols, [row])


def delta_request(s):
    return DeltaRequest(gap=s.get("gap_nm", True), t1=s.get("t1_K", True), t2=s.get("t2_K"),
                        geometry=s.get("geometry"), radius=s.get("radius_um"),
                        setup=s.get("setup"), prescription=s.get("prescription"),
                        method=s.get("method"), **s.tolerance())


def cmd_delta(s):
    req = delta_request(s)
    r = evaluate(req)
    header = _header(s, ("gap_nm", "t1_K", "geometry", "radius_um", "setup",
                         "prescription", "method"),
                     {"t2_K": req.t2, "omega_p_eV": req.omega_p, "gamma_eV": req.gamma,
                      "t_c_K": req.t_c, "quad_rel_tol": req.quad_rel_tol})
    names = list(r.breakdown)
    cols = ("value", "units", *names, "cancellation_flag", "digits_lost")
    digits = "" if r.digits_lost is None else f"{r.digits_lost:.3f}"
    row = (r.value, r.units, *(r.breakdown[n] for n in names),
           str(r.cancellation_flag).lower(), digits)
    return csv_lines(header, cols, [row])


def cmd_figure(s, args):
    kw = {} if s.get("points") is None else {"points": s.get("points")}
    spec = figure_spec(args.id, t2=s.get("t2_K"), **kw)
    report = run_sweep(spec, workers=args.workers)
    if args.out:
        write_csv(report, args.out)
        print(f"figure {args.id}: {len(report.rows)} rows -> {args.out} "
              f"({report.timing:.2f} s)", file=sys.stderr)
        return None
    ncols = len(spec.columns)
    return csv_lines(report.provenance, spec.columns, [r[:ncols] for r in report.rows])


def cmd_validate(args):
    from .validation import format_table, run

    only = None
    if args.only:
        only = [c.strip() for item in args.only for c in item.split(",") if c.strip()]
    try:
        outcomes = run(only)
    except KeyError as exc:
        raise ConfigError(exc.args[0]) from None
    print(format_table(outcomes))
    failed = sum(not r.passed for _, r in outcomes)
    print(f"{len(outcomes) - failed}/{len(outcomes)} passed")
    return EXIT_VALIDATION if failed else EXIT_OK


def _emit(lines, out):
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(args)
        s = Settings(args)
        if args.command == "figure":
            lines = cmd_figure(s, args)
        else:
            lines = {"pressure": cmd_pressure, "force": cmd_force,
                     "delta": cmd_delta}[args.command](s)
        if lines is not None:
            _emit(lines, args.out)
    except NonConvergenceError as exc:
        print(f"error: {exc} (partial sum {exc.partial_sum:.6e}, l = {exc.l_reached})",
              file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except CancellationRefusal as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CANCELLATION
    except (CasimirError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
