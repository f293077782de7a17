"""Command-line front end: flows, spectra, comparisons, wave samples.

Four subcommands drive the library over parameter sweeps and emit flat
tables: `flow` tabulates lambda(R), `bind` solves one bound state by
any or all methods, `compare` runs both regulator schemes against the
closed form over an R list, `wave` samples a wavefunction.

Output is deterministic: no timestamps, floats printed with %.17g
(round-trippable), rows in input order. CSV carries a single
'#'-prefixed header naming columns and units; `--meta` prepends one
'# meta {...}' line with the resolved config and package version.
JSON mirrors the same column names.

Exit codes: 0 success (a missing bound state is a result, not an
error), 2 usage, 3 bound-state multiplicity (a violated uniqueness
claim), 4 numerical failure or every row errored.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from .errors import FlowPoleError, IntegrationError, RootMultiplicityError
from .flow import flow_at
from .model import Coupling, Cutoff, Extension, Scheme, coupling_from_g, coupling_from_nu
from .oracle import DEFAULT_N_STEPS, shoot_bound_state
from .spectrum import closed_form_k, solve_bound_state_exact
from .wavefunction import WaveKind, bound_state_wave, normalize, sample_wave, zero_energy_wave

try:
    from importlib.metadata import version as _pkg_version

    _VERSION = _pkg_version("invsq")
except Exception:  # pragma: no cover - metadata available in any real install
    _VERSION = "0.1.0"

_FLOAT_FMT = "%.17g"

_CONFIG_KEYS = {
    "scheme", "nu", "g", "c", "r0", "R", "R_log", "method", "format",
    "out", "meta", "kind", "r_grid", "n_scan", "n_steps",
}


class UsageError(Exception):
    """Bad flags or config; reported on stderr with exit code 2."""


def _fmt(x: float) -> str:
    return _FLOAT_FMT % x


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invsq",
        description="Renormalized inverse-square potential: flows, bound states, waves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--scheme", choices=[s.value for s in Scheme], default=None)
        p.add_argument("--nu", type=float, default=None, help="coupling via nu in [0, 1]")
        p.add_argument("--g", type=float, default=None, help="coupling via g in [-0.25, 0.75]")
        p.add_argument("--c", type=float, default=None, help="boundary-condition constant")
        p.add_argument("--r0", type=float, default=None, help="reference scale (default 1)")
        p.add_argument("--R", type=float, nargs="+", default=None, help="cutoff radius value(s)")
        p.add_argument(
            "--R-log", type=float, nargs=3, default=None, metavar=("MIN", "MAX", "N"),
            help="log-spaced cutoff range",
        )
        p.add_argument(
            "--method", choices=["exact", "closed-form", "oracle", "all"], default=None,
        )
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=["csv", "json"], default=None)
        p.add_argument("--config", default=None, help="flat JSON config; flags override")
        p.add_argument("--meta", action="store_true", default=None,
                       help="include resolved config and version in the output")
        p.add_argument("--n-scan", type=int, default=None, help="matching-scan grid points")
        p.add_argument("--n-steps", type=int, default=None, help="oracle mesh steps")

    for name, doc in [
        ("flow", "tabulate lambda(R) with branch and pole flags"),
        ("bind", "solve the bound state by exact / closed-form / oracle methods"),
        ("compare", "both schemes against the closed form over an R list"),
        ("wave", "sample a zero-energy or bound-state wavefunction"),
    ]:
        p = sub.add_parser(name, help=doc)
        common(p)
        if name == "wave":
            p.add_argument("--kind", choices=[k.value for k in WaveKind], default=None)
            p.add_argument(
                "--r-grid", type=float, nargs=3, default=None, metavar=("MIN", "MAX", "N"),
                help="log-spaced sample radii (default chosen from the state)",
            )
    return parser


def _load_config(path: str | None) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise UsageError(f"cannot read config {path}: {err}") from err
    if not isinstance(raw, dict):
        raise UsageError("config file must hold a flat JSON object")
    unknown = sorted(set(raw) - _CONFIG_KEYS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    return raw


def _resolve(args: argparse.Namespace) -> dict[str, Any]:
    """Merge CLI flags over config-file values into one flat dict."""
    file_cfg = _load_config(args.config)

    def pick(key: str, flag: Any) -> Any:
        return flag if flag is not None else file_cfg.get(key)

    cfg: dict[str, Any] = {
        "command": args.command,
        "scheme": pick("scheme", args.scheme),
        "nu": pick("nu", args.nu),
        "g": pick("g", args.g),
        "c": pick("c", args.c),
        "r0": pick("r0", args.r0),
        "R": pick("R", args.R),
        "R_log": pick("R_log", getattr(args, "R_log")),
        "method": pick("method", args.method) or "all",
        "format": pick("format", args.format) or "csv",
        "out": pick("out", args.out),
        "meta": bool(pick("meta", args.meta) or False),
        "n_scan": pick("n_scan", args.n_scan),
        "n_steps": pick("n_steps", args.n_steps),
    }
    if args.command == "wave":
        cfg["kind"] = pick("kind", args.kind) or WaveKind.BOUND_STATE.value
        cfg["r_grid"] = pick("r_grid", args.r_grid)
    return cfg


def _coupling(cfg: dict[str, Any]) -> Coupling:
    if (cfg["nu"] is None) == (cfg["g"] is None):
        raise UsageError("exactly one of --nu / --g must be given")
    try:
        if cfg["g"] is not None:
            return coupling_from_g(float(cfg["g"]))
        return coupling_from_nu(float(cfg["nu"]))
    except ValueError as err:
        raise UsageError(str(err)) from err


def _extension(cfg: dict[str, Any]) -> Extension:
    if cfg["c"] is None:
        raise UsageError("--c is required")
    r0 = 1.0 if cfg["r0"] is None else float(cfg["r0"])
    try:
        return Extension(c=float(cfg["c"]), r0=r0)
    except ValueError as err:
        raise UsageError(str(err)) from err


def _radii(cfg: dict[str, Any], *, need: bool = True) -> list[float]:
    R, R_log = cfg["R"], cfg["R_log"]
    if R is not None and R_log is not None:
        raise UsageError("give --R or --R-log, not both")
    if R is not None:
        values = [float(v) for v in (R if isinstance(R, (list, tuple)) else [R])]
    elif R_log is not None:
        lo, hi, n = float(R_log[0]), float(R_log[1]), int(R_log[2])
        if not (0.0 < lo < hi) or n < 2:
            raise UsageError("--R-log needs 0 < MIN < MAX and N >= 2")
        values = list(np.geomspace(lo, hi, n))
    elif need:
        raise UsageError("a cutoff is required: give --R or --R-log")
    else:
        return []
    if any(not (math.isfinite(v) and v > 0.0) for v in values):
        raise UsageError("cutoff radii must be positive")
    return values


def _scheme(cfg: dict[str, Any]) -> Scheme:
    if cfg["scheme"] is None:
        raise UsageError("--scheme is required for this command")
    return Scheme.parse(cfg["scheme"])


def _emit(cfg: dict[str, Any], columns: list[str], rows: list[dict[str, Any]], note: str) -> None:
    """Write one table. Row values are float/int/str/None; formatting
    happens here so CSV and JSON stay consistent."""
    meta = None
    if cfg["meta"]:
        resolved = {k: v for k, v in cfg.items() if k not in ("meta", "out")}
        meta = {"version": _VERSION, "config": resolved}
    lines: list[str] = []
    if cfg["format"] == "csv":
        if meta is not None:
            lines.append("# meta " + json.dumps(meta, sort_keys=True, separators=(",", ":")))
        lines.append("# " + ",".join(columns) + " | " + note)
        for row in rows:
            lines.append(",".join(_csv_cell(row.get(c)) for c in columns))
    else:
        lines.append(_json_table(meta, columns, rows))
    text = "\n".join(lines) + "\n"
    if cfg["out"] is None:
        sys.stdout.write(text)
    else:
        with open(cfg["out"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _csv_cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _fmt(v)
    return str(v).replace(",", ";").replace("\n", " ")


def _json_scalar(v: Any) -> str:
    if isinstance(v, float):
        return _fmt(v) if math.isfinite(v) else "null"
    return json.dumps(v)


def _json_table(meta: dict | None, columns: list[str], rows: list[dict[str, Any]]) -> str:
    parts = []
    if meta is not None:
        parts.append('"meta": ' + json.dumps(meta, sort_keys=True, separators=(",", ":")))
    parts.append('"columns": ' + json.dumps(columns))
    row_texts = []
    for row in rows:
        fields = ", ".join(
            json.dumps(c) + ": " + _json_scalar(row.get(c)) for c in columns
        )
        row_texts.append("  {" + fields + "}")
    parts.append('"rows": [\n' + ",\n".join(row_texts) + "\n]")
    return "{" + ", ".join(parts) + "}"


def cmd_flow(cfg: dict[str, Any]) -> int:
    coupling = _coupling(cfg)
    ext = _extension(cfg)
    scheme = _scheme(cfg)
    columns = ["R_over_r0", "lambda", "branch_index", "pole", "error"]
    rows: list[dict[str, Any]] = []
    failures = 0
    for R in _radii(cfg):
        cut = Cutoff.from_radius(R, ext)
        try:
            point = flow_at(scheme, coupling, ext, cut)
        except FlowPoleError as err:
            failures += 1
            rows.append({
                "R_over_r0": cut.ratio, "lambda": None, "branch_index": None,
                "pole": True, "error": str(err),
            })
            continue
        rows.append({
            "R_over_r0": cut.ratio, "lambda": point.lam,
            "branch_index": point.branch_index, "pole": False, "error": None,
        })
    _emit(cfg, columns, rows, "units: hbar=2m=1, radii in units of r0")
    return 4 if rows and failures == len(rows) else 0


def cmd_bind(cfg: dict[str, Any]) -> int:
    coupling = _coupling(cfg)
    ext = _extension(cfg)
    method = cfg["method"]
    wanted = ["closed-form", "exact", "oracle"] if method == "all" else [method]
    needs_cutoff = any(m in wanted for m in ("exact", "oracle"))
    cutoff = None
    scheme = None
    if needs_cutoff:
        scheme = _scheme(cfg)
        radii = _radii(cfg)
        if len(radii) != 1:
            raise UsageError("bind solves one cutoff; give exactly one --R")
        cutoff = Cutoff.from_radius(radii[0], ext)

    closed = closed_form_k(coupling, ext)
    columns = ["method", "status", "k", "E", "rel_dev_vs_closed"]
    rows: list[dict[str, Any]] = []
    for m in wanted:
        if m == "closed-form":
            state = closed
        elif m == "exact":
            state = solve_bound_state_exact(
                scheme, coupling, ext, cutoff,
                n_scan=int(cfg["n_scan"]) if cfg["n_scan"] is not None else 400,
            )
        else:
            result = shoot_bound_state(
                scheme, coupling, ext, cutoff,
                n_steps=int(cfg["n_steps"]) if cfg["n_steps"] is not None else DEFAULT_N_STEPS,
            )
            state = None if result is None else result.state
        if state is None:
            rows.append({"method": m, "status": "no-bound-state", "k": None,
                         "E": None, "rel_dev_vs_closed": None})
            continue
        dev = None
        if closed is not None and m != "closed-form":
            dev = abs(state.k - closed.k) / closed.k
        rows.append({"method": m, "status": "ok", "k": state.k, "E": state.E,
                     "rel_dev_vs_closed": dev})
    _emit(cfg, columns, rows, "units: hbar=2m=1, k in 1/r0, E = -k^2")
    return 0


def cmd_compare(cfg: dict[str, Any]) -> int:
    coupling = _coupling(cfg)
    ext = _extension(cfg)
    radii = _radii(cfg)
    if len(radii) < 2:
        raise UsageError("compare needs at least two cutoff radii")
    closed = closed_form_k(coupling, ext)
    columns = ["R_over_r0", "k_sw", "k_ds", "k_closed",
               "dev_sw_ds", "dev_sw_closed", "fitted_order", "error"]
    rows: list[dict[str, Any]] = []
    fit_pts: list[tuple[float, float]] = []
    failures = 0
    for R in radii:
        cut = Cutoff.from_radius(R, ext)
        row: dict[str, Any] = {"R_over_r0": cut.ratio, "k_closed": None if closed is None else closed.k}
        errs = []
        if closed is None:
            errs.append("no closed-form reference (c <= 0)")
        ks: dict[str, float | None] = {}
        for label, scheme in (("k_sw", Scheme.SQUARE_WELL), ("k_ds", Scheme.DELTA_SHELL)):
            try:
                state = solve_bound_state_exact(scheme, coupling, ext, cut)
            except (FlowPoleError, RootMultiplicityError, IntegrationError) as err:
                ks[label] = None
                errs.append(f"{label}: {err}")
                continue
            ks[label] = None if state is None else state.k
            if state is None:
                errs.append(f"{label}: no bound state")
        row.update(ks)
        if closed is not None and ks.get("k_sw") is not None:
            row["dev_sw_closed"] = abs(ks["k_sw"] - closed.k) / closed.k
            if ks.get("k_ds") is not None:
                row["dev_sw_ds"] = abs(ks["k_sw"] - ks["k_ds"]) / closed.k
            if row["dev_sw_closed"] > 0.0:
                fit_pts.append((cut.ratio, row["dev_sw_closed"]))
        if errs:
            failures += 1
            row["error"] = "; ".join(errs)
        rows.append(row)
    if len(fit_pts) >= 2:
        logs = np.log([p[0] for p in fit_pts])
        devs = np.log([p[1] for p in fit_pts])
        order = float(np.polyfit(logs, devs, 1)[0])
        rows.append({"fitted_order": order})
    _emit(cfg, columns, rows,
          "units: hbar=2m=1; dev columns relative to k_closed; last row fits dev_sw_closed ~ R^order")
    return 4 if failures == len(radii) else 0


def _wave_rows(rs: np.ndarray, us: np.ndarray) -> list[dict[str, Any]]:
    return [{"r": float(r), "u": float(u)} for r, u in zip(rs, us)]


def cmd_wave(cfg: dict[str, Any]) -> int:
    coupling = _coupling(cfg)
    ext = _extension(cfg)
    kind = WaveKind(cfg["kind"])
    columns = ["r", "u"]
    grid = cfg.get("r_grid")
    if grid is not None:
        lo, hi, n = float(grid[0]), float(grid[1]), int(grid[2])
        if not (0.0 < lo < hi) or n < 2:
            raise UsageError("--r-grid needs 0 < MIN < MAX and N >= 2")

    if kind is WaveKind.ZERO_ENERGY:
        wave = zero_energy_wave(coupling, ext)
        if grid is None:
            lo, hi, n = 0.01 * ext.r0, 10.0 * ext.r0, 200
        rs = np.geomspace(lo, hi, n)
        _emit(cfg, columns, _wave_rows(rs, sample_wave(wave, rs)),
              "zero-energy u, scale: leading-power coefficient 1; hbar=2m=1")
        return 0

    scheme = _scheme(cfg)
    radii = _radii(cfg)
    if len(radii) != 1:
        raise UsageError("wave samples one cutoff; give exactly one --R")
    cutoff = Cutoff.from_radius(radii[0], ext)
    point = flow_at(scheme, coupling, ext, cutoff)
    state = solve_bound_state_exact(scheme, coupling, ext, cutoff)
    if state is None:
        _emit(cfg, columns, [{"r": "no-bound-state",
                              "u": "no root of the matching condition for these parameters"}],
              "bound-state u; empty: no bound state exists here")
        return 0
    wave = normalize(bound_state_wave(scheme, coupling, ext, cutoff, state.k, lam=point.lam))
    if grid is None:
        lo, hi, n = cutoff.R / 10.0, 20.0 / state.k, 200
    rs = np.geomspace(lo, hi, n)
    _emit(cfg, columns, _wave_rows(rs, sample_wave(wave, rs)),
          "bound-state u normalized to unit integral of u^2; hbar=2m=1")
    return 0


_COMMANDS = {"flow": cmd_flow, "bind": cmd_bind, "compare": cmd_compare, "wave": cmd_wave}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        cfg = _resolve(args)
        return _COMMANDS[args.command](cfg)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    except RootMultiplicityError as err:
        print(f"uniqueness violation: {err}", file=sys.stderr)
        return 3
    except (FlowPoleError, IntegrationError, OverflowError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return 4
    except OSError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
