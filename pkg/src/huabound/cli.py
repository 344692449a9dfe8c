"""Command-line front end: validity checks, spectrum tables, q-sweeps, wavefunctions.

Runs are driven by a flat key=value config file plus command-line overrides;
tables are emitted as CSV (17-significant-digit reals) or JSON with a
deterministic row order.  Exit codes: 0 success, 2 validation failure,
3 numerical non-convergence, 4 config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, fields

import numpy as np

from .errors import (
    AdmissibilityError,
    ConfigError,
    ConvergenceError,
    HuaDomainError,
    HuaError,
    LadderDegenerateError,
    NoRealSolutionError,
    UnboundLevelError,
    ValidityError,
)
from .eigensolver import GridConfig, solve_bound_states
from .model import (
    HuaParameters,
    QuantumNumbers,
    effective_coefficients,
    pekeris_coefficients,
    validate_parameters,
)
from .susy import (
    count_bound_states,
    energy_level,
    ground_state_wavefunction,
    ground_state_window,
    superpotential_params,
)

__all__ = [
    "RunConfig",
    "ReportRow",
    "SweepRow",
    "parse_config_file",
    "build_run_config",
    "cmd_validate",
    "cmd_spectrum",
    "cmd_sweep_q",
    "cmd_wavefunction",
    "read_report_rows_csv",
    "read_report_rows_json",
    "main",
]

EXIT_OK = 0
EXIT_VALIDITY = 2
EXIT_CONVERGENCE = 3
EXIT_CONFIG = 4

ALL_MODES = ("closed", "numeric-pekeris", "numeric-exact")

_PARAM_KEYS = ("V0", "b_h", "r_e", "q", "mass_factor", "D")
_GRID_KEYS = ("n_points", "refinements", "tail_scale", "wall_factor")
_RUN_KEYS = ("l", "lmax", "nrmax", "modes", "format", "out", "sweep", "force")


@dataclass(frozen=True)
class RunConfig:
    """One fully-resolved run: parameters, quantum range, modes and output."""

    parameters: HuaParameters
    l: int = 0
    l_max: int = 0
    n_r_max: int | None = None  # None means "all bound levels"
    modes: tuple[str, ...] = ("closed",)
    sweep: tuple[float, float, int] | None = None
    out_format: str = "csv"
    out_path: str | None = None
    force: bool = False
    grid: GridConfig = GridConfig()


@dataclass(frozen=True)
class ReportRow:
    """One spectrum-table row; energy columns are None when a mode is absent."""

    D: int
    l: int
    n_r: int
    q: float
    E_closed: float | None
    E_numeric_pekeris: float | None
    E_numeric_exact: float | None
    rel_diff_closed_vs_pekeris: float | None
    pekeris_error: float | None
    validity: bool
    note: str = ""


@dataclass(frozen=True)
class SweepRow:
    """One (q, n_r, E) sweep sample; energy absent outside the validity window."""

    q: float
    n_r: int | None
    E: float | None
    validity: bool
    note: str = ""


def parse_config_file(path: str) -> dict[str, str]:
    """Flat key=value file; blank lines and # comments ignored."""
    known = set(_PARAM_KEYS) | set(_GRID_KEYS) | set(_RUN_KEYS)
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if not value:
            raise ConfigError(f"{path}:{lineno}: empty value for {key!r}")
        values[key] = value
    return values


def _as_float(values: dict[str, str], key: str, default: float | None = None) -> float:
    if key not in values:
        if default is None:
            raise ConfigError(f"missing required config key {key!r}")
        return default
    try:
        return float(values[key])
    except ValueError as exc:
        raise ConfigError(f"config key {key!r}: not a number: {values[key]!r}") from exc


def _as_int(values: dict[str, str], key: str, default: int) -> int:
    if key not in values:
        return default
    try:
        return int(values[key])
    except ValueError as exc:
        raise ConfigError(f"config key {key!r}: not an integer: {values[key]!r}") from exc


def _as_bool(text: str, key: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"config key {key!r}: not a boolean: {text!r}")


def _parse_modes(text: str) -> tuple[str, ...]:
    modes = tuple(m.strip() for m in text.split(",") if m.strip())
    for m in modes:
        if m not in ALL_MODES:
            raise ConfigError(f"unknown mode {m!r}; choose from {', '.join(ALL_MODES)}")
    if not modes:
        raise ConfigError("empty mode list")
    return modes


def _parse_sweep(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"sweep must be START:END:STEPS, got {text!r}")
    try:
        start, end, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad sweep range {text!r}") from exc
    if not (start < end):
        raise ConfigError(f"sweep needs START < END, got {start} >= {end}")
    if steps < 2:
        raise ConfigError(f"sweep needs STEPS >= 2, got {steps}")
    return start, end, steps


def _parse_nrmax(text: str) -> int | None:
    if text.strip().lower() == "all":
        return None
    try:
        n = int(text)
    except ValueError as exc:
        raise ConfigError(f"nrmax must be an integer or 'all', got {text!r}") from exc
    if n < 0:
        raise ConfigError(f"nrmax must be >= 0, got {n}")
    return n


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Merge the config file with command-line overrides."""
    values = parse_config_file(args.config)
    params = HuaParameters(
        V0=_as_float(values, "V0"),
        b_h=_as_float(values, "b_h"),
        r_e=_as_float(values, "r_e"),
        q=_as_float(values, "q"),
        mass_factor=_as_float(values, "mass_factor", 1.0),
        D=_as_int(values, "D", 3),
    )
    grid = GridConfig(
        n_points=_as_int(values, "n_points", GridConfig.n_points),
        refinements=_as_int(values, "refinements", GridConfig.refinements),
        tail_scale=_as_float(values, "tail_scale", GridConfig.tail_scale),
        wall_factor=_as_float(values, "wall_factor", GridConfig.wall_factor),
    )
    l_max = args.lmax if args.lmax is not None else _as_int(values, "lmax", 0)
    if l_max < 0:
        raise ConfigError(f"lmax must be >= 0, got {l_max}")
    l = _as_int(values, "l", 0)
    if l < 0:
        raise ConfigError(f"l must be >= 0, got {l}")
    if args.nrmax is not None:
        n_r_max = _parse_nrmax(args.nrmax)
    elif "nrmax" in values:
        n_r_max = _parse_nrmax(values["nrmax"])
    else:
        n_r_max = None
    modes = _parse_modes(args.modes if args.modes is not None else values.get("modes", "closed"))
    if args.sweep is not None:
        sweep = _parse_sweep(args.sweep)
    elif "sweep" in values:
        sweep = _parse_sweep(values["sweep"])
    else:
        sweep = None
    out_format = args.format if args.format is not None else values.get("format", "csv")
    if out_format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {out_format!r}")
    out_path = args.out if args.out is not None else values.get("out")
    force = args.force or ("force" in values and _as_bool(values["force"], "force"))
    return RunConfig(
        parameters=params,
        l=l,
        l_max=l_max,
        n_r_max=n_r_max,
        modes=modes,
        sweep=sweep,
        out_format=out_format,
        out_path=out_path,
        force=force,
        grid=grid,
    )


# ---------------------------------------------------------------------------
# table serialization


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _row_dict(row) -> dict:
    return {f.name: getattr(row, f.name) for f in fields(row)}


def _serialize(rows, fieldnames: list[str], fmt: str) -> str:
    if fmt == "json":
        payload = [_row_dict(r) for r in rows]
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fieldnames)
    for row in rows:
        writer.writerow([_fmt_cell(getattr(row, name)) for name in fieldnames])
    return buf.getvalue()


def _emit(text: str, out_path: str | None) -> None:
    """Print to stdout, or write atomically (temp file + rename) to out_path."""
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _opt_int(cell: str) -> int | None:
    return int(cell) if cell != "" else None


def _opt_float(cell: str) -> float | None:
    return float(cell) if cell != "" else None


def read_report_rows_csv(path: str) -> list[ReportRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        return [
            ReportRow(
                D=int(rec["D"]),
                l=int(rec["l"]),
                n_r=int(rec["n_r"]),
                q=float(rec["q"]),
                E_closed=_opt_float(rec["E_closed"]),
                E_numeric_pekeris=_opt_float(rec["E_numeric_pekeris"]),
                E_numeric_exact=_opt_float(rec["E_numeric_exact"]),
                rel_diff_closed_vs_pekeris=_opt_float(rec["rel_diff_closed_vs_pekeris"]),
                pekeris_error=_opt_float(rec["pekeris_error"]),
                validity=rec["validity"] == "true",
                note=rec["note"],
            )
            for rec in reader
        ]


def read_report_rows_json(path: str) -> list[ReportRow]:
    with open(path, encoding="utf-8") as fh:
        return [ReportRow(**rec) for rec in json.load(fh)]


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(config: RunConfig) -> int:
    """Print threshold, q, pole radius and the gate verdict."""
    p = config.parameters
    report = validate_parameters(p)
    r0 = report.singularity_radius
    print(f"validity threshold e^(-b_h*r_e) = {report.threshold:.9f}")
    print(f"deformation q                  = {p.q:.9g}")
    print(f"singularity radius r0          = {'none (q <= 0)' if r0 is None else f'{r0:.9g}'}")
    if report.ok:
        print("result: PASS (within the validity window)")
        return EXIT_OK
    print(f"result: FAIL ({report.reason})")
    return EXIT_OK if config.force else EXIT_VALIDITY


def _closed_levels(config: RunConfig, l: int):
    """Closed-form energies for one channel, with per-level error notes."""
    p = config.parameters
    pek = pekeris_coefficients(p)
    try:
        count = count_bound_states(l, p, pek, force=config.force)
    except HuaError as exc:
        return None, 0, str(exc)
    return pek, count, None


def cmd_spectrum(config: RunConfig) -> int:
    """Emit one ReportRow per requested (l, n_r), columns per requested mode."""
    p = config.parameters
    report = validate_parameters(p)
    if not report.ok and not config.force:
        print(f"validation failed: {report.reason}", file=sys.stderr)
        return EXIT_VALIDITY
    want_closed = "closed" in config.modes
    rows: list[ReportRow] = []
    for l in range(config.l_max + 1):
        pek, closed_count, closed_err = _closed_levels(config, l)
        numeric: dict[str, np.ndarray] = {}
        for mode in ("numeric-pekeris", "numeric-exact"):
            if mode in config.modes:
                result = solve_bound_states(
                    p, l, mode.removeprefix("numeric-"), config.grid
                )
                numeric[mode] = result.energies
        if config.n_r_max is not None:
            n_rows = config.n_r_max + 1
        else:
            candidates = [closed_count if pek is not None else 0]
            candidates += [len(e) for e in numeric.values()]
            n_rows = max(candidates)
        for n_r in range(n_rows):
            e_closed = None
            note = ""
            if want_closed:
                if pek is None:
                    note = closed_err
                else:
                    try:
                        e_closed = energy_level(
                            QuantumNumbers(n_r, l), p, pek, force=config.force
                        ).energy
                    except (UnboundLevelError, LadderDegenerateError,
                            NoRealSolutionError, ValidityError) as exc:
                        note = str(exc)
            e_np = numeric.get("numeric-pekeris")
            e_np_val = float(e_np[n_r]) if e_np is not None and n_r < len(e_np) else None
            e_ne = numeric.get("numeric-exact")
            e_ne_val = float(e_ne[n_r]) if e_ne is not None and n_r < len(e_ne) else None
            rel = None
            if e_closed is not None and e_np_val is not None and e_np_val != 0.0:
                rel = abs(e_closed - e_np_val) / abs(e_np_val)
            pek_err = None
            if e_np_val is not None and e_ne_val is not None:
                pek_err = e_ne_val - e_np_val
            rows.append(
                ReportRow(
                    D=p.D,
                    l=l,
                    n_r=n_r,
                    q=p.q,
                    E_closed=e_closed,
                    E_numeric_pekeris=e_np_val,
                    E_numeric_exact=e_ne_val,
                    rel_diff_closed_vs_pekeris=rel,
                    pekeris_error=pek_err,
                    validity=report.ok,
                    note=note,
                )
            )
    names = [f.name for f in fields(ReportRow)]
    _emit(_serialize(rows, names, config.out_format), config.out_path)
    return EXIT_OK


def cmd_sweep_q(config: RunConfig) -> int:
    """Closed-form energies of channel l over a q grid, gated per q."""
    if config.sweep is None:
        raise ConfigError("sweep-q needs --sweep START:END:STEPS (or a sweep= config key)")
    p = config.parameters
    start, end, steps = config.sweep
    threshold = p.pekeris_threshold
    if end < threshold or start >= 1.0:
        raise ValidityError(
            f"sweep [{start:.6g}, {end:.6g}] misses the validity window "
            f"[{threshold:.9f}, 1) entirely"
        )
    rows: list[SweepRow] = []
    for q in np.linspace(start, end, steps):
        q = float(q)
        in_window = threshold <= q < 1.0
        computable = 0.0 < q < 1.0 and (in_window or config.force)
        if not computable:
            note = "" if in_window else "outside validity window"
            rows.append(SweepRow(q=q, n_r=None, E=None, validity=in_window, note=note))
            continue
        pq = HuaParameters(p.V0, p.b_h, p.r_e, q, p.mass_factor, p.D)
        pek = pekeris_coefficients(pq)
        count = count_bound_states(config.l, pq, pek, force=config.force)
        if count == 0:
            rows.append(
                SweepRow(q=q, n_r=None, E=None, validity=in_window, note="no bound states")
            )
            continue
        for n_r in range(count):
            level = energy_level(QuantumNumbers(n_r, config.l), pq, pek, force=config.force)
            rows.append(SweepRow(q=q, n_r=n_r, E=level.energy, validity=in_window))
    names = [f.name for f in fields(SweepRow)]
    _emit(_serialize(rows, names, config.out_format), config.out_path)
    return EXIT_OK


def cmd_wavefunction(config: RunConfig, n_samples: int = 2001) -> int:
    """Sample the closed-form ground-state wavefunction of channel l as CSV."""
    p = config.parameters
    report = validate_parameters(p)
    if not report.ok and not config.force:
        print(f"validation failed: {report.reason}", file=sys.stderr)
        return EXIT_VALIDITY
    pek = pekeris_coefficients(p)
    eff = effective_coefficients(p, config.l, pek)
    state = superpotential_params(eff)
    if not state.admissible:
        raise AdmissibilityError(
            f"A + B = {state.A + state.B:.6g} <= 0 for l = {config.l}: "
            "no normalizable ground state"
        )
    x_lo, x_hi = ground_state_window(state, p.q)
    x = np.linspace(x_lo, x_hi, n_samples)
    r = p.r_e * (1.0 + x)
    amplitude = ground_state_wavefunction(x, state, p.q)
    norm = math.sqrt(np.trapezoid(amplitude**2, r))
    lines = ["r,R_unnormalized,R_normalized"]
    for ri, ai in zip(r, amplitude):
        lines.append(f"{ri:.17g},{ai:.17g},{ai / norm:.17g}")
    _emit("\n".join(lines) + "\n", config.out_path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route usage errors to the config exit code
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="huabound", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("validate", "check the validity gate and report the threshold"),
        ("spectrum", "tabulate bound-state energies per requested mode"),
        ("sweep-q", "closed-form energies across a deformation sweep"),
        ("wavefunction", "sample the ground-state wavefunction"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="key=value parameter file")
        cmd.add_argument("--force", action="store_true",
                         help="downgrade the validity gate to a warning")
        cmd.add_argument("--format", choices=("csv", "json"), default=None)
        cmd.add_argument("--out", default=None, help="output path (default stdout)")
        cmd.add_argument("--modes", default=None,
                         help="comma list from: " + ", ".join(ALL_MODES))
        cmd.add_argument("--lmax", type=int, default=None)
        cmd.add_argument("--nrmax", default=None, help="integer or 'all'")
        cmd.add_argument("--sweep", default=None, help="START:END:STEPS")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = build_run_config(args)
        dispatch = {
            "validate": cmd_validate,
            "spectrum": cmd_spectrum,
            "sweep-q": cmd_sweep_q,
            "wavefunction": cmd_wavefunction,
        }
        return dispatch[args.command](config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ValidityError, HuaDomainError, AdmissibilityError, NoRealSolutionError,
            UnboundLevelError, LadderDegenerateError) as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDITY


if __name__ == "__main__":
    sys.exit(main())
