"""Command line interface: config parsing, run commands, table emission.

Four commands are provided.  `solve` computes the lowest levels of one
configuration, `scan` tabulates them against a list of mesh orders,
`compare` runs the momentum-space and configuration-space solvers side by
side, and `reproduce` reruns one of the three stored benchmark campaigns
and grades the output against the stored references.

Configuration files are plain-text key-value documents in INI form; all
sections are merged, so sections serve only as visual grouping.  Command
line flags override file values.  Exit status is 0 when every requested
level was produced and passed the acceptance filters, 2 on configuration
errors, and 3 on numerical failures.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import momentum as mom
from . import radial
from . import references as refs

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

COMMANDS = ("solve", "scan", "compare", "reproduce")
POTENTIALS = ("linear", "coulomb", "cornell")
FORMATS = ("csv", "json", "pretty")

CSV_FIELDS = ("ell", "n", "N", "sigma", "epsilon", "mass_gev", "residual", "imag")

_KNOWN_KEYS = {
    "command", "potential", "alpha", "s", "beta", "mass", "ell", "levels",
    "N", "sigma", "mapping", "kinetic", "format", "out", "table",
}


class ConfigError(ValueError):
    """Raised for malformed or inconsistent run configurations."""


@dataclass
class RunConfig:
    """Validated run description with all defaults filled in."""

    command: str = "solve"
    potential: str = "linear"
    alpha: float = 0.0
    s: float = 1.0
    beta: float | None = None          # GeV^2, physical runs only
    mass_gev: float | None = None      # quark mass, physical runs only
    ell: tuple = (0,)
    levels: int = 5
    N: tuple = (100,)
    sigma: float = 1.0
    mapping: str = mom.MappingKind.RATIONAL
    kinetic: str = mom.KineticMode.NONRELATIVISTIC
    format: str = "pretty"
    out: str | None = None
    table: int | None = None

    @property
    def physical(self):
        """True when energies carry GeV units (beta and quark mass given)."""
        return self.beta is not None

    @property
    def scales(self):
        if not self.physical:
            return None
        return refs.PhysicalScales(self.mass_gev, self.beta)


def _parse_int_list(text, name):
    try:
        values = tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise ConfigError(f"field {name!r} must be a list of integers, got {text!r}")
    if not values:
        raise ConfigError(f"field {name!r} is empty")
    return values


def _parse_float(text, name):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"field {name!r} must be a number, got {text!r}")


def parse_config(text):
    """Parse a key-value document into a validated RunConfig.

    The document uses INI syntax; a leading section header is optional and
    all sections are merged into a single namespace.  Unknown keys are
    rejected with a message listing them.
    """
    parser = configparser.ConfigParser()
    parser.optionxform = str
    body = text if text.lstrip().startswith("[") else "[run]\n" + text
    try:
        parser.read_string(body)
    except configparser.Error as exc:
        raise ConfigError(f"malformed configuration: {exc}")

    raw = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            if key in raw:
                raise ConfigError(f"duplicate key {key!r}")
            raw[key] = value.strip()

    unknown = sorted(set(raw) - _KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
    return build_config(raw)


def build_config(raw):
    """Validate a flat key-value mapping and fill defaults."""
    cfg = RunConfig()

    if "command" in raw:
        cfg.command = raw["command"]
    if cfg.command not in COMMANDS:
        raise ConfigError(f"field 'command' must be one of {COMMANDS}, got {cfg.command!r}")
    if "potential" in raw:
        cfg.potential = raw["potential"]
    if cfg.potential not in POTENTIALS:
        raise ConfigError(f"field 'potential' must be one of {POTENTIALS}, got {cfg.potential!r}")

    if "alpha" in raw:
        cfg.alpha = _parse_float(raw["alpha"], "alpha")
    if "s" in raw:
        cfg.s = _parse_float(raw["s"], "s")
    if "beta" in raw:
        cfg.beta = _parse_float(raw["beta"], "beta")
    if "mass" in raw:
        cfg.mass_gev = _parse_float(raw["mass"], "mass")
    if "ell" in raw:
        cfg.ell = _parse_int_list(raw["ell"], "ell")
    if "levels" in raw:
        cfg.levels = int(_parse_float(raw["levels"], "levels"))
    if "N" in raw:
        cfg.N = _parse_int_list(raw["N"], "N")
    if "sigma" in raw:
        cfg.sigma = _parse_float(raw["sigma"], "sigma")
    if "mapping" in raw:
        cfg.mapping = raw["mapping"]
    if "kinetic" in raw:
        cfg.kinetic = raw["kinetic"]
    if "format" in raw:
        cfg.format = raw["format"]
    if "out" in raw:
        cfg.out = raw["out"]
    if "table" in raw:
        cfg.table = int(_parse_float(raw["table"], "table"))

    _validate(cfg)
    return cfg


def _validate(cfg):
    if cfg.mapping not in mom.MappingKind.ALL:
        raise ConfigError(f"field 'mapping' must be one of {mom.MappingKind.ALL}, got {cfg.mapping!r}")
    if cfg.kinetic not in (mom.KineticMode.NONRELATIVISTIC, mom.KineticMode.SALPETER):
        raise ConfigError(f"field 'kinetic' has invalid value {cfg.kinetic!r}")
    if cfg.format not in FORMATS:
        raise ConfigError(f"field 'format' must be one of {FORMATS}, got {cfg.format!r}")
    if cfg.sigma <= 0.0:
        raise ConfigError("field 'sigma' must be positive")
    if cfg.levels < 1:
        raise ConfigError("field 'levels' must be at least 1")
    if any(N < 2 for N in cfg.N):
        raise ConfigError("field 'N' entries must be at least 2 (mesh order)")
    if any(l < 0 for l in cfg.ell):
        raise ConfigError("field 'ell' entries must be nonnegative")
    if cfg.command == "reproduce":
        if cfg.table not in (1, 2, 3):
            raise ConfigError("command 'reproduce' requires field 'table' in {1, 2, 3}")
        return
    if cfg.physical or cfg.potential == "cornell":
        if cfg.beta is None or cfg.beta <= 0.0:
            raise ConfigError("physical runs require field 'beta' > 0 (GeV^2)")
        if cfg.mass_gev is None or cfg.mass_gev <= 0.0:
            raise ConfigError("physical runs require field 'mass' > 0 (GeV)")
        # unit conversion a = 1/sqrt(beta): s = sqrt(beta)/m for equal masses
        cfg.s = cfg.scales.s
    else:
        if cfg.s <= 0.0:
            raise ConfigError("dimensionless runs require field 's' > 0")
    if cfg.potential == "coulomb" and cfg.alpha <= 0.0:
        raise ConfigError("potential 'coulomb' requires field 'alpha' > 0")
    if cfg.potential == "cornell" and cfg.alpha <= 0.0:
        raise ConfigError("potential 'cornell' requires field 'alpha' > 0")


def _potential_params(cfg, ell):
    include_linear = cfg.potential in ("linear", "cornell")
    include_coulomb = cfg.potential in ("coulomb", "cornell")
    am = 0.0
    if cfg.kinetic == mom.KineticMode.SALPETER:
        if not cfg.physical:
            raise ConfigError("salpeter kinetic mode requires physical parameters")
        am = cfg.scales.am
    return mom.PotentialParams(
        ell=ell, alpha=cfg.alpha if include_coulomb else 0.0, s=cfg.s,
        include_linear=include_linear, include_coulomb=include_coulomb,
        kinetic_mode=cfg.kinetic, am1=am, am2=am,
    )


# ---------------------------------------------------------------------------
# reports

@dataclass
class Report:
    """Result of one run: table rows, human diagnostics, exit status."""

    command: str
    rows: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    status: int = EXIT_OK

    def to_dict(self):
        return {
            "command": self.command,
            "rows": self.rows,
            "diagnostics": self.diagnostics,
            "extra": self.extra,
            "status": self.status,
        }


def report_to_json(report):
    """Serialize a report; floats survive a round trip bit-exactly."""
    return json.dumps(report.to_dict(), indent=2)


def report_from_json(text):
    data = json.loads(text)
    return Report(command=data["command"], rows=data["rows"],
                  diagnostics=data["diagnostics"], extra=data["extra"],
                  status=data["status"])


def _row(ell, n, N, sigma, epsilon, mass_gev, residual, imag):
    return {
        "ell": ell, "n": n, "N": N, "sigma": sigma,
        "epsilon": float(epsilon),
        "mass_gev": None if mass_gev is None else float(mass_gev),
        "residual": float(residual), "imag": float(imag),
    }


def _level_rows(cfg, levels, N, scales=None):
    rows = []
    for lv in levels:
        mass = scales.mass_gev(lv.epsilon) if scales is not None else None
        rows.append(_row(lv.ell, lv.n, N, cfg.sigma, lv.epsilon, mass,
                         lv.residual_norm, lv.imag_part))
    return rows


# ---------------------------------------------------------------------------
# commands

def _run_solve(cfg):
    report = Report("solve")
    mapping = mom.Mapping(kind=cfg.mapping, sigma=cfg.sigma)
    N = cfg.N[0]
    for ell in cfg.ell:
        params = _potential_params(cfg, ell)
        levels, complete = mom.solve_levels(params, N, mapping, cfg.levels)
        report.rows.extend(_level_rows(cfg, levels, N, cfg.scales))
        if not complete:
            report.status = EXIT_NUMERICAL
            report.diagnostics.append(
                f"ell={ell}: only {len(levels)} of {cfg.levels} levels passed the filters")
    return report


def _run_scan(cfg):
    report = Report("scan")
    diffs = {}
    for ell in cfg.ell:
        params = _potential_params(cfg, ell)
        scan = mom.convergence_scan(params, cfg.sigma, list(cfg.N),
                                    count=cfg.levels, mapping_kind=cfg.mapping)
        for k, N in enumerate(scan["N"]):
            for n in range(cfg.levels):
                eps = scan["epsilon"][k, n]
                if np.isnan(eps):
                    report.status = EXIT_NUMERICAL
                    report.diagnostics.append(f"ell={ell} N={N}: level n={n} missing")
                    continue
                report.rows.append(_row(ell, n, N, cfg.sigma, eps,
                                        None if cfg.scales is None
                                        else cfg.scales.mass_gev(eps), 0.0, 0.0))
        diffs[str(ell)] = [[None if np.isnan(d) else float(d) for d in row]
                           for row in scan["diffs"]]
    report.extra["successive_differences"] = diffs
    return report


def _radial_problem(cfg, ell, n):
    include_linear = cfg.potential in ("linear", "cornell")
    include_coulomb = cfg.potential in ("coulomb", "cornell")
    return radial.RadialProblem(
        ell=ell,
        alpha=cfg.alpha if include_coulomb else 0.0,
        linear_slope=1.0 if include_linear else 0.0,
        mu_a=1.0 / (2.0 * cfg.s),
        n=n,
    )


def _run_compare(cfg):
    if cfg.kinetic != mom.KineticMode.NONRELATIVISTIC:
        raise ConfigError("compare supports only the nonrelativistic kinetic mode")
    report = Report("compare")
    mapping = mom.Mapping(kind=cfg.mapping, sigma=cfg.sigma)
    N = cfg.N[0]
    paired = []
    for ell in cfg.ell:
        params = _potential_params(cfg, ell)
        levels, complete = mom.solve_levels(params, N, mapping, cfg.levels)
        if not complete:
            report.status = EXIT_NUMERICAL
            report.diagnostics.append(
                f"ell={ell}: only {len(levels)} of {cfg.levels} levels passed the filters")
        report.rows.extend(_level_rows(cfg, levels, N, cfg.scales))
        for lv in levels:
            try:
                eps_r = radial.solve_radial(_radial_problem(cfg, ell, lv.n))
            except RuntimeError as exc:
                report.status = EXIT_NUMERICAL
                report.diagnostics.append(f"ell={ell} n={lv.n}: coordinate solver failed: {exc}")
                continue
            delta = lv.epsilon - eps_r
            paired.append({"ell": ell, "n": lv.n, "momentum": float(lv.epsilon),
                           "coordinate": float(eps_r), "delta": float(delta)})
            report.diagnostics.append(
                f"ell={ell} n={lv.n}: momentum {lv.epsilon:.7g} "
                f"coordinate {eps_r:.7g} delta {delta:.2e}")
    report.extra["compare"] = paired
    return report


def _grade(report, label, passed):
    report.diagnostics.append(f"{label}: {'pass' if passed else 'FAIL'}")
    if not passed:
        report.status = EXIT_NUMERICAL


def _run_reproduce(cfg):
    report = Report("reproduce")
    report.extra["table"] = cfg.table
    if cfg.table == 1:
        _reproduce_table1(report)
    elif cfg.table == 2:
        _reproduce_table2(report)
    else:
        _reproduce_table3(report)
    return report


def _reproduce_table1(report):
    mapping = mom.Mapping(sigma=refs.TABLE1_SIGMA)
    mu_a = 1.0 / (2.0 * refs.TABLE1_S)
    for ell in range(4):
        params = refs.coulomb_params(ell)
        levels, complete = mom.solve_levels(params, refs.TABLE1_N, mapping, 5)
        if not complete:
            report.status = EXIT_NUMERICAL
            report.diagnostics.append(f"ell={ell}: incomplete level set")
        for lv in levels:
            exact = radial.hydrogen_energy(lv.n, ell, refs.TABLE1_ALPHA, mu_a)
            rel = abs(lv.epsilon / exact - 1.0)
            report.rows.append(_row(ell, lv.n, refs.TABLE1_N, refs.TABLE1_SIGMA,
                                    lv.epsilon, None, lv.residual_norm, lv.imag_part))
            _grade(report, f"ell={ell} n={lv.n} rel err {rel:.1e} (tol 1e-8)",
                   rel <= 1e-8)


def _reproduce_table2(report):
    for ell, exact_row in refs.TABLE2_EXACT.items():
        N = refs.TABLE2_N[ell]
        sigma = refs.TABLE2_SIGMA[ell]
        params = refs.linear_params(ell)
        levels, complete = mom.solve_levels(params, N, mom.Mapping(sigma=sigma), 5)
        if not complete:
            report.status = EXIT_NUMERICAL
            report.diagnostics.append(f"ell={ell}: incomplete level set")
        for lv in levels:
            err = abs(lv.epsilon - exact_row[lv.n])
            report.rows.append(_row(ell, lv.n, N, sigma, lv.epsilon, None,
                                    lv.residual_norm, lv.imag_part))
            _grade(report, f"ell={ell} n={lv.n} eps {lv.epsilon:.7f} "
                           f"vs {exact_row[lv.n]:.6f} (tol 2e-6)", err <= 2e-6)


def _reproduce_table3(report):
    mapping = mom.Mapping(sigma=refs.TABLE3_SIGMA)
    for flavor in ("charm", "bottom"):
        scales = refs.physical_scales(flavor)
        for ell in range(3):
            params = refs.cornell_params(flavor, ell)
            levels, complete = mom.solve_levels(params, refs.TABLE3_N, mapping, 3)
            if not complete:
                report.status = EXIT_NUMERICAL
                report.diagnostics.append(f"{flavor} ell={ell}: incomplete level set")
            for lv in levels:
                mass = scales.mass_gev(lv.epsilon)
                ref = refs.TABLE3_MASS_GEV[flavor][ell][lv.n]
                tol = (refs.TABLE3_DISPUTED_TOL_GEV
                       if (flavor, ell, lv.n) == refs.TABLE3_DISPUTED
                       else refs.TABLE3_TOL_GEV)
                report.rows.append(_row(ell, lv.n, refs.TABLE3_N, refs.TABLE3_SIGMA,
                                        lv.epsilon, mass, lv.residual_norm, lv.imag_part))
                _grade(report, f"{flavor} ell={ell} n={lv.n} M {mass:.4f} "
                               f"vs {ref:.4f} GeV (tol {tol:g})",
                       abs(mass - ref) <= tol)


def run(cfg):
    """Execute a validated RunConfig and return the Report."""
    handlers = {"solve": _run_solve, "scan": _run_scan,
                "compare": _run_compare, "reproduce": _run_reproduce}
    return handlers[cfg.command](cfg)


# ---------------------------------------------------------------------------
# emission

def emit_csv(report):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS)
    writer.writeheader()
    for row in report.rows:
        out = dict(row)
        if out["mass_gev"] is None:
            out["mass_gev"] = ""
        writer.writerow(out)
    return buf.getvalue()


def emit_pretty(report):
    lines = [f"command: {report.command}"]
    header = f"{'ell':>4} {'n':>3} {'N':>5} {'sigma':>7} {'epsilon':>14} {'M [GeV]':>10} {'residual':>9}"
    lines.append(header)
    for row in report.rows:
        mass = "" if row["mass_gev"] is None else f"{row['mass_gev']:.4f}"
        lines.append(f"{row['ell']:>4} {row['n']:>3} {row['N']:>5} "
                     f"{row['sigma']:>7.3g} {row['epsilon']:>14.7g} "
                     f"{mass:>10} {row['residual']:>9.1e}")
    lines.extend(report.diagnostics)
    lines.append(f"status: {report.status}")
    return "\n".join(lines) + "\n"


def emit(report, fmt):
    if fmt == "csv":
        return emit_csv(report)
    if fmt == "json":
        return report_to_json(report) + "\n"
    return emit_pretty(report)


# ---------------------------------------------------------------------------
# entry point

def _build_argparser():
    ap = argparse.ArgumentParser(
        prog="chebquark",
        description="Momentum-space Coulomb-plus-linear bound states on a Chebyshev mesh")
    ap.add_argument("--config", help="path to a key-value configuration file")
    ap.add_argument("--command", choices=COMMANDS)
    ap.add_argument("--table", type=int, choices=(1, 2, 3))
    ap.add_argument("--ell", help="orbital momenta, e.g. '0,1,2'")
    ap.add_argument("--levels", type=int)
    ap.add_argument("--N", help="mesh order, or list for scans, e.g. '50,100,200'")
    ap.add_argument("--sigma", type=float)
    ap.add_argument("--format", choices=FORMATS)
    ap.add_argument("--out", help="output path (default: stdout)")
    return ap


def main(argv=None):
    args = _build_argparser().parse_args(argv)
    raw = {}
    try:
        if args.config:
            try:
                with open(args.config) as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config file: {exc}")
            cfg = parse_config(text)
        else:
            cfg = RunConfig()
        # command line overrides
        if args.command:
            raw["command"] = args.command
        if args.table is not None:
            raw["table"] = str(args.table)
        if args.ell:
            raw["ell"] = args.ell
        if args.levels is not None:
            raw["levels"] = str(args.levels)
        if args.N:
            raw["N"] = args.N
        if args.sigma is not None:
            raw["sigma"] = str(args.sigma)
        if args.format:
            raw["format"] = args.format
        if args.out:
            raw["out"] = args.out
        if raw:
            merged = _config_as_raw(cfg)
            merged.update(raw)
            cfg = build_config(merged)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        report = run(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (RuntimeError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    text = emit(report, cfg.format)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report.status


def _config_as_raw(cfg):
    """Flatten a RunConfig back to the raw key-value form for overriding."""
    raw = {
        "command": cfg.command,
        "potential": cfg.potential,
        "alpha": repr(cfg.alpha),
        "s": repr(cfg.s),
        "ell": " ".join(str(l) for l in cfg.ell),
        "levels": str(cfg.levels),
        "N": " ".join(str(n) for n in cfg.N),
        "sigma": repr(cfg.sigma),
        "mapping": cfg.mapping,
        "kinetic": cfg.kinetic,
        "format": cfg.format,
    }
    if cfg.beta is not None:
        raw["beta"] = repr(cfg.beta)
    if cfg.mass_gev is not None:
        raw["mass"] = repr(cfg.mass_gev)
    if cfg.out is not None:
        raw["out"] = cfg.out
    if cfg.table is not None:
        raw["table"] = str(cfg.table)
    return raw


if __name__ == "__main__":
    sys.exit(main())
