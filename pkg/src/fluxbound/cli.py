"""Command-line front end: solves, sweeps, density scans, oracle checks.

Emits CSV (17 significant digits, '\\n' line endings) or JSON tables with
deterministic, byte-identical output for identical inputs.  Exit codes:
0 success, 2 domain/usage errors (critical or regular regime requests,
bad flags), 1 internal failure.  Sweep grid points are evaluated by a thread
pool capped by FLUXBOUND_THREADS (default 1) and assembled in grid order.

A flat ``key = value`` config file (# comments) can prefill any long flag;
explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from . import ab_spectrum as ab
from . import ac_spectrum as ac
from . import numkernel as nk
from . import oracle as orc

__all__ = ["main", "parse_args", "run", "emit_table", "RunSpec"]

_COMMANDS = (
    "ab-solve",
    "ab-sweep",
    "ab-density",
    "ab-wavefunction",
    "ac-solve",
    "ac-sweep",
    "oracle-check",
)

_SWEEP_COLUMNS = ("beta", "l", "s", "mu", "nu", "tau", "xi", "E_over_m", "lambda_over_m", "residual")
_DENSITY_COLUMNS = ("E_over_m", "density")
_WAVEFUNCTION_COLUMNS = ("r_times_m", "f1", "f2")
_AC_COLUMNS = ("gamma", "l", "zeta", "coupling", "xi", "E_over_m", "kappa_over_m", "residual")
_ORACLE_COLUMNS = (
    "E_analytic_over_m",
    "E_oracle_over_m",
    "abs_diff_over_m",
    "match_residual",
    "r_min_sensitivity",
    "convergence_order",
)


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunSpec:
    """Validated run request: command, typed parameters, output destination."""

    command: str
    params: dict
    fmt: str
    out_path: Optional[str]


def _parse_grid(text: str) -> tuple[float, float, int]:
    try:
        lo_s, hi_s, n_s = text.split(":")
        lo, hi, n = float(lo_s), float(hi_s), int(n_s)
    except ValueError as exc:
        raise UsageError(f"grid must be 'lo:hi:n', got {text!r}") from exc
    if n < 2:
        raise UsageError(f"grid needs at least 2 points, got {n}")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise UsageError(f"grid bounds must be finite and increasing, got {text!r}")
    return lo, hi, n


def _grid_points(lo: float, hi: float, n: int) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, 1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, val = (part.strip() for part in text.split("=", 1))
            values[key.replace("-", "_")] = val
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxbound",
        description="Bound states and spectral densities in point-flux backgrounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, ab_channel=False, ac_channel=False) -> None:
        p.add_argument("--config", default=None, help="flat key=value config file")
        p.add_argument("--mass", type=float, default=1.0)
        p.add_argument("--xi", type=float, default=None)
        p.add_argument("--theta", type=float, default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", default=None, help="path, defaults to stdout")
        if ab_channel:
            p.add_argument("--l", type=int, default=0)
            p.add_argument("--s", type=int, choices=(-1, 1), default=-1)
            p.add_argument("--mu", type=float, default=None)
        if ac_channel:
            p.add_argument("--l", type=int, default=0)
            p.add_argument("--zeta", type=int, choices=(-1, 1), default=1)
            p.add_argument("--coupling", type=float, default=None, help="M*a product")
            p.add_argument("--gamma", type=float, default=None, help="shortcut: coupling=-gamma, l=0, zeta=1")

    p = sub.add_parser("ab-solve", help="single Dirac bound level")
    common(p, ab_channel=True)
    p.add_argument("--level-eq", choices=("master", "wr00", "levab", "lev0lev1"), default="master")

    p = sub.add_parser("ab-sweep", help="bound level along a flux grid")
    common(p, ab_channel=True)
    p.add_argument("--beta-grid", required=True, help="lo:hi:n over the reduced flux")
    p.add_argument("--level-eq", choices=("master", "wr00", "levab", "lev0lev1"), default="master")

    p = sub.add_parser("ab-density", help="continuum spectral density scan")
    common(p, ab_channel=True)
    p.add_argument("--energy-grid", required=True, help="lo:hi:n in units of m, |E|>m")

    p = sub.add_parser("ab-wavefunction", help="normalized bound doublet table")
    common(p, ab_channel=True)
    p.add_argument("--r-grid", required=True, help="lo:hi:n in units of 1/m")

    p = sub.add_parser("ac-solve", help="single neutral-fermion level")
    common(p, ac_channel=True)

    p = sub.add_parser("ac-sweep", help="levels along a gamma grid (l=0 family)")
    common(p, ac_channel=True)
    p.add_argument("--gamma-grid", required=True, help="lo:hi:n over gamma")

    p = sub.add_parser("oracle-check", help="ODE eigensolver vs analytic level")
    common(p, ab_channel=True)
    p.add_argument("--sector", choices=("ab", "ac"), default="ab")
    p.add_argument("--zeta", type=int, choices=(-1, 1), default=1)
    p.add_argument("--coupling", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None, help="shortcut: coupling=-gamma, l=0, zeta=1")
    p.add_argument("--r-min", type=float, default=1e-6)
    p.add_argument("--resolution", type=float, default=None, help="override integrator resolution")
    return parser


def parse_args(argv: Sequence[str]) -> RunSpec:
    """Parse and validate argv into a RunSpec; config-file values are
    overridden by explicit flags."""
    parser = _build_parser()
    ns = parser.parse_args(list(argv))
    params = vars(ns)
    config_path = params.pop("config", None)
    if config_path:
        file_vals = _read_config(config_path)
        given = _given_flags(argv)
        for key, raw in file_vals.items():
            if key in params and key not in given:
                current = params[key]
                if isinstance(current, bool):
                    params[key] = raw.lower() in ("1", "true", "yes")
                elif isinstance(current, int) and not isinstance(current, bool):
                    params[key] = int(raw)
                elif isinstance(current, float):
                    params[key] = float(raw)
                elif current is None:
                    try:
                        params[key] = float(raw)
                    except ValueError:
                        params[key] = raw
                else:
                    params[key] = raw
    if params.get("xi") is not None and params.get("theta") is not None:
        raise UsageError("give exactly one of --xi / --theta, not both")
    if params.get("xi") is None and params.get("theta") is None:
        raise UsageError("one of --xi / --theta is required")
    command = params.pop("command")
    fmt = params.pop("format")
    out_path = params.pop("output")
    return RunSpec(command=command, params=params, fmt=fmt, out_path=out_path)


def _given_flags(argv: Sequence[str]) -> set[str]:
    out = set()
    for token in argv:
        if token.startswith("--"):
            out.add(token[2:].split("=", 1)[0].replace("-", "_"))
    return out


def _extension(params: dict) -> ab.Extension:
    if params.get("theta") is not None:
        return ab.Extension(params["theta"])
    xi = params["xi"]
    return ab.Extension.from_xi(xi)


def _fmt_float(x: float) -> str:
    return format(x, ".17g")


def emit_table(rows: list[dict], columns: Sequence[str], fmt: str) -> bytes:
    """Serialize rows to CSV (header + 17-significant-digit values) or JSON."""
    if fmt == "json":
        payload = [
            {
                col: (row[col] if isinstance(row[col], (int, str)) else float(row[col]))
                for col in columns
            }
            for row in rows
        ]
        return (json.dumps(payload, indent=1, sort_keys=False) + "\n").encode()
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for col in columns:
            val = row[col]
            cells.append(str(val) if isinstance(val, (int, str)) else _fmt_float(val))
        lines.append(",".join(cells))
    return ("\n".join(lines) + "\n").encode()


def _workers() -> int:
    env = os.environ.get("FLUXBOUND_THREADS", "")
    try:
        n = int(env) if env else 1
    except ValueError:
        n = 1
    return max(1, n)


def _map_ordered(fn, items):
    n = _workers()
    if n == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _solve_with_variant(ch: ab.DiracChannel, ext: ab.Extension, variant: str):
    """Bound level per the selected printed equation (comparison modes share
    the master solution's energy sign, since the printed forms see only
    lambda)."""
    if variant == "master":
        return ab.solve_bound_energy(ch, ext)
    master = ab.solve_bound_energy(ch, ext)
    if master is None:
        return None
    xi = ext.xi
    sign = 1.0 if master.E >= 0.0 else -1.0

    if variant == "wr00":
        def eqn(lam_log: float) -> float:
            lam = math.exp(lam_log)
            e_abs = math.sqrt(max(ch.m**2 - lam * lam, 0.0))
            return ab.paper_omega_xi(ch, ext, sign * e_abs)

    elif variant == "levab":
        def eqn(lam_log: float) -> float:
            lam = math.exp(lam_log)
            e_abs = math.sqrt(max(ch.m**2 - lam * lam, 0.0))
            return ab.paper_level_lhs(ch, sign * e_abs, "levab") - xi

    else:  # lev0lev1
        beta = ch.flux_parts.beta
        which = "lev0" if beta < 0.5 else "lev1"

        def eqn(lam_log: float) -> float:
            lam = math.exp(lam_log)
            e_abs = math.sqrt(max(ch.m**2 - lam * lam, 0.0))
            return ab.paper_level_lhs(ch, sign * e_abs, which) - xi

    lo = math.log(ch.m) - 13.0
    hi = math.log(ch.m * (1.0 - 1e-9))
    f_lo, f_hi = eqn(lo), eqn(hi)
    if f_lo * f_hi > 0.0:
        return None
    lam = math.exp(nk.find_root_bracketed(eqn, nk.Bracket(lo, hi, f_lo, f_hi), tol_x=1e-14))
    e_val = sign * math.sqrt(max(ch.m**2 - lam * lam, 0.0))
    return ab.BoundLevel(
        E=e_val,
        lam=lam,
        xi=xi,
        channel=ch,
        residual=abs(eqn(math.log(lam))),
        provenance="analytic",
    )


def _sweep_row(ch: ab.DiracChannel, ext: ab.Extension, variant: str) -> dict:
    level = _solve_with_variant(ch, ext, variant)
    n, beta = ch.flux_parts
    row = {
        "beta": beta,
        "l": ch.l,
        "s": ch.s,
        "mu": ch.mu,
        "nu": ch.nu,
        "tau": ch.tau,
        "xi": ext.xi,
        "E_over_m": math.nan,
        "lambda_over_m": math.nan,
        "residual": math.nan,
    }
    if level is not None:
        row["E_over_m"] = level.E / ch.m
        row["lambda_over_m"] = level.lam / ch.m
        row["residual"] = level.residual
    return row


def _ac_row(ch: ac.ACChannel, ext: ab.Extension) -> dict:
    level = ac.ac_bound_energy(ch, ext)
    row = {
        "gamma": ch.gamma,
        "l": ch.l,
        "zeta": ch.zeta,
        "coupling": ch.coupling,
        "xi": ext.xi,
        "E_over_m": math.nan,
        "kappa_over_m": math.nan,
        "residual": math.nan,
    }
    if level is not None:
        row["E_over_m"] = level.E_n / ch.m
        row["kappa_over_m"] = level.kappa / ch.m
        row["residual"] = level.residual
    return row


def _ac_channel(params: dict) -> ac.ACChannel:
    mass = params["mass"]
    if params.get("gamma") is not None:
        return ac.ACChannel(m=mass, coupling=-params["gamma"], l=0, zeta=1)
    if params.get("coupling") is None:
        raise UsageError("ac commands need --coupling (or --gamma)")
    return ac.ACChannel(
        m=mass, coupling=params["coupling"], l=params["l"], zeta=params["zeta"]
    )


def run(spec: RunSpec) -> int:
    """Execute a RunSpec, write the table, return the exit code."""
    try:
        rows, columns = _dispatch(spec)
    except (ab.RegimeError, ab.EnergyDomainError, UsageError, nk.KernelDomainError) as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "kind": "domain"}) + "\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "kind": "domain"}) + "\n")
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        sys.stderr.write(json.dumps({"error": str(exc), "kind": "internal"}) + "\n")
        return 1
    payload = emit_table(rows, columns, spec.fmt)
    if spec.out_path:
        with open(spec.out_path, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
    return 0


def _dispatch(spec: RunSpec) -> tuple[list[dict], Sequence[str]]:
    params = spec.params
    ext = _extension(params)
    mass = params.get("mass", 1.0)

    if spec.command == "ab-solve":
        if params.get("mu") is None:
            raise UsageError("ab-solve needs --mu")
        ch = ab.DiracChannel(m=mass, l=params["l"], s=params["s"], mu=params["mu"])
        if ch.regime is not ab.Regime.EXTENDED:
            raise ab.RegimeError(
                f"channel nu={ch.nu:.6g} is {ch.regime.value}: no extension family"
            )
        return [_sweep_row(ch, ext, params.get("level_eq", "master"))], _SWEEP_COLUMNS

    if spec.command == "ab-sweep":
        lo, hi, n = _parse_grid(params["beta_grid"])
        variant = params.get("level_eq", "master")

        def one(beta: float) -> dict:
            ch = ab.DiracChannel(m=mass, l=params["l"], s=params["s"], mu=beta)
            if ch.regime is not ab.Regime.EXTENDED:
                row = _sweep_row_placeholder(ch, ext)
            else:
                row = _sweep_row(ch, ext, variant)
            return row

        return _map_ordered(one, _grid_points(lo, hi, n)), _SWEEP_COLUMNS

    if spec.command == "ab-density":
        if params.get("mu") is None:
            raise UsageError("ab-density needs --mu")
        ch = ab.DiracChannel(m=mass, l=params["l"], s=params["s"], mu=params["mu"])
        lo, hi, n = _parse_grid(params["energy_grid"])

        def one_e(e_over_m: float) -> dict:
            pt = ab.spectral_density(ch, ext, e_over_m * mass)
            return {"E_over_m": e_over_m, "density": pt.density}

        return _map_ordered(one_e, _grid_points(lo, hi, n)), _DENSITY_COLUMNS

    if spec.command == "ab-wavefunction":
        if params.get("mu") is None:
            raise UsageError("ab-wavefunction needs --mu")
        ch = ab.DiracChannel(m=mass, l=params["l"], s=params["s"], mu=params["mu"])
        level = ab.solve_bound_energy(ch, ext)
        if level is None:
            return [], _WAVEFUNCTION_COLUMNS
        doublet = ab.bound_doublet(level)
        lo, hi, n = _parse_grid(params["r_grid"])
        rows = []
        for rm in _grid_points(lo, hi, n):
            f1, f2 = doublet(rm / mass)
            rows.append({"r_times_m": rm, "f1": f1, "f2": f2})
        return rows, _WAVEFUNCTION_COLUMNS

    if spec.command == "ac-solve":
        ch = _ac_channel(params)
        if ch.regime is ac.ACRegime.REGULAR:
            raise ab.RegimeError(
                f"channel gamma={ch.gamma:.6g} is regular: no extension family"
            )
        return [_ac_row(ch, ext)], _AC_COLUMNS

    if spec.command == "ac-sweep":
        lo, hi, n = _parse_grid(params["gamma_grid"])

        def one_g(g: float) -> dict:
            return _ac_row(ac.ACChannel(m=mass, coupling=-g, l=0, zeta=1), ext)

        return _map_ordered(one_g, _grid_points(lo, hi, n)), _AC_COLUMNS

    if spec.command == "oracle-check":
        cfg_kwargs = {"r_min": params.get("r_min", 1e-6)}
        if params.get("resolution") is not None:
            cfg_kwargs["numerov_dx"] = params["resolution"]
            cfg_kwargs["step_control"] = min(params["resolution"] ** 2, 1e-8)
        cfg = orc.ShootingConfig(**cfg_kwargs)
        if params.get("sector", "ab") == "ab":
            if params.get("mu") is None:
                raise UsageError("oracle-check --sector ab needs --mu")
            chd = ab.DiracChannel(m=mass, l=params["l"], s=params["s"], mu=params["mu"])
            analytic = ab.solve_bound_energy(chd, ext)
            numeric = orc.dirac_shoot(chd, ext, cfg)
        else:
            cha = _ac_channel(params)
            analytic = ac.ac_bound_energy(cha, ext)
            numeric = orc.schrodinger_shoot(cha, ext, cfg)
        if analytic is None or numeric is None:
            return [], _ORACLE_COLUMNS
        e_an = analytic.E if hasattr(analytic, "E") else analytic.E_n
        return (
            [
                {
                    "E_analytic_over_m": e_an / mass,
                    "E_oracle_over_m": numeric.E / mass,
                    "abs_diff_over_m": abs(e_an - numeric.E) / mass,
                    "match_residual": numeric.match_residual,
                    "r_min_sensitivity": numeric.r_min_sensitivity,
                    "convergence_order": numeric.convergence_order_estimate,
                }
            ],
            _ORACLE_COLUMNS,
        )

    raise UsageError(f"unknown command {spec.command!r}")


def _sweep_row_placeholder(ch: ab.DiracChannel, ext: ab.Extension) -> dict:
    n, beta = ch.flux_parts
    return {
        "beta": beta,
        "l": ch.l,
        "s": ch.s,
        "mu": ch.mu,
        "nu": ch.nu,
        "tau": 0,
        "xi": ext.xi,
        "E_over_m": math.nan,
        "lambda_over_m": math.nan,
        "residual": math.nan,
    }


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        spec = parse_args(args)
    except UsageError as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "kind": "usage"}) + "\n")
        return 2
    except SystemExit as exc:  # argparse's own usage failures
        return int(exc.code or 0) and 2
    return run(spec)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
