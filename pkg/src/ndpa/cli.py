"""Command-line interface: ``ndpa {spectrum,wavefunction,berry,mandel,verify}``.

Tables go to stdout or ``--out`` as CSV (one header row) or JSON
(``{"meta": {"config", "version"}, "data": [...]}``). Floats are written
with 17 significant digits so every value round-trips exactly.

Exit codes: 0 success, 1 a check failed, 2 invalid or unstable
parameters, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import __version__
from . import amplifier as amp
from . import berry, photon_stats, verify
from .errors import DenominatorVanishes, NdpaError, TruncationUnsafe
from .fock import QuantumNumbers, SectorBasis
from .numerics import QuadratureSpec, hermitian_eigen

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3
DEFAULT_NMAX = 40
MIN_NMAX = 10


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    omega1: float = 1.0
    omega2: float = 1.0
    chi: float = 0.6
    psi: float = 0.0
    m: int = 0
    N: Optional[int] = None
    nmax: int = DEFAULT_NMAX
    period: float = 100.0
    winding: int = 1
    steps: int = 2000
    fmt: str = "csv"
    out: Optional[str] = None
    tol: Optional[float] = None
    suite: Optional[str] = None
    schrodinger: bool = False

    @property
    def params(self) -> amp.AmplifierParams:
        return amp.AmplifierParams(self.omega1, self.omega2, self.chi, self.psi)

    def validate(self):
        try:
            p = self.params
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if not p.is_stable:
            raise ConfigError(f"unstable parameters: 2*chi = {2 * self.chi} >= Omega = {p.Omega}")
        if self.nmax < MIN_NMAX:
            raise ConfigError(f"--nmax must be at least {MIN_NMAX}")
        if self.N is not None and not (self.command == "berry" and not self.schrodinger):
            try:
                QuantumNumbers(self.N, self.m)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        if self.steps < 2 or self.period <= 0:
            raise ConfigError("--steps must be >= 2 and --period positive")
        if self.tol is not None and not self.tol > 0:
            raise ConfigError("--tol must be positive")


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "nan" if math.isnan(v) else f"{float(v):.16e}"
    return "" if v is None else str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return None if math.isnan(v) else float(v)
    return v


def render(rows: list[dict], cfg: RunConfig) -> str:
    if cfg.fmt == "json":
        meta = {"config": {k: v for k, v in asdict(cfg).items() if k not in ("out", "fmt")}, "version": __version__}
        data = [{k: _json_value(v) for k, v in row.items()} for row in rows]
        return json.dumps({"meta": meta, "data": data}, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        writer.writerow(rows[0].keys())
        for row in rows:
            writer.writerow(format_value(v) for v in row.values())
    return buf.getvalue()


def run_spectrum(cfg: RunConfig) -> tuple[list[dict], bool]:
    """Closed-form against numerical sector eigenvalues for every resolved level."""
    p = cfg.params
    tol = cfg.tol or 1e-8
    basis = SectorBasis(cfg.m, cfg.nmax)
    values, _ = hermitian_eigen(amp.hamiltonian_matrix(p, basis))
    rows, ok = [], True
    mirrored = amp.AmplifierParams(p.omega2, p.omega1, p.chi, p.psi)
    for n in amp.resolved_levels(p, basis):
        q = QuantumNumbers.from_radial(n, cfg.m)
        # a negative m is the positive sector with the modes swapped
        closed = amp.energy_nm(p, n, cfg.m) if cfg.m >= 0 else amp.energy_nm(mirrored, n, -cfg.m)
        diff = abs(values[n] - closed)
        ok &= diff < tol
        rows.append({"N": q.N, "m": q.m, "n_r": n, "E_closed": closed, "E_numeric": float(values[n]), "abs_diff": diff})
    return rows, ok


def run_wavefunction(cfg: RunConfig) -> tuple[list[dict], bool]:
    """Samples of the eigenfunction on a polar grid (``--steps`` radial points)."""
    if cfg.m < 0:
        raise ConfigError("wavefunction sampling needs m >= 0")
    p = cfg.params
    N = cfg.N if cfg.N is not None else cfg.m
    q = QuantumNumbers(N, cfg.m)
    r = np.linspace(0.0, amp.quadrature_radius(N), cfg.steps)
    phis = 2 * np.pi * np.arange(8) / 8
    rows = []
    for phi in phis:
        vals = amp.eigenfunction(p, q.n_r, q.m, r, phi)
        for ri, v in zip(r, vals):
            rows.append({"N": N, "m": cfg.m, "r": float(ri), "phi": float(phi),
                         "re": float(v.real), "im": float(v.imag), "density": float(abs(v) ** 2)})
    return rows, True


def run_berry(cfg: RunConfig) -> tuple[list[dict], bool]:
    """Closed-form and quadrature Berry phase, optionally from Schrodinger evolution."""
    p = cfg.params
    tol = cfg.tol or 1e-8
    N = cfg.N if cfg.N is not None else abs(cfg.m)
    drive = berry.DriveProfile.linear(p.Omega, p.chi, cfg.period, p.delta_omega, psi0=p.psi, winding=cfg.winding)
    spec = QuadratureSpec(0.0, cfg.period, cfg.steps + cfg.steps % 2)
    closed = cfg.winding * berry.berry_phase_closed(N, p.Omega, p.chi)
    quad = berry.berry_phase_quadrature(drive, N, spec)
    row = {"N": N, "m": cfg.m, "winding": cfg.winding, "closed_form": closed, "quadrature": quad,
           "quadrature_diff": abs(closed - quad)}
    ok = row["quadrature_diff"] < tol
    if cfg.schrodinger:
        if cfg.winding != 1:
            raise ConfigError("--schrodinger extracts a single positive turn; use --winding 1")
        q = QuantumNumbers(N, cfg.m)
        ext = berry.extract_geometric_phase(p.Omega, p.chi, q, cfg.period, dt=cfg.period / cfg.steps,
                                            delta_omega=p.delta_omega, nmax=max(cfg.nmax, N + 40))
        row.update({"schrodinger_forward": ext.forward, "schrodinger_backward": ext.backward,
                    "schrodinger_estimate": ext.estimate, "schrodinger_diff": abs(ext.estimate - closed)})
    return [row], ok


DEFAULT_MANDEL_STATES = verify.MANDEL_GRID


def _mandel_pair(closed_fn, mode, p, q, nmax, tol):
    try:
        closed = closed_fn(p, q)
    except DenominatorVanishes:
        return math.nan, math.nan, "undefined", "undefined"
    try:
        brute = photon_stats.brute_force_q(mode, p, q, nmax).q
    except TruncationUnsafe:
        return closed.q, math.nan, closed.classification, "truncation"
    flag = "ok" if abs(brute - closed.q) < tol else "mismatch"
    return closed.q, brute, closed.classification, flag


def run_mandel(cfg: RunConfig) -> tuple[list[dict], bool]:
    """Closed-form and brute-force Mandel parameters of both modes."""
    p = cfg.params
    tol = cfg.tol or 1e-8
    if cfg.N is not None:
        states = [(cfg.N, cfg.m)]
    else:
        states = DEFAULT_MANDEL_STATES
    rows, ok = [], True
    for N, m in sorted(states):
        q = QuantumNumbers(N, m)
        if q.m < 0:
            raise ConfigError("Mandel tables need m >= 0; swap --omega1 and --omega2 instead")
        if q.N > cfg.nmax - 10:
            raise ConfigError(f"N = {N} needs --nmax >= {N + 10}")
        qa, ba, ca, fa = _mandel_pair(photon_stats.q_a_params, "a", p, q, cfg.nmax, tol)
        qb, bb, cb, fb = _mandel_pair(photon_stats.q_b_params, "b", p, q, cfg.nmax, tol)
        ok &= "mismatch" not in (fa, fb)
        rows.append({"N": N, "m": m, "Q_a_closed": qa, "Q_a_brute": ba, "Q_b_closed": qb, "Q_b_brute": bb,
                     "class_a": ca, "class_b": cb, "flag_a": fa, "flag_b": fb})
    return rows, ok


def run_verify(cfg: RunConfig) -> tuple[list[dict], bool]:
    names = [cfg.suite] if cfg.suite else None
    try:
        checks = verify.run_suites(cfg.params, names, cfg.tol)
    except KeyError as exc:
        raise ConfigError(str(exc.args[0])) from exc
    rows = [c._asdict() for c in checks]
    return rows, all(c.passed for c in checks)


COMMANDS = {
    "spectrum": run_spectrum,
    "wavefunction": run_wavefunction,
    "berry": run_berry,
    "mandel": run_mandel,
    "verify": run_verify,
}


def _default_nmax() -> int:
    env = os.environ.get("AMP_NMAX")
    if env is None:
        return DEFAULT_NMAX
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"AMP_NMAX must be an integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--omega1", type=float, default=1.0, help="signal frequency (default 1.0)")
    common.add_argument("--omega2", type=float, default=1.0, help="idler frequency (default 1.0)")
    common.add_argument("--chi", type=float, default=0.6, help="coupling strength (default 0.6)")
    common.add_argument("--psi", type=float, default=0.0, help="pump phase (default 0)")
    common.add_argument("--m", type=int, default=0, help="photon-number difference sector")
    common.add_argument("--N", type=int, default=None, help="total photon number")
    common.add_argument("--nmax", type=int, default=None, help="Fock truncation (default 40, or $AMP_NMAX)")
    common.add_argument("--period", type=float, default=100.0, help="drive period for berry")
    common.add_argument("--winding", type=int, default=1, help="turns of the tilt phase per period")
    common.add_argument("--steps", type=int, default=2000, help="time steps or radial samples")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--tol", type=float, default=None, help="override the pass tolerance")
    common.add_argument("--suite", default=None, choices=sorted(verify.SUITES), help="verify a single suite")
    common.add_argument("--schrodinger", action="store_true", help="berry: also extract the phase by time evolution")

    parser = argparse.ArgumentParser(prog="ndpa", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=(fn.__doc__ or name).splitlines()[0])
    return parser


def parse_config(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    values = vars(ns)
    if values["nmax"] is None:
        values["nmax"] = _default_nmax()
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except ConfigError as exc:
        print(f"ndpa: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        rows, ok = COMMANDS[cfg.command](cfg)
    except (ConfigError, NdpaError, ValueError) as exc:
        print(f"ndpa: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = render(rows, cfg)
    try:
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"ndpa: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
