"""Command-line runner: ``tflocal <command> --config path.json [--out dir] [--seed k]``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Annotated, Any, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator, model_validator

from . import __version__
from . import artifacts as art
from .bergman_wavelet import (Psi_n_alpha, bergman_galerkin, bergman_transform_numeric, cayley_to_disc,
                              disc_eigenvalue_closed, laguerre_laplace_check, map_pseudodisk,
                              pseudodisk_from_disc_radius, psi_fourier_side, rho_disc, rho_halfplane)
from .errors import NonConvergence, TFLocalError
from .fock_op import (assemble_indicator, assemble_symbol, build_counterexample_symbol, closed_form_diagonal,
                      eigendecompose, rotation_phases)
from .frame_lab import condition_sweep
from .geometry import Disk, HalfPlanePseudoDisk, QuadratureSpec, RadialMeasure, Rotation, domain_from_dict, square
from .inverse_probe import BlackBox, Verdict, disk_verdict
from .special_fn import hermite_all

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


class ConfigError(Exception):
    pass


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class QuadConfig(_Strict):
    radial_nodes: int = Field(32, ge=16)
    angular_nodes: int = Field(32, ge=16)
    target_abs_tol: float = Field(1e-10, gt=0)
    max_refinements: int = Field(5, ge=1, le=8)

    def spec(self):
        return QuadratureSpec(self.radial_nodes, self.angular_nodes, self.target_abs_tol, self.max_refinements)


class MeasureConfig(_Strict):
    kind: Literal["fock", "bergman"] = "fock"
    alpha: float = Field(0.0, gt=-1)

    def measure(self):
        return RadialMeasure(self.kind, self.alpha if self.kind == "bergman" else 0.0)


def _check_domain(spec):
    if spec is None:
        return spec
    try:
        domain_from_dict(spec)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ValueError(f"invalid domain spec: {exc}") from None
    return spec


class _Base(_Strict):
    out: Optional[str] = None
    seed: int = 0
    quadrature: QuadConfig = QuadConfig()


class DirectConfig(_Base):
    command: Literal["direct"] = "direct"
    domain: dict[str, Any]
    measure: MeasureConfig = MeasureConfig()
    N: int = Field(24, ge=1, le=512)
    method: Literal["auto", "quadrature"] = "quadrature"

    _v = field_validator("domain")(_check_domain)


class ProbeConfig(_Base):
    command: Literal["probe"] = "probe"
    domain: Optional[dict[str, Any]] = None
    matrix_file: Optional[str] = None
    basis: MeasureConfig = MeasureConfig()
    N: int = Field(48, ge=9, le=512)
    probes: list[int] = Field(default_factory=lambda: list(range(8)), min_length=1)
    tol: float = Field(1e-6, gt=0)
    consistency_tol: float = Field(1e-3, gt=0)

    _v = field_validator("domain")(_check_domain)

    @model_validator(mode="after")
    def _one_source(self):
        if (self.domain is None) == (self.matrix_file is None):
            raise ValueError("give exactly one of 'domain' (simulated) or 'matrix_file' (black box)")
        return self


class SymbolConfig(_Base):
    command: Literal["symbol"] = "symbol"
    N_target: int = Field(0, ge=0)
    a: float = Field(0.3, gt=0)
    b: float = Field(1.5, gt=0)
    c: Optional[float] = None
    N: int = Field(24, ge=2, le=512)

    @model_validator(mode="after")
    def _fits(self):
        if self.N < 2 * self.N_target + 2:
            raise ValueError("N must exceed 2*N_target + 1 so the coupling entry is inside the section")
        return self


class WaveletConfig(_Base):
    command: Literal["wavelet"] = "wavelet"
    alpha: float = Field(0.0, gt=-1)
    N: int = Field(24, ge=9, le=512)
    domain: Optional[dict[str, Any]] = None
    pseudodisk: Optional[dict[str, Any]] = None
    probes: list[int] = Field(default_factory=lambda: list(range(8)), min_length=1)
    sample_points: list[tuple[float, float]] = Field(
        default_factory=lambda: [(0.0, 2.0), (0.5, 1.0), (-1.0, 0.5), (1.0, 3.0), (0.25, 0.75)])
    n_max: int = Field(4, ge=0, le=16)

    _v = field_validator("domain")(_check_domain)

    @field_validator("pseudodisk")
    @classmethod
    def _pd(cls, spec):
        if spec is None:
            return spec
        return _check_domain({"shape": "pseudodisk", **spec}) and spec

    @field_validator("sample_points")
    @classmethod
    def _upper(cls, pts):
        if any(y <= 0 for _, y in pts):
            raise ValueError("sample points must lie in the upper half-plane")
        return pts


class FramesConfig(_Base):
    command: Literal["frames"] = "frames"
    redundancies: list[float] = Field(default_factory=lambda: [1.5, 2.0, 3.0], min_length=1)
    truncation_radius: float = Field(8.0, ge=6.0)
    N: Optional[int] = Field(None, ge=1)

    @field_validator("redundancies")
    @classmethod
    def _gt1(cls, reds):
        if any(not r > 1 for r in reds):
            raise ValueError("redundancies must exceed 1")
        return reds


class ValidateConfig(_Base):
    command: Literal["validate"] = "validate"


ExperimentConfig = Annotated[Union[DirectConfig, ProbeConfig, SymbolConfig, WaveletConfig, FramesConfig,
                                   ValidateConfig], Field(discriminator="command")]
_ADAPTER = TypeAdapter(ExperimentConfig)
COMMANDS = ("direct", "probe", "symbol", "wavelet", "frames", "validate")


def load_config(command: str, path, out=None, seed=None):
    """Parse and validate a JSON config; CLI flags override ``out`` and ``seed``."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    if raw.setdefault("command", command) != command:
        raise ConfigError(f"config is for command {raw['command']!r}, not {command!r}")
    if out is not None:
        raw["out"] = str(out)
    if seed is not None:
        raw["seed"] = seed
    try:
        return _ADAPTER.validate_python(raw)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from None


class _Run:
    def __init__(self, cfg):
        self.cfg = cfg
        self.echo = cfg.model_dump(mode="json")
        # the output location is not part of the experiment, so it stays out of the hash
        self.stamp = art.Stamp(art.config_hash({k: v for k, v in self.echo.items() if k != "out"}))
        self.out = Path(cfg.out or f"tflocal_out/{cfg.command}")
        self.out.mkdir(parents=True, exist_ok=True)
        art.write_json(self.out / "config.json", self.echo, self.stamp)

    def path(self, name):
        return self.out / name


def _spectrum_files(run, op, closed=None):
    spec = eigendecompose(op)
    resid = np.linalg.norm(op.matrix @ spec.eigenvectors - spec.eigenvectors * spec.eigenvalues[None, :], axis=0)
    ref = None if closed is None else np.sort(np.asarray(closed, dtype=float))[::-1]
    art.write_spectrum_csv(run.path("spectrum.csv"), spec.eigenvalues, resid, run.stamp, closed=ref)
    art.write_matrix_csv(run.path("matrix.csv"), op.matrix, run.stamp)
    meta = {"provenance": op.provenance, "N": op.N, "quad_tol": op.quad_tol, "err_estimate": op.err_estimate,
            "hermitian_defect": op.hermitian_defect(), "eigensolver_residual": spec.residual_norm}
    if ref is not None:
        meta["max_deviation"] = float(np.max(np.abs(spec.eigenvalues - ref)))
    return spec, meta


def run_direct(cfg: DirectConfig):
    run = _Run(cfg)
    domain = domain_from_dict(cfg.domain)
    measure = cfg.measure.measure()
    if measure.kind == "bergman":
        op = bergman_galerkin(domain, measure.alpha, cfg.N, cfg.quadrature.spec())
    else:
        op = assemble_indicator(domain, cfg.N, cfg.quadrature.spec(), method=cfg.method)
    _, meta = _spectrum_files(run, op, closed_form_diagonal(domain, measure, cfg.N))
    art.write_json(run.path("meta.json"), meta, run.stamp)
    return meta


def _probe_box(cfg: ProbeConfig):
    tag = cfg.basis.kind
    if cfg.matrix_file is not None:
        try:
            M = art.read_matrix_csv(cfg.matrix_file)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"matrix_file: {exc}") from None
        if M.shape[0] != cfg.N:
            raise ConfigError(f"matrix_file is {M.shape[0]}x{M.shape[0]} but N={cfg.N}")
        return BlackBox.from_matrix(M, tag, cfg.basis.alpha)
    domain = domain_from_dict(cfg.domain)
    if tag == "bergman":
        op = bergman_galerkin(domain, cfg.basis.alpha, cfg.N, cfg.quadrature.spec())
    else:
        op = assemble_indicator(domain, cfg.N, cfg.quadrature.spec(), method="quadrature")
    return BlackBox.from_operator(op)


def run_probe(cfg: ProbeConfig):
    box = _probe_box(cfg)
    run = _Run(cfg)
    report = disk_verdict(box, cfg.probes, tol=cfg.tol, consistency_tol=cfg.consistency_tol)
    payload = report.to_dict()
    if box.basis_tag == "bergman" and report.verdict == Verdict.DISK_CENTERED:
        pd = pseudodisk_from_disc_radius(report.radius_estimate)
        payload["pseudodisk"] = {"center": [pd.center.real, pd.center.imag], "rho": pd.rho}
    art.write_json(run.path("probe_report.json"), payload, run.stamp)
    return payload


def run_symbol(cfg: SymbolConfig):
    run = _Run(cfg)
    sym = build_counterexample_symbol(cfg.N_target, cfg.a, cfg.b, cfg.c)
    op = assemble_symbol(sym, cfg.N, cfg.quadrature.spec())
    M, k = op.matrix, cfg.N_target

    def resid(n):
        col = M[:, n]
        return float(np.linalg.norm(col - col[n] * np.eye(cfg.N)[:, n]))

    art.write_matrix_csv(run.path("matrix.csv"), M, run.stamp)
    meta = {"provenance": op.provenance, "N": op.N, "symbol": sym.meta, "lambda": float(M[k, k].real),
            "residual_target": resid(k), "residual_next": resid(k + 1),
            "coupling_entry": float(abs(M[2 * k + 1, k])), "err_estimate": op.err_estimate}
    art.write_json(run.path("meta.json"), meta, run.stamp)
    return meta


def run_wavelet(cfg: WaveletConfig):
    run = _Run(cfg)
    if cfg.pseudodisk is not None:
        c = cfg.pseudodisk["center"]
        pd = HalfPlanePseudoDisk(complex(c[0], c[1]), float(cfg.pseudodisk["rho"]))
        domain = map_pseudodisk(pd)
    elif cfg.domain is not None:
        domain = domain_from_dict(cfg.domain)
    else:
        domain = Disk(0, 0.6)
    op = bergman_galerkin(domain, cfg.alpha, cfg.N, cfg.quadrature.spec())
    measure = RadialMeasure.bergman(cfg.alpha)
    _, meta = _spectrum_files(run, op, closed_form_diagonal(domain, measure, cfg.N))
    rows = []
    for n in range(cfg.n_max + 1):
        for x, y in cfg.sample_points:
            z = complex(x, y)
            num, tail = bergman_transform_numeric(lambda t: psi_fourier_side(n, cfg.alpha, t), cfg.alpha, z)
            ref = complex(Psi_n_alpha(n, cfg.alpha, z))
            rows.append([n, x, y, num.real, num.imag, ref.real, ref.imag, abs(num - ref), tail])
    art.write_table_csv(run.path("bergman_transform.csv"),
                        ["n", "x", "y", "num_re", "num_im", "closed_re", "closed_im", "abs_err", "tail_bound"],
                        rows, run.stamp)
    report = disk_verdict(BlackBox.from_operator(op), [p for p in cfg.probes if p <= cfg.N - 8])
    meta["probe"] = report.to_dict()
    if report.verdict == Verdict.DISK_CENTERED:
        pd = pseudodisk_from_disc_radius(report.radius_estimate)
        meta["pseudodisk"] = {"center": [pd.center.real, pd.center.imag], "rho": pd.rho}
        art.write_json(run.path("pseudodisk.json"), meta["pseudodisk"], run.stamp)
    meta["max_transform_error"] = max(r[7] for r in rows)
    art.write_json(run.path("meta.json"), meta, run.stamp)
    return meta


def run_frames(cfg: FramesConfig):
    run = _Run(cfg)
    rows = condition_sweep(cfg.redundancies, cfg.N, cfg.truncation_radius)
    art.write_table_csv(run.path("sweep.csv"), ["redundancy", "rect_cond", "hex_cond", "ratio"], rows, run.stamp)
    meta = {"estimator": "finite Hermite section, top quarter of indices discarded; ordering only",
            "rows": [list(r) for r in rows]}
    art.write_json(run.path("meta.json"), meta, run.stamp)
    return meta


# ---------------------------------------------------------------------------
# validation suite


def _check(name, fn, threshold):
    try:
        value = float(fn())
    except TFLocalError as exc:
        status = "quadrature_failure" if isinstance(exc, NonConvergence) else "numeric_failure"
        return {"name": name, "status": status,
                "passed": False, "value": None, "threshold": threshold, "detail": str(exc)}
    ok = value <= threshold
    return {"name": name, "status": "pass" if ok else "fail", "passed": ok, "value": value, "threshold": threshold}


def validation_checks(quad: QuadratureSpec, seed: int):
    """List of ``(name, thunk, threshold)``; each thunk returns a nonnegative error."""
    rng = np.random.default_rng(seed)

    def hermite():
        t = np.linspace(-12, 12, 24001)
        H = hermite_all(40, t)
        G = (H * (t[1] - t[0])) @ H.T
        return np.max(np.abs(G - np.eye(41)))

    def disk():
        op = assemble_indicator(Disk(0, 1.0), 24, quad, method="quadrature")
        ref = closed_form_diagonal(Disk(0, 1.0), RadialMeasure.fock(), 24)
        return np.max(np.abs(op.matrix - np.diag(ref)))

    def annulus():
        from .geometry import Annulus
        op = assemble_indicator(Annulus(0.5, 1.0), 24, quad, method="quadrature")
        ref = closed_form_diagonal(Annulus(0.5, 1.0), RadialMeasure.fock(), 24)
        return np.max(np.abs(op.matrix - np.diag(ref)))

    def selection():
        M = assemble_indicator(square(math.sqrt(math.pi)), 16, quad).matrix
        m, n = np.indices(M.shape)
        return np.max(np.abs(M[(m - n) % 4 != 0]))

    def rotation():
        sq = square(math.sqrt(math.pi))
        M = assemble_indicator(sq, 16, quad).matrix
        R = assemble_indicator(Rotation(sq, 0.3), 16, quad).matrix
        D = rotation_phases(16, 0.3)
        return np.max(np.abs(R - D.conj() @ M @ D))

    def bergman():
        op = bergman_galerkin(Disk(0, 0.6), 0.5, 17, quad)
        return np.max(np.abs(op.matrix - np.diag(disc_eigenvalue_closed(0.6, np.arange(17), 0.5))))

    def cayley():
        u1 = rng.uniform(-3, 3, 1000) + 1j * rng.uniform(0.05, 3, 1000)
        u2 = rng.uniform(-3, 3, 1000) + 1j * rng.uniform(0.05, 3, 1000)
        return np.max(np.abs(rho_disc(cayley_to_disc(u1), cayley_to_disc(u2)) - rho_halfplane(u1, u2)))

    def laguerre():
        return max(laguerre_laplace_check(n, a, s)[2] for n in range(9) for a in (0.0, 0.5, 1.5) for s in (1.2, 2.0, 5.0))

    def ber():
        pts = [2j, 0.5 + 1j, -1 + 0.5j, 1 + 3j, 0.25 + 0.75j]
        return max(abs(bergman_transform_numeric(lambda t: psi_fourier_side(n, 0.5, t), 0.5, z)[0]
                       - Psi_n_alpha(n, 0.5, z)) for n in (0, 2) for z in pts)

    def counterexample():
        M = assemble_symbol(build_counterexample_symbol(0), 12, quad).matrix
        col = M[:, 0].copy()
        col[0] = 0
        return np.linalg.norm(col)

    return [
        ("hermite_orthonormality", hermite, 1e-10),
        ("disk_closed_form", disk, 1e-8),
        ("annulus_closed_form", annulus, 1e-8),
        ("square_selection_rule", selection, 1e-8),
        ("rotation_equivariance", rotation, 1e-8),
        ("bergman_disc_closed_form", bergman, 1e-8),
        ("cayley_invariance", cayley, 1e-12),
        ("laguerre_laplace_identity", laguerre, 1e-8),
        ("bergman_transform_of_psi", ber, 1e-4),
        ("counterexample_eigenvector", counterexample, 1e-6),
    ]


def run_validate(cfg: ValidateConfig):
    run = _Run(cfg)
    results = [_check(name, fn, thr) for name, fn, thr in validation_checks(cfg.quadrature.spec(), cfg.seed)]
    payload = {"all_passed": all(r["passed"] for r in results), "checks": results}
    art.write_json(run.path("validate.json"), payload, run.stamp)
    return payload


RUNNERS = {"direct": run_direct, "probe": run_probe, "symbol": run_symbol, "wavelet": run_wavelet,
           "frames": run_frames, "validate": run_validate}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="tflocal", description="Localization-operator experiments.")
    parser.add_argument("--version", action="version", version=f"tflocal {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="JSON experiment config")
    parser.add_argument("--out", help="output directory (overrides config)")
    parser.add_argument("--seed", type=int, help="seed for randomized checks (overrides config)")
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.command, args.config, args.out, args.seed)
        result = RUNNERS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TFLocalError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    print(json.dumps(art._clean(_summary(args.command, result)), sort_keys=True))
    if args.command == "validate" and not result["all_passed"]:
        return EXIT_NUMERIC
    return EXIT_OK


def _summary(command, result):
    if command == "probe":
        return {"verdict": result["verdict"], "radius": result["radius"], "rings": result["rings"]}
    if command == "validate":
        return {"all_passed": result["all_passed"],
                "failed": [c["name"] for c in result["checks"] if not c["passed"]]}
    return {k: v for k, v in result.items() if not isinstance(v, (dict, list))}


if __name__ == "__main__":
    sys.exit(main())
