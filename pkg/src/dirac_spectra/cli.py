"""Command-line front end.

    dirac-spectra <command> --config path.json [--out dir] [--seed n]

Commands: classify, basis, spectrum, expand, equiconv, selfadjoint,
hilbert.  Each reads a JSON problem config, writes CSV/JSON reports into
the output directory, and renders a matplotlib figure next to the
delimited output.  Exit codes: 0 success, 1 config error, 2 numerical
error, 3 property violation.

Output is deterministic: fixed row orderings and floats printed with 17
significant digits (lowercase scientific), so identical configs give
byte-identical CSV.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import expansion, galerkin, hilbert as hb, potential, selfadjoint as sa
from .basis import Jump, SpectralBasis, VectorFunction, inner
from .bc import BoundaryCondition, NotRegularError, classify_bc, spectral_params


class ConfigError(Exception):
    pass


class PropertyViolation(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".16e")


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def write_csv(path: str, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(c) if isinstance(c, float) else str(c)
                              for c in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def write_json(path: str, obj) -> None:
    _atomic_write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _get(cfg: dict, key: str, default=None, required: bool = False):
    if key in cfg:
        return cfg[key]
    if required:
        raise ConfigError(f"missing config key {key!r}")
    return default


def _parse_bc(cfg: dict) -> BoundaryCondition:
    raw = _get(cfg, "bc", required=True)
    try:
        return BoundaryCondition.from_dict(raw)
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"bad bc spec: {e}") from e


def _parse_entry(obj) -> potential.Entry:
    try:
        return potential.Entry.from_json(obj)
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"bad function spec: {e}") from e


def _parse_potential(cfg: dict) -> potential.PotentialSpec:
    raw = _get(cfg, "potential")
    if raw is None:
        return potential.PotentialSpec.zero()
    try:
        return potential.PotentialSpec.from_json(raw)
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"bad potential spec: {e}") from e


def _vf_from_entries(fe: potential.Entry, ge: potential.Entry) -> VectorFunction:
    eps = 1e-9
    locs = sorted(set(fe.jumps) | set(ge.jumps))
    jumps = []
    for x0 in locs:
        xl, xr = np.array([x0 - eps]), np.array([x0 + eps])
        jumps.append(Jump(x0,
                          (complex(fe(xl)[0]), complex(ge(xl)[0])),
                          (complex(fe(xr)[0]), complex(ge(xr)[0]))))
    return VectorFunction(lambda x: fe(x), lambda x: ge(x), tuple(jumps))


def _parse_vf(cfg: dict) -> VectorFunction:
    raw = _get(cfg, "F", required=True)
    return _vf_from_entries(_parse_entry(raw.get("f")), _parse_entry(raw.get("g")))


def _c2(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


# ----------------------------------------------------------------- commands


def cmd_classify(cfg: dict, out: str) -> int:
    bc = _parse_bc(cfg)
    tol = float(_get(cfg, "tol", 1e-10))
    cls = classify_bc(bc, tol)
    report = {
        "class": cls.tag.value,
        "near_degenerate": cls.near_degenerate,
        "regularity": _c2(bc.regularity()),
        "discriminant": _c2(bc.discriminant()),
    }
    if cls.tag.value != "NotRegular":
        p = spectral_params(bc, cls, tol)
        report.update({
            "z1": _c2(p.z1), "z2": _c2(p.z2),
            "tau1": _c2(p.tau1), "tau2": _c2(p.tau2),
        })
    write_json(os.path.join(out, "classify.json"), report)
    return 0


def cmd_basis(cfg: dict, out: str) -> int:
    bc = _parse_bc(cfg)
    sb = SpectralBasis(bc)
    k_max = int(_get(cfg, "k_max", 8))
    grid_n = int(_get(cfg, "grid", 257))
    nodes = int(_get(cfg, "nodes", 2048))
    x = np.linspace(0.0, math.pi, grid_n)
    ks = list(range(-k_max, k_max + 1, 2))
    rows = []
    for k in ks:
        for nu in (1, 2):
            ph = sb.phi(k, nu, x)
            pt = sb.phi_tilde(k, nu, x)
            for i, xi in enumerate(x):
                rows.append((k, nu, float(xi),
                             float(ph[0, i].real), float(ph[0, i].imag),
                             float(ph[1, i].real), float(ph[1, i].imag),
                             float(pt[0, i].real), float(pt[0, i].imag),
                             float(pt[1, i].real), float(pt[1, i].imag)))
    write_csv(os.path.join(out, "basis.csv"),
              ["k", "nu", "x", "re_phi1", "im_phi1", "re_phi2", "im_phi2",
               "re_phit1", "im_phit1", "re_phit2", "im_phit2"], rows)
    gram_err = 0.0
    for k in (-2, 0, 2):
        for nu in (1, 2):
            for j in (-2, 0, 2):
                for eta in (1, 2):
                    v = inner(sb.phi_as_vf(k, nu), sb.phi_tilde_as_vf(j, eta),
                              nodes=nodes)
                    gram_err = max(gram_err,
                                   abs(v - (1.0 if (k, nu) == (j, eta) else 0.0)))
    write_json(os.path.join(out, "basis.json"), {
        "class": sb.cls.tag.value,
        "gram_residual": gram_err,
        "k_max": k_max,
    })
    from . import plots
    samples = [(f"phi_{k}^{nu}", sb.phi(k, nu, x)[0])
               for k in (0, 2) for nu in (1, 2)]
    plots.plot_basis(os.path.join(out, "basis.png"), x, samples)
    return 0


def cmd_spectrum(cfg: dict, out: str) -> int:
    bc = _parse_bc(cfg)
    sb = SpectralBasis(bc)
    v = _parse_potential(cfg)
    M = int(_get(cfg, "M", 64))
    N = int(_get(cfg, "N", 8))
    T = _get(cfg, "T")
    rep = potential.matrix_rep(sb, v, 2 * M + 8) if _get(cfg, "potential") else None
    op = galerkin.build_truncated(sb, rep, M)
    eigs = galerkin.spectrum(op)
    if T is None:
        T = expansion.rectangle_height(sb, v.norm())
    loc = galerkin.localize(sb, eigs, v.norm(), N, float(T), M=M)
    rows = []
    for a in loc.assignments:
        lam = a["lambda"]
        rows.append((float(lam.real), float(lam.imag), a["region"],
                     a.get("m", ""), a.get("mu", "")))
    write_csv(os.path.join(out, "spectrum.csv"),
              ["re", "im", "region", "m", "mu"], rows)
    write_json(os.path.join(out, "spectrum.json"), {
        "class": sb.cls.tag.value,
        "M": M, "N": N, "T": float(T),
        "rho": loc.rho,
        "rect_count": loc.rect_count,
        "rect_expected": 2 * N + 2,
        "disk_count_violations": sorted(
            [list(k) for k, c in loc.disk_counts.items()
             if c != (1 if loc.strictly_regular else 2)]),
        "violations": [_c2(z) for z in loc.violations],
        "excluded": len(loc.excluded),
        "ok": loc.ok,
    })
    from . import plots
    p = sb.params
    taus = [p.tau1, p.tau2] if loc.strictly_regular else [p.tau_star]
    centers = [t + m for t in taus for m in range(-M, M + 1, 2)]
    plots.plot_spectrum(os.path.join(out, "spectrum.png"), eigs,
                        [a["region"] for a in loc.assignments],
                        centers, loc.rho, rect=(loc.center, N, float(T)))
    if bool(_get(cfg, "require_localized", False)) and not loc.ok:
        raise PropertyViolation("localization counts violated")
    return 0


def cmd_expand(cfg: dict, out: str) -> int:
    bc = _parse_bc(cfg)
    sb = SpectralBasis(bc)
    F = _parse_vf(cfg)
    x_set = [float(t) for t in _get(cfg, "x_set", [0.0, math.pi / 2, math.pi])]
    Ms = [int(m) for m in _get(cfg, "M_schedule", [64, 128, 256])]
    nodes = int(_get(cfg, "nodes", 4096))
    limits = [expansion.pointwise_limit(bc, F, t) for t in x_set]
    rows = []
    errors = np.zeros((len(x_set), len(Ms)))
    for mi, M in enumerate(Ms):
        s = expansion.free_partial_sum(sb, F, M, np.array(x_set), nodes=nodes)
        for xi, t in enumerate(x_set):
            err = float(np.max(np.abs(s[:, xi] - limits[xi])))
            errors[xi, mi] = err
            rows.append((float(t), M,
                         float(s[0, xi].real), float(s[0, xi].imag),
                         float(s[1, xi].real), float(s[1, xi].imag),
                         float(limits[xi][0].real), float(limits[xi][0].imag),
                         float(limits[xi][1].real), float(limits[xi][1].imag),
                         err))
    write_csv(os.path.join(out, "expand.csv"),
              ["x", "M", "re_s1", "im_s1", "re_s2", "im_s2",
               "re_lim1", "im_lim1", "re_lim2", "im_lim2", "abs_err"], rows)
    write_json(os.path.join(out, "expand.json"), {
        "M_schedule": Ms,
        "x_set": x_set,
        "final_errors": [float(e) for e in errors[:, -1]],
    })
    from . import plots
    plots.plot_expand(os.path.join(out, "expand.png"), x_set, Ms, errors)
    return 0


def cmd_equiconv(cfg: dict, out: str) -> int:
    bc = _parse_bc(cfg)
    sb = SpectralBasis(bc)
    v = _parse_potential(cfg)
    F = _parse_vf(cfg)
    Ns = [int(n) for n in _get(cfg, "N_schedule", [8, 16, 32, 64])]
    M = int(_get(cfg, "M", max(2 * max(Ns), max(Ns) + 32)))
    grid_n = int(_get(cfg, "grid_n", 129))
    nodes = int(_get(cfg, "nodes", 4096))
    rep = potential.matrix_rep(sb, v, 2 * M + 8)
    op = galerkin.build_truncated(sb, rep, M)
    grid = np.linspace(0.0, math.pi, grid_n)
    er = expansion.equiconv_deficit(sb, op, F, Ns, grid, nodes=nodes)
    write_csv(os.path.join(out, "equiconv.csv"), ["N", "deficit"],
              [(n, float(d)) for n, d in zip(er.Ns, er.deficits)])
    write_json(os.path.join(out, "equiconv.json"), {
        "N_schedule": list(er.Ns),
        "deficits": [float(d) for d in er.deficits],
        "passed": er.passed,
        "M": M,
    })
    from . import plots
    plots.plot_deficit(os.path.join(out, "equiconv.png"), er.Ns, er.deficits)
    if bool(_get(cfg, "require_pass", False)) and not er.passed:
        raise PropertyViolation("equiconvergence deficit did not decrease")
    return 0


def _parse_scalar_fn(obj):
    if obj is None:
        return 0.0
    if isinstance(obj, (int, float)):
        return float(obj)
    return _parse_entry(obj)


def cmd_selfadjoint(cfg: dict, out: str) -> int:
    degrees = bool(_get(cfg, "degrees", False))
    scale = math.pi / 180.0 if degrees else 1.0
    a1 = float(_get(cfg, "alpha1", required=True)) * scale
    a2 = float(_get(cfg, "alpha2", required=True)) * scale
    x1 = float(_get(cfg, "x1", 0.0))
    x2 = float(_get(cfg, "x2", math.pi))
    try:
        sabc = sa.SeparatedSelfAdjointBC(a1, a2, x1, x2)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    Traw = _get(cfg, "T", [[0, 0], [0, 0]])
    T = tuple(tuple(_parse_scalar_fn(t) for t in row) for row in Traw)
    rho = _parse_scalar_fn(_get(cfg, "rho", 1.0))
    prob = sa.RealDiracProblem(T, rho=rho)
    M = int(_get(cfg, "M", 64))
    nodes = int(_get(cfg, "nodes", 2048))
    r = sa.sa_spectrum(sabc, prob, M, nodes=nodes)
    h = math.pi / r.ell
    rows = [(float(lam), int(n), float(lam - (r.tau + int(n)) * h), bool(ok))
            for lam, n, ok in zip(r.eigs, r.indices, r.in_interval)]
    write_csv(os.path.join(out, "selfadjoint.csv"),
              ["lambda", "n", "offset", "in_interval"], rows)
    write_json(os.path.join(out, "selfadjoint.json"), {
        "tau": r.tau, "ell": r.ell, "K": r.K,
        "max_imag": r.max_imag,
        "N_found": r.N_found,
        "central_count": r.central_count,
        "ok": r.ok,
    })
    from . import plots
    plots.plot_sa_spectrum(os.path.join(out, "selfadjoint.png"),
                           r.eigs, r.tau, h)
    if bool(_get(cfg, "require_real", False)) and r.max_imag >= 1e-8:
        raise PropertyViolation("non-real eigenvalues in self-adjoint problem")
    return 0


def cmd_hilbert(cfg: dict, out: str) -> int:
    wraw = _get(cfg, "weight", {"kind": "log", "delta": 1.0})
    try:
        omega = hb.WeightSeq.from_json(wraw)
    except (KeyError, ValueError) as e:
        raise ConfigError(f"bad weight spec: {e}") from e
    seq = _get(cfg, "sequence")
    if seq is None:
        ks = np.arange(-20, 21, 2)
        xi = (ks == 0).astype(complex)
    else:
        ks = np.asarray([int(k) for k in seq["ks"]])
        xi = np.asarray([complex(v[0], v[1]) for v in seq["values"]])
    h = hb.hilbert(ks, xi)
    write_csv(os.path.join(out, "hilbert.csv"),
              ["k", "re_xi", "im_xi", "re_H", "im_H"],
              [(int(k), float(a.real), float(a.imag),
                float(b.real), float(b.imag))
               for k, a, b in zip(ks, xi, h)])
    n_values = [int(n) for n in _get(cfg, "n_values", [4, 16, 64, 256])]
    running = hb.muckenhoupt_running(omega, n_values)
    report = {
        "weight": wraw,
        "axioms": omega.axioms_report(),
        "muckenhoupt_running": running,
        "norm_xi": hb.weighted_norm(ks, xi, omega),
        "norm_H": hb.weighted_norm(ks, h, omega),
    }
    mul = _get(cfg, "multiplier")
    if mul is not None:
        g = _parse_entry(mul.get("g"))
        res = hb.multiply_in_weighted_space(ks, xi, g, omega,
                                            K_g=int(mul.get("K_g", 64)))
        report["multiplier"] = {"norm_in": res["norm_in"],
                                "norm_out": res["norm_out"]}
        write_csv(os.path.join(out, "multiplier.csv"),
                  ["k", "re", "im"],
                  [(int(k), float(c.real), float(c.imag))
                   for k, c in zip(res["ks"], res["coeffs"])])
    write_json(os.path.join(out, "hilbert.json"), report)
    from . import plots
    plots.plot_sequence(os.path.join(out, "hilbert.png"), ks, h, "H(xi)")
    return 0


COMMANDS = {
    "classify": cmd_classify,
    "basis": cmd_basis,
    "spectrum": cmd_spectrum,
    "expand": cmd_expand,
    "equiconv": cmd_equiconv,
    "selfadjoint": cmd_selfadjoint,
    "hilbert": cmd_hilbert,
}


def main(argv=None) -> int:
    threads = os.environ.get("DIRAC_SPECTRA_THREADS")
    if threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)
    ap = argparse.ArgumentParser(prog="dirac-spectra")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", required=True)
    ap.add_argument("--out", default=".")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    try:
        with open(args.config) as f:
            cfg = json.load(f)
        if not isinstance(cfg, dict):
            raise ConfigError("config root must be a JSON object")
    except (OSError, json.JSONDecodeError, ConfigError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    os.makedirs(args.out, exist_ok=True)
    np.random.seed(args.seed)
    try:
        return COMMANDS[args.command](cfg, args.out)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    except PropertyViolation as e:
        print(f"property violation: {e}", file=sys.stderr)
        return 3
    except (NotRegularError, ValueError, ArithmeticError,
            np.linalg.LinAlgError) as e:
        print(f"numerical error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
