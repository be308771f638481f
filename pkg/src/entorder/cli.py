"""Command line interface.

Single-state reports are printed as JSON, grids as CSV. Stochastic
subcommands require ``--seed``. Exit status: 0 on success, 2 on usage
errors, 1 on domain errors (the error class name is printed on stderr).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import EntorderError, WrongDimension
from .geometry import arch_line_point, future_polytope, is_regular_polygon
from .locc import can_convert, classify, conversion_probability, incomparability_fraction
from .measures import measure_suite, vidal_monotones
from .mixedstates import apply_channel, random_channel, spectrum
from .schmidt import (
    PureBipartiteState,
    haar_random_state,
    haar_random_unitary,
    schmidt_angle,
    schmidt_angle_cdf,
    schmidt_coefficients,
    schmidt_decompose,
    schmidt_vector,
    state_from_hyperspherical,
)
from .spectra import renyi_entropy


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(v) for v in text.replace(";", ",").split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _alpha(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        a = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid entropy order {text!r}") from None
    if a < 0 or math.isnan(a):
        raise argparse.ArgumentTypeError("entropy order must be >= 0")
    return a


def _alpha_list(text: str) -> list[float]:
    return [_alpha(t) for t in text.split(",") if t.strip()]


def _resolution(text: str) -> int:
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid resolution {text!r}") from None
    if r < 2:
        raise argparse.ArgumentTypeError("resolution must be >= 2")
    return r


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid count {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("count must be >= 1")
    return n


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _alpha_key(a: float) -> str:
    return "inf" if math.isinf(a) else f"{a:g}"


def simplex_grid(resolution: int):
    """Barycentric grid on the N=3 simplex, ``resolution`` points per edge."""
    m = resolution - 1
    for i in range(m + 1):
        for j in range(m + 1 - i):
            k = m - i - j
            yield np.array([i / m, j / m, k / m])


# --- subcommands -------------------------------------------------------------


def cmd_schmidt(args) -> int:
    with open(args.state, encoding="utf-8") as fh:
        psi = PureBipartiteState.from_json(json.load(fh))
    dec = schmidt_decompose(psi)
    lam = dec.lambdas
    report = {
        "dim_a": psi.dim_a,
        "dim_b": psi.dim_b,
        "lambda": lam,
        "measures": measure_suite(lam).to_json(),
        "vidal_monotones": vidal_monotones(lam),
    }
    if lam.size == 2:
        report["schmidt_angle"] = schmidt_angle(lam)
    if args.alpha is not None:
        report["renyi"] = {_alpha_key(args.alpha): renyi_entropy(lam, args.alpha)}
    _emit(_json(report), args.out)
    return 0


def cmd_measures(args) -> int:
    lam = schmidt_vector(args.lam)
    report = {"lambda": lam, "measures": measure_suite(lam).to_json(), "vidal_monotones": vidal_monotones(lam)}
    alphas = [args.alpha] if args.alpha is not None else [0.0, 0.5, 1.0, 2.0, math.inf]
    report["renyi"] = {_alpha_key(a): renyi_entropy(lam, a) for a in alphas}
    _emit(_json(report), args.out)
    return 0


def cmd_convert(args) -> int:
    det = can_convert(args.src, args.dst)
    p = conversion_probability(args.src, args.dst)
    _emit(f"deterministic={'true' if det else 'false'}\np={p:.6f}\n", args.out)
    return 0


def _grid_csv(ref, resolution: int) -> str:
    ref = schmidt_vector(ref)
    if ref.size != 3:
        raise WrongDimension(f"grids live on the N=3 simplex, got N={ref.size}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda1", "lambda2", "class", "p"])
    for q in simplex_grid(resolution):
        cls = classify(ref, q)
        p = conversion_probability(ref, q)
        w.writerow([f"{q[0]:.10g}", f"{q[1]:.10g}", cls.value, f"{p:.10g}"])
    return buf.getvalue()


def cmd_classify_grid(args) -> int:
    _emit(_grid_csv(args.ref, args.resolution), args.out)
    return 0


def cmd_prob_grid(args) -> int:
    _emit(_grid_csv(args.ref, args.resolution), args.out)
    return 0


def _angles_from_squares(x):
    a = np.sqrt(np.clip(x, 0.0, None))
    t3 = math.acos(min(a[0], 1.0))
    s3 = math.sin(t3)
    t2 = math.acos(min(a[1] / s3, 1.0)) if s3 > 1e-15 else 0.0
    s2 = math.sin(t2)
    t1 = math.atan2(a[3], a[2]) if s3 * s2 > 1e-15 else 0.0
    return t1, t2, t3


def cmd_surface_grid(args) -> int:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["face", "x1", "x2", "x3", "x4", "theta1", "theta2", "theta3", "H"])
    for face in range(4):
        others = [i for i in range(4) if i != face]
        for bary in simplex_grid(args.resolution):
            x = np.zeros(4)
            x[others] = bary
            t1, t2, t3 = _angles_from_squares(x)
            psi = state_from_hyperspherical([t1, t2, t3, 0.0, 0.0, 0.0])
            lam = schmidt_coefficients(psi)
            h = renyi_entropy(lam / lam.sum(), args.alpha)
            w.writerow([face, *(f"{v:.10g}" for v in x), f"{t1:.10g}", f"{t2:.10g}", f"{t3:.10g}", f"{h:.10g}"])
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_sample(args) -> int:
    from scipy.stats import kstest

    rng = np.random.default_rng(args.seed)
    ent = np.empty(args.samples)
    beta = np.empty(args.samples)
    for i in range(args.samples):
        lam = schmidt_coefficients(haar_random_state(2, 2, rng))
        lam = lam / lam.sum()
        ent[i] = renyi_entropy(lam, 1)
        beta[i] = schmidt_angle(lam)
    ks = kstest(beta, schmidt_angle_cdf)
    edges = np.linspace(0.0, math.pi / 4, args.bins + 1)
    counts, _ = np.histogram(beta, bins=edges)
    expected = np.diff(schmidt_angle_cdf(edges)) * args.samples
    report = {
        "seed": args.seed,
        "samples": args.samples,
        "mean_entropy": float(ent.mean()),
        "mean_entropy_stderr": float(ent.std(ddof=1) / math.sqrt(args.samples)) if args.samples > 1 else None,
        "mean_schmidt_angle": float(beta.mean()),
        "ks_statistic": float(ks.statistic),
        "ks_pvalue": float(ks.pvalue),
        "histogram": {"edges": edges, "counts": counts, "expected": expected},
    }
    if args.nmax >= 2:
        fr = {}
        for n in range(2, args.nmax + 1):
            f = incomparability_fraction(n, args.pairs, args.seed)
            fr[str(n)] = {"fraction": f, "stderr": math.sqrt(f * (1 - f) / args.pairs)}
        report["incomparability"] = {"pairs": args.pairs, "by_n": fr}
    _emit(_json(report), args.out)
    return 0


def cmd_polytope(args) -> int:
    d = arch_line_point(args.arch) if args.arch is not None else np.asarray(args.lam, dtype=float)
    poly = future_polytope(d, args.depth)
    report = {"d": d, **poly.to_json(), "counts": poly.counts()}
    if poly.dim == 3 and 2 in poly.faces:
        shapes = {}
        for f in poly.faces[2]:
            key = f"{len(f)}-gon" + ("" if is_regular_polygon(poly, f) else " (irregular)")
            shapes[key] = shapes.get(key, 0) + 1
        report["face_shapes"] = shapes
    if poly.edges:
        lengths = poly.edge_lengths()
        report["edge_length_range"] = [float(lengths.min()), float(lengths.max())]
    _emit(_json(report), args.out)
    return 0


def cmd_evolve(args) -> int:
    d = schmidt_vector(args.lam)
    n = d.size
    rng = np.random.default_rng(args.seed)
    u = haar_random_unitary(n, rng)
    rho = u @ np.diag(d) @ u.conj().T
    alphas = args.alphas
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", *(f"d{i + 1}" for i in range(n)), *(f"S_{_alpha_key(a)}" for a in alphas)])
    for step in range(args.steps + 1):
        if step:
            rho = apply_channel(rho, random_channel(n, args.terms, rng))
        spec = spectrum(rho)
        spec = spec / spec.sum()
        w.writerow([step, *(f"{v:.12g}" for v in spec), *(f"{renyi_entropy(spec, a):.12g}" for a in alphas)])
    _emit(buf.getvalue(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="entorder", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write output to FILE instead of stdout")
        return sp

    sp = add("schmidt", cmd_schmidt, "Schmidt decomposition and measures of a state JSON file")
    sp.add_argument("--state", required=True, metavar="FILE")
    sp.add_argument("--alpha", type=_alpha)

    sp = add("measures", cmd_measures, "measures of a bare Schmidt vector")
    sp.add_argument("--lambda", dest="lam", type=_float_list, required=True)
    sp.add_argument("--alpha", type=_alpha)

    sp = add("convert", cmd_convert, "deterministic convertibility and optimal probability")
    sp.add_argument("--from", dest="src", type=_float_list, required=True)
    sp.add_argument("--to", dest="dst", type=_float_list, required=True)

    for name, func, help_ in (
        ("classify-grid", cmd_classify_grid, "causal classes over the N=3 Schmidt simplex (CSV)"),
        ("prob-grid", cmd_prob_grid, "conversion probability over the N=3 Schmidt simplex (CSV)"),
    ):
        sp = add(name, func, help_)
        sp.add_argument("--ref", "--lambda", dest="ref", type=_float_list, required=True)
        sp.add_argument("--resolution", type=_resolution, default=101)

    sp = add("surface-grid", cmd_surface_grid, "Renyi entropy on the faces of the 2x2 angle tetrahedron (CSV)")
    sp.add_argument("--alpha", type=_alpha, default=1.0)
    sp.add_argument("--resolution", type=_resolution, default=41)

    sp = add("sample", cmd_sample, "Haar-random statistics (JSON)")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--samples", type=_positive, default=10000)
    sp.add_argument("--bins", type=_positive, default=20)
    sp.add_argument("--nmax", type=int, default=6, help="largest N for incomparability fractions (<2 skips)")
    sp.add_argument("--pairs", type=_positive, default=2000)

    sp = add("polytope", cmd_polytope, "permutohedron of a spectrum (JSON)")
    sp.add_argument("--lambda", dest="lam", type=_float_list)
    sp.add_argument("--arch", type=float, metavar="X")
    sp.add_argument("--depth", choices=("vertices", "facets", "full"), default="full")

    sp = add("evolve", cmd_evolve, "spectrum and entropies under random external fields (CSV)")
    sp.add_argument("--lambda", dest="lam", type=_float_list, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--steps", type=_positive, default=10)
    sp.add_argument("--terms", type=_positive, default=2)
    sp.add_argument("--alpha", dest="alphas", type=_alpha_list, default=[0.5, 1.0, 2.0, 5.0])
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "polytope" and (args.lam is None) == (args.arch is None):
        parser.error("polytope: give exactly one of --lambda or --arch")
    try:
        return args.func(args)
    except EntorderError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
