"""Command-line front end: evaluations, parameter scans, figure data,
beat diagnostics and verification suites.

Output is deterministic: rows come in a fixed order, floats are written with
17 significant digits and JSON keys keep a fixed order.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import correlation, kernels, marginals, oracle
from .errors import ConvergenceDomain, DegenerateParameters, OutsideValidityRegion
from .phase_space import (
    DistributionSample,
    Kind,
    PhasePoint,
    SqueezeFrame,
    husimi_fock,
    rotate,
)

__all__ = [
    "ScanSpec",
    "BeatReport",
    "evaluate",
    "run_scan",
    "figure_spec",
    "beat_report",
    "moving_average",
    "verify_suite",
    "main",
]

CSV_HEADER = ["kind", "n", "phi_deg", "lambda", "p", "q", "p_r", "q_r", "value", "flags"]
FIG_RADIUS = 7.0 * math.sqrt(2.0)  # p^2 + q^2 = 98
FIG1_LAMBDAS = {"fig1a": 21.0, "fig1b": 201.0, "fig1c": 1.0 / 21.0, "fig1d": 1.0 / 201.0}
FIG2_LAMBDA = 201.0
FIG2_ANGLES = (85, 86, 87, 88, 89, 90)
BEAT_WINDOW = 7
BEAT_N_MIN = 10
SUITES = ("kernels", "marginals", "correlation", "pde", "identities")

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _fmt(x: float) -> str:
    return "%.17g" % x


# -- evaluation ---------------------------------------------------------------


_EVALUATORS: dict[Kind, Callable[[int, PhasePoint, SqueezeFrame], DistributionSample]] = {
    Kind.HUSIMI: husimi_fock,
    Kind.MARGINAL_Q: lambda n, pt, fr: marginals.marginal_q(n, pt.q, fr),
    Kind.MARGINAL_P: lambda n, pt, fr: marginals.marginal_p(n, pt.p, fr),
    Kind.CORR_TOTAL: correlation.corr_total,
    Kind.CORR_C1: correlation.corr_c1,
    Kind.CORR_C2: correlation.corr_c2,
    Kind.CORR_C3: correlation.corr_c3,
}


def evaluate(kind: Kind, n: int, point: PhasePoint, frame: SqueezeFrame) -> DistributionSample:
    sample = _EVALUATORS[kind](n, point, frame)
    # Marginal evaluators only see one coordinate; keep the full point for output.
    if sample.point != point:
        sample = DistributionSample(sample.kind, n, frame, point, sample.value, sample.flags)
    return sample


# -- scans ----------------------------------------------------------------------


@dataclass(frozen=True)
class ScanSpec:
    """A sweep over n, lambda and phi (degrees) at points given by ``point_spec``.

    ``point_spec`` is ``("explicit", p, q)``, ``("circle", r2, theta_deg)`` or
    ``("fig2", r2)``; the last places the point at theta = 3 phi / 2 on the
    circle p^2 + q^2 = r2.
    """

    kind: Kind
    n_range: tuple[int, int]
    lambdas: tuple[float, ...]
    phis_deg: tuple[float, ...]
    point_spec: tuple
    fmt: str = "csv"

    def __post_init__(self) -> None:
        n_min, n_max = self.n_range
        if not 0 <= n_min <= n_max:
            raise ValueError("need 0 <= n_min <= n_max")
        if not self.lambdas or not self.phis_deg:
            raise ValueError("need at least one lambda and one phi")
        mode = self.point_spec[0]
        if mode not in ("explicit", "circle", "fig2"):
            raise ValueError(f"unknown point specification {mode!r}")
        if mode in ("circle", "fig2") and not self.point_spec[1] >= 0:
            raise ValueError("circle radius squared must be non-negative")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")

    def point(self, phi_deg: float) -> PhasePoint:
        mode = self.point_spec[0]
        if mode == "explicit":
            return PhasePoint(float(self.point_spec[1]), float(self.point_spec[2]))
        radius = math.sqrt(self.point_spec[1])
        theta = math.radians(self.point_spec[2] if mode == "circle" else 1.5 * phi_deg)
        return PhasePoint(radius * math.sin(theta), radius * math.cos(theta))


def phi_range(start: float, stop: float, step: float) -> tuple[float, ...]:
    """Inclusive grid start, start + step, ..., stop (integer-indexed, no drift)."""
    if not step > 0:
        raise ValueError("phi step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(start + i * step for i in range(max(count, 0)))


def run_scan(spec: ScanSpec) -> list[DistributionSample]:
    """Samples in n-major order, then lambda, then phi."""
    n_min, n_max = spec.n_range
    grid = [
        (lam, phi_deg, SqueezeFrame.from_degrees(lam, phi_deg), spec.point(phi_deg))
        for lam in spec.lambdas
        for phi_deg in spec.phis_deg
    ]
    rows = []
    for n in range(n_min, n_max + 1):
        for _, _, frame, point in grid:
            rows.append(evaluate(spec.kind, n, point, frame))
    return rows


def figure_spec(preset: str, n_max: int = 200, lam: float | None = None) -> ScanSpec:
    """Scan reproducing one figure panel; ``lam`` overrides the preset value."""
    r2 = FIG_RADIUS**2
    if preset in FIG1_LAMBDAS:
        # Point (p, q) = (0, 7 sqrt 2) before rotation.
        return ScanSpec(
            Kind.HUSIMI,
            (0, n_max),
            (lam if lam is not None else FIG1_LAMBDAS[preset],),
            phi_range(0.0, 360.0, 2.0),
            ("circle", r2, 0.0),
        )
    if preset in ("fig2", "fig3"):
        return ScanSpec(
            Kind.HUSIMI if preset == "fig2" else Kind.CORR_TOTAL,
            (0, n_max),
            (lam if lam is not None else FIG2_LAMBDA,),
            tuple(float(a) for a in FIG2_ANGLES),
            ("fig2", r2),
        )
    raise ValueError(f"unknown preset {preset!r}")


def _row(sample: DistributionSample, phi_deg: float) -> list[str]:
    rp = rotate(sample.point, sample.frame)
    return [
        sample.kind.value,
        str(sample.n),
        _fmt(phi_deg),
        _fmt(sample.frame.lam),
        _fmt(sample.point.p),
        _fmt(sample.point.q),
        _fmt(rp.p_r),
        _fmt(rp.q_r),
        _fmt(sample.value),
        sample.flag_string(),
    ]


def render(rows: Sequence[DistributionSample], phis_deg: Sequence[float], fmt: str) -> str:
    """CSV or JSON text; ``phis_deg`` gives the nominal angle of each row."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for sample, phi_deg in zip(rows, phis_deg):
            writer.writerow(_row(sample, phi_deg))
        return buf.getvalue()
    records = []
    for sample, phi_deg in zip(rows, phis_deg):
        rp = rotate(sample.point, sample.frame)
        records.append(
            {
                "kind": sample.kind.value,
                "n": sample.n,
                "phi_deg": phi_deg,
                "lambda": sample.frame.lam,
                "p": sample.point.p,
                "q": sample.point.q,
                "p_r": rp.p_r,
                "q_r": rp.q_r,
                "value": sample.value,
                "flags": sorted(f.value for f in sample.flags),
            }
        )
    return json.dumps(records, indent=1) + "\n"


def scan_text(spec: ScanSpec) -> str:
    rows = run_scan(spec)
    per_n = len(spec.lambdas) * len(spec.phis_deg)
    angles = [spec.phis_deg[i % len(spec.phis_deg)] for i in range(per_n)]
    return render(rows, angles * (len(rows) // per_n), spec.fmt)


# -- beats ------------------------------------------------------------------------


@dataclass(frozen=True)
class BeatReport:
    kind: str
    lam: float
    phi_deg: float
    n_of_sign_changes: int
    envelope_minima: list[int]
    max_value: float

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "lambda": self.lam,
            "phi_deg": self.phi_deg,
            "n_of_sign_changes": self.n_of_sign_changes,
            "envelope_minima": self.envelope_minima,
            "max_value": self.max_value,
        }


def moving_average(values: Sequence[float], window: int = BEAT_WINDOW) -> list[float | None]:
    """Centered mean; ``None`` where the window does not fit."""
    half = window // 2
    out: list[float | None] = [None] * len(values)
    for i in range(half, len(values) - half):
        out[i] = math.fsum(values[i - half : i + half + 1]) / window
    return out


def sign_changes(values: Iterable[float]) -> int:
    signs = [v > 0 for v in values if v != 0.0]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def envelope(values: Sequence[float], window: int = BEAT_WINDOW) -> list[float | None]:
    """Smoothed magnitude of the fast oscillation about the local mean.

    |v_n - <v>_n| averaged again over the same window.  Averaging |v| alone
    leaves most of the period-2 carrier in place, so every carrier cycle would
    register as a minimum; subtracting the local mean first isolates the
    carrier amplitude, whose collapses are the beats.
    """
    trend = moving_average(values, window)
    dev = [abs(v - t) if t is not None else None for v, t in zip(values, trend)]
    half = window // 2
    out: list[float | None] = [None] * len(values)
    for i in range(len(values)):
        chunk = dev[i - half : i + half + 1] if i >= half else []
        if len(chunk) == window and all(d is not None for d in chunk):
            out[i] = math.fsum(chunk) / window
    return out


def envelope_minima(
    ns: Sequence[int], values: Sequence[float], window: int = BEAT_WINDOW, n_min: int = BEAT_N_MIN
) -> list[int]:
    env = envelope(values, window)
    out = []
    for i in range(1, len(values) - 1):
        if ns[i] < n_min or None in (env[i - 1], env[i], env[i + 1]):
            continue
        if env[i] < env[i - 1] and env[i] <= env[i + 1]:
            out.append(ns[i])
    return out


def beat_report(kind: str, lam: float, phi_deg: float, ns: Sequence[int], values: Sequence[float]) -> BeatReport:
    order = sorted(range(len(ns)), key=ns.__getitem__)
    ns = [ns[i] for i in order]
    values = [values[i] for i in order]
    return BeatReport(
        kind,
        lam,
        phi_deg,
        sign_changes(values),
        envelope_minima(ns, values),
        max(values) if values else math.nan,
    )


def beats_from_csv(text: str) -> list[BeatReport]:
    """One report per (kind, lambda, phi) series of a scan CSV."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or list(reader.fieldnames) != CSV_HEADER:
        raise ValueError(f"expected CSV header {','.join(CSV_HEADER)}")
    series: dict[tuple[str, float, float], tuple[list[int], list[float]]] = {}
    for line, rec in enumerate(reader, start=2):
        try:
            key = (rec["kind"], float(rec["lambda"]), float(rec["phi_deg"]))
            n = int(rec["n"])
            value = float(rec["value"])
        except (TypeError, ValueError) as exc:
            raise ValueError(f"line {line}: {exc}") from None
        ns, vs = series.setdefault(key, ([], []))
        ns.append(n)
        vs.append(value)
    return [beat_report(k[0], k[1], k[2], *series[k]) for k in sorted(series)]


# -- verification -------------------------------------------------------------


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def _check(name: str, measured: float, tol: float) -> oracle.Check:
    return oracle.Check(name, bool(measured <= tol), measured, tol)


def _suite_kernels() -> list[oracle.Check]:
    checks = []
    worst = 0.0
    for lam in (1e-3, 0.3, 2.0, 21.0, 1e3):
        for phi in (0.0, 0.9, 2.5, 4.4):
            frame = SqueezeFrame(lam, phi)
            for xi, eta in ((0.3, -0.7), (1.1, 0.4), (-0.05, 0.02)):
                fp = kernels.FourierPoint(xi, eta)
                product = kernels.kernel_kQ(xi, frame) * kernels.kernel_kR(eta, frame) * kernels.kernel_kC(fp, frame)
                worst = max(worst, _rel(kernels.kernel_K(fp, frame), product))
    checks.append(_check("kernels/factorization", worst, 1e-13))

    worst = 0.0
    for lam in (0.2, 3.0, 40.0):
        for phi in (0.4, 1.7):
            fr = SqueezeFrame(lam, phi)
            for xi, eta in ((0.3, -0.7), (1.1, 0.4)):
                k = kernels.kernel_K(kernels.FourierPoint(xi, eta), fr)
                k_rot = kernels.kernel_K(kernels.FourierPoint(eta, -xi), SqueezeFrame(lam, phi + math.pi))
                k_rec = kernels.kernel_K(kernels.FourierPoint(eta, xi), fr.reciprocal())
                worst = max(worst, _rel(k, k_rot), _rel(k, k_rec))
    checks.append(_check("kernels/symmetry", worst, 1e-13))

    worst = 0.0
    for xi, eta, lam in ((1.0, 0.0, 2.0), (1.0, 1.0, 5.0), (0.3, -1.2, 0.4)):
        lhs, rhs = kernels.kernel_glauber_flip(kernels.FourierPoint(xi, eta), lam)
        worst = max(worst, _rel(lhs, rhs))
    checks.append(_check("kernels/glauber_flip", worst, 1e-14))

    value = oracle.reconstruct_husimi(2, PhasePoint(0.3, 0.5), 2.0, 0.6)
    exact = husimi_fock(2, PhasePoint(0.3, 0.5), SqueezeFrame(2.0, 0.6)).value
    checks.append(_check("kernels/reconstruction", abs(value - exact), 1e-6))
    return checks


def _suite_marginals() -> list[oracle.Check]:
    checks = []
    worst_q = worst_p = worst_a6 = 0.0
    for n, x, lam, phi in ((0, 0.4, 4.0, 0.0), (3, 2.0, 21.0, 0.7), (5, -1.1, 0.3, 2.0), (8, 0.9, 2.5, 4.0)):
        frame = SqueezeFrame(lam, phi)
        worst_q = max(worst_q, abs(oracle.marginal_q_quadrature(n, x, frame) - marginals.marginal_q(n, x, frame).value))
        worst_p = max(worst_p, abs(oracle.marginal_p_quadrature(n, x, frame) - marginals.marginal_p(n, x, frame).value))
    for n, q, lam, phi in ((2, 0.7, 3.0, 0.2), (6, 1.3, 1.5, 0.5), (4, -0.4, 0.6, 2.6)):
        frame = SqueezeFrame(lam, phi)
        worst_a6 = max(worst_a6, _rel(marginals.marginal_q_hermite_form(n, q, frame), marginals.marginal_q(n, q, frame).value))
    checks.append(_check("marginals/q_vs_quadrature", worst_q, 1e-8))
    checks.append(_check("marginals/p_vs_quadrature", worst_p, 1e-8))
    checks.append(_check("marginals/hermite_product_form", worst_a6, 1e-9))
    worst = 0.0
    for n in (0, 4, 10):
        frame = SqueezeFrame(7.0, 1.2)
        spec = oracle.QuadratureSpec()
        f = lambda q: marginals.marginal_q(n, q, frame).value / math.sqrt(2 * math.pi)
        total, _ = oracle.integrate_1d(f, spec.with_width(oracle.envelope_half_width(f)))
        worst = max(worst, abs(total - 1.0))
    checks.append(_check("marginals/unit_integral", worst, 1e-8))
    return checks


def _suite_correlation() -> list[oracle.Check]:
    checks = []
    worst = 0.0
    for n, p, q, lam, phi in ((1, 0.2, -0.3, 2.0, math.pi / 4), (2, 0.5, 0.5, 2.0, math.pi / 4), (3, -0.6, 0.9, 3.0, 1.0)):
        frame = SqueezeFrame(lam, phi)
        pt = PhasePoint(p, q)
        worst = max(worst, abs(oracle.corr_c3_quadrature(n, pt, frame) - correlation.corr_c3(n, pt, frame).value))
    checks.append(_check("correlation/c3_vs_quadrature", worst, 1e-6))
    worst = 0.0
    for n in (0, 4, 9, 15):
        for lam, phi in ((3.0, 0.5), (0.4, 2.2), (21.0, 1.4)):
            frame = SqueezeFrame(lam, phi)
            pt = PhasePoint(0.8, -1.3)
            total = correlation.corr_total(n, pt, frame).value
            split = correlation.corr_c1(n, pt, frame).value + correlation.corr_c2(n, pt, frame).value
            worst = max(worst, abs(total - split) / max(abs(total), 1e-12))
    checks.append(_check("correlation/decomposition_closure", worst, 1e-10))
    worst = max(abs(correlation.corr_c2(n, PhasePoint(1.0, 1.0), SqueezeFrame(7.0, 0.0)).value) for n in range(6))
    checks.append(_check("correlation/c2_vanishes_unrotated", worst, 0.0))
    return checks


PDE_FRAMES = tuple(
    (lam, phi_deg) for lam in (0.2, 0.5, 2.0, 4.0, 9.0, 30.0) for phi_deg in (0.0, 30.0, 75.0, 140.0)
) + ((1.0, 0.0),)


def _suite_pde() -> list[oracle.Check]:
    checks = []
    for i, (lam, phi_deg) in enumerate(PDE_FRAMES):
        frame = SqueezeFrame.from_degrees(lam, phi_deg)
        n = i % 4
        name = f"pde/lambda={_fmt(lam)}/phi_deg={_fmt(phi_deg)}"
        try:
            reports = [
                ("husimi", oracle.pde_residual_husimi(n, PhasePoint(0.4, -0.6), frame)),
                ("q", oracle.pde_residual_marginals(n, 0.7, frame, which="q")),
                ("p", oracle.pde_residual_marginals(n, -0.5, frame, which="p")),
            ]
        except DegenerateParameters:
            checks.append(oracle.Check(name, True, None, None, "skipped: singular manifold", skipped=True))
            continue
        for label, rep in reports:
            dev = abs(rep.estimated_order - 2.0)
            checks.append(oracle.Check(f"{name}/{label}", dev <= 0.2, rep.estimated_order, 0.2))
    return checks


def _suite_identities() -> list[oracle.Check]:
    return oracle.identity_suite()


_SUITES = {
    "kernels": _suite_kernels,
    "marginals": _suite_marginals,
    "correlation": _suite_correlation,
    "pde": _suite_pde,
    "identities": _suite_identities,
}


def verify_suite(name: str) -> list[oracle.Check]:
    names = SUITES if name == "all" else (name,)
    checks = []
    for s in names:
        checks.extend(_SUITES[s]())
    return checks


# -- command handlers -----------------------------------------------------------


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")


def _cmd_eval(args: argparse.Namespace) -> int:
    frame = SqueezeFrame.from_degrees(args.lam, args.phi_deg)
    sample = evaluate(Kind(args.kind), args.n, PhasePoint(args.p, args.q), frame)
    record = sample.to_dict()
    record["phi_deg"] = args.phi_deg
    _write(json.dumps(record) + "\n", args.out)
    return EXIT_OK


def _cmd_scan(args: argparse.Namespace) -> int:
    if args.theta_deg is not None:
        point_spec = ("circle", args.r2, args.theta_deg)
    elif args.fig2_point:
        point_spec = ("fig2", args.r2)
    else:
        point_spec = ("explicit", args.p, args.q)
    if args.phi_range is not None:
        phis = phi_range(*args.phi_range)
    else:
        phis = tuple(args.phi_deg)
    spec = ScanSpec(Kind(args.kind), (args.nmin, args.nmax), tuple(args.lam), phis, point_spec, args.format)
    _write(scan_text(spec), args.out)
    return EXIT_OK


def _cmd_figure(args: argparse.Namespace) -> int:
    spec = figure_spec(args.preset, args.nmax, args.lam)
    if args.format != spec.fmt:
        spec = ScanSpec(spec.kind, spec.n_range, spec.lambdas, spec.phis_deg, spec.point_spec, args.format)
    _write(scan_text(spec), args.out)
    return EXIT_OK


def _cmd_beats(args: argparse.Namespace) -> int:
    text = Path(args.input).read_text(encoding="utf-8") if args.input != "-" else sys.stdin.read()
    reports = beats_from_csv(text)
    _write(json.dumps([r.to_dict() for r in reports], indent=1) + "\n", args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    checks = verify_suite(args.suite)
    ok = all(c.passed for c in checks)
    report = {"suite": args.suite, "pass": ok, "checks": [c.to_dict() for c in checks]}
    _write(json.dumps(report, indent=1) + "\n", args.out)
    return EXIT_OK if ok else EXIT_CHECK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit code 2 on every usage error
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    kinds = [k.value for k in Kind]
    parser = _Parser(prog="squeezed-husimi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("eval", help="evaluate one distribution value")
    p.add_argument("kind", choices=kinds)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--phi-deg", type=float, default=0.0)
    common(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("scan", help="sweep n, lambda and phi")
    p.add_argument("kind", choices=kinds)
    p.add_argument("--nmin", type=int, default=0)
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--lambda", dest="lam", type=float, nargs="+", default=[1.0])
    p.add_argument("--phi-deg", type=float, nargs="+", default=[0.0])
    p.add_argument("--phi-range", type=float, nargs=3, metavar=("START", "STOP", "STEP"))
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--r2", type=float, default=FIG_RADIUS**2, help="p^2 + q^2 for circle points")
    p.add_argument("--theta-deg", type=float, help="fixed polar angle on the circle")
    p.add_argument("--fig2-point", action="store_true", help="polar angle 3 phi / 2 on the circle")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("figure", help="emit the data behind a figure preset")
    p.add_argument("--preset", required=True, choices=(*FIG1_LAMBDAS, "fig2", "fig3"))
    p.add_argument("--nmax", type=int, default=200)
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="override the preset lambda")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("beats", help="beat diagnostics of a scan CSV")
    p.add_argument("input", help="scan CSV path, or - for stdin")
    common(p)
    p.set_defaults(func=_cmd_beats)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    common(p)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"squeezed-husimi: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ConvergenceDomain, OutsideValidityRegion) as exc:
        print(f"squeezed-husimi: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
