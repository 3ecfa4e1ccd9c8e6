"""Desk-scale experiments for the convergence, Voronovskaja, lower-bound and
saturation estimates, plus the exact identity suite.

Every experiment produces a :class:`Report` whose rows carry the fixed fields
``n, sup_err, bound, err_times_qn, ratio``; everything else goes into the
metadata. Reports are deterministic: the run stamp is a hash of the
configuration, not a clock reading.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .durrmeyer import (
    bernstein_monomial,
    idd1_rhs,
    idd2_rhs,
    moment_ratio,
    moment_table,
    operator_image,
    recurrence_step,
    theta,
    u_monomial_direct,
    u_monomial_stirling,
)
from .errors import DomainError, HypothesisError
from .numeric import EXACT, FLOAT64, NumericMode, RationalComplex
from .poly import ComplexPoly
from .qcore import (
    QContext,
    jackson_integral,
    q_beta,
    q_binomial,
    q_derivative,
    q_factorial,
    q_integer,
    q_stirling,
)
from .series import (
    DEFAULT_SAMPLES,
    DEFAULT_TRUNCATION,
    DiskSpec,
    PowerSeries,
    builtin_series,
    sup_norm_on_circle,
    convergence_majorant,
    theorem1_bound,
    theorem2_bound,
)
from .voronovskaja import (
    LqCoefficients,
    lq_coefficient_deviation,
    lq_direct,
    lq_polynomial,
    lq_series,
)

__all__ = [
    "FIELDS",
    "ExperimentConfig",
    "Row",
    "Report",
    "convergence_experiment",
    "voronovskaja_experiment",
    "lower_bound_experiment",
    "saturation_diagnostic",
    "decay_factor",
    "IdentityGrid",
    "CheckResult",
    "SuiteResult",
    "identity_suite",
    "STIRLING_DEPENDENT",
]

FIELDS = ("n", "sup_err", "bound", "err_times_qn", "ratio")
REL_SLACK = 1e-9
FORMATS = ("csv", "json", "md")


@dataclass(frozen=True)
class ExperimentConfig:
    """What to run. ``fn`` uses the builtin series syntax (``exp``, ``geometric:2`` ...)."""

    fn: str = "exp"
    q: object = "3/2"
    r: object = 1
    n_min: int = 2
    n_max: int = 16
    samples: int = DEFAULT_SAMPLES
    mode: NumericMode = FLOAT64
    out_format: str = "csv"
    truncation: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if self.n_min < 1 or self.n_max < self.n_min:
            raise DomainError(f"bad n-range {self.n_min}..{self.n_max}")
        if self.out_format not in FORMATS:
            raise DomainError(f"out_format must be one of {FORMATS}")
        if self.truncation < 1:
            raise DomainError("truncation must be >= 1")
        # fail early on malformed values
        self.ctx
        self.disk

    @property
    def ctx(self) -> QContext:
        return QContext(self.q, self.mode)

    @property
    def disk(self) -> DiskSpec:
        r = self.mode.scalar(self.r)
        return DiskSpec(r, self.samples)

    def series(self) -> PowerSeries:
        return builtin_series(self.fn, self.truncation, self.mode)

    @property
    def n_range(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def echo(self) -> dict:
        return {
            "fn": self.fn,
            "q": str(self.ctx.q),
            "r": str(self.disk.r),
            "n_min": self.n_min,
            "n_max": self.n_max,
            "samples": self.samples,
            "mode": self.mode.label,
            "truncation": self.truncation,
        }

    def stamp(self, experiment: str) -> str:
        blob = json.dumps({"experiment": experiment, **self.echo()}, sort_keys=True)
        return "cfg-" + hashlib.sha256(blob.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class Row:
    n: int
    sup_err: object
    bound: object
    err_times_qn: object
    ratio: object = None


def _g17(x) -> str:
    return "" if x is None else format(float(x), ".17g")


@dataclass
class Report:
    experiment: str
    rows: list
    metadata: dict = field(default_factory=dict)
    budget: object = 0  # absolute truncation allowance for the bound check

    def __post_init__(self):
        self.rows = sorted(self.rows, key=lambda row: row.n)

    def by_n(self, n: int) -> Row:
        for row in self.rows:
            if row.n == n:
                return row
        raise KeyError(n)

    def violations(self) -> list:
        """Rows where ``sup_err`` exceeds ``bound`` beyond slack and truncation budget."""
        return [row for row in self.rows if row.bound is not None and self.exceeds(row.sup_err, row.bound)]

    def exceeds(self, err, bound) -> bool:
        allowed = bound + self.budget if _is_exact(bound) else bound * (1 + REL_SLACK) + self.budget
        return err > allowed

    @property
    def bounds_hold(self) -> bool:
        return not self.violations()

    def column(self, name: str) -> list:
        return [getattr(row, name) for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FIELDS)
        for row in self.rows:
            w.writerow([row.n] + [_g17(getattr(row, k)) for k in FIELDS[1:]])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = []
        for row in self.rows:
            entry = {"n": row.n}
            for k in FIELDS[1:]:
                v = getattr(row, k)
                entry[k] = None if v is None else float(_g17(v))
                if _is_exact(v):
                    entry[k + "_exact"] = str(v)
            rows.append(entry)
        doc = {"experiment": self.experiment, "rows": rows, "metadata": _jsonable(self.metadata)}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_markdown(self) -> str:
        lines = [f"### {self.experiment}", ""]
        for k, v in _jsonable(self.metadata).items():
            lines.append(f"- {k}: {json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v}")
        lines += ["", "| " + " | ".join(FIELDS) + " |", "|" + "---|" * len(FIELDS)]
        for row in self.rows:
            cells = [str(row.n)] + [_g17(getattr(row, k)) or "-" for k in FIELDS[1:]]
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        if fmt == "md":
            return self.to_markdown()
        raise DomainError(f"unknown output format {fmt!r}")


def _is_exact(x) -> bool:
    return isinstance(x, (Fraction, RationalComplex))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else str(obj)
    if _is_exact(obj):
        return str(obj)
    return float(obj)


# -- experiments --------------------------------------------------------------


def _require_q_above_one(ctx: QContext):
    if not ctx.q > 1:
        raise HypothesisError("requires q > 1 (hypothesis of the estimate)")


def _guard(cfg: ExperimentConfig, power: int, label: str):
    ctx = cfg.ctx
    _require_q_above_one(ctx)
    f = cfg.series()
    rho = ctx.q**power * cfg.disk.r
    if f.radius != math.inf and not rho < f.radius:
        raise HypothesisError(
            f"requires {label} < R (hypothesis of the {'convergence' if power == 1 else 'Voronovskaja'} estimate);"
            f" got {float(rho):.6g} >= {float(f.radius):.6g}"
        )
    return ctx, f


def _error_poly(n: int, ctx: QContext, f: PowerSeries) -> ComplexPoly:
    return operator_image(n, ctx, f) - ComplexPoly(f.coeffs)


def _truncation_budget(f: PowerSeries, r) -> object:
    # |U(e_m; z)| <= r^m on the disk, so dropping the tail moves U f - f by at most twice the tail
    return 2 * f.tail_bound(f.N, r)


def _ratios(errs: list) -> list:
    out = []
    for a, b in zip(errs, errs[1:] + [None]):
        out.append(a / b if b not in (None, 0) else None)
    return out


def _finish(name: str, cfg: ExperimentConfig, ns: list, errs, bounds, scaled, meta, budget) -> Report:
    ratios = _ratios(list(errs))
    rows = [Row(n, e, b, s, rt) for n, e, b, s, rt in zip(ns, errs, bounds, scaled, ratios)]
    metadata = {"experiment": name, "config": cfg.echo(), "stamp": cfg.stamp(name),
                "rel_slack": REL_SLACK, "truncation_budget": budget, **meta}
    return Report(name, rows, metadata, budget)


def convergence_experiment(cfg: ExperimentConfig) -> Report:
    """``||U_{n,q} f - f||_r`` against the convergence majorant, for each ``n``."""
    ctx, f = _guard(cfg, 1, "q*r")
    disk = cfg.disk
    mode = cfg.mode
    ns = list(cfg.n_range)
    errs, bounds, scaled = [], [], []
    for n in ns:
        err = sup_norm_on_circle(_error_poly(n, ctx, f), disk, mode)
        errs.append(err)
        bounds.append(theorem1_bound(f, ctx, n, disk))
        scaled.append(err * q_integer(n + 1, ctx))
    budget = _truncation_budget(f, disk.r)
    rep = _finish("convergence", cfg, ns, errs, bounds, scaled, {}, budget)
    rep.metadata["decay_factor"] = decay_factor(rep)
    majorants = [convergence_majorant(f, ctx, n, disk) for n in ns]
    rep.metadata["majorant_holds"] = all(
        not rep.exceeds(e, b) for e, b in zip(errs, majorants)
    )
    return rep


def voronovskaja_experiment(cfg: ExperimentConfig) -> Report:
    """``||U f - f - L_q(f)/[n+1]_q||_r`` against the quantitative Voronovskaja majorant.

    ``err_times_qn`` is ``||[n+1]_q (U f - f) - L_q f||_r``, which has to vanish
    like ``1/[n+1]_q``.
    """
    ctx, f = _guard(cfg, 2, "q^2*r")
    disk = cfg.disk
    mode = cfg.mode
    lq_poly = lq_polynomial(f, ctx)
    ns = list(cfg.n_range)
    errs, bounds, scaled = [], [], []
    for n in ns:
        qn1 = q_integer(n + 1, ctx)
        resid = _error_poly(n, ctx, f) - lq_poly / qn1
        err = sup_norm_on_circle(resid, disk, mode)
        errs.append(err)
        bounds.append(theorem2_bound(f, ctx, n, disk))
        scaled.append(err * qn1)
    # tail of L_q over the disk, with c_m <= m(m-1) q^(m-1)
    r = disk.r
    lq_tail = f.weighted_abs_sum(f.N + 1, lambda m: m * (m - 1), ctx.q * r) * (1 + r) / (ctx.q * r)
    budget = _truncation_budget(f, r) + lq_tail / q_integer(cfg.n_min + 1, ctx)
    meta = {"scaled_residual": [e * q_integer(n + 1, ctx) ** 2 for n, e in zip(ns, errs)]}
    return _finish("voronovskaja", cfg, ns, errs, bounds, scaled, meta, budget)


def _lq_norm(f: PowerSeries, ctx: QContext, disk: DiskSpec, mode: NumericMode):
    return sup_norm_on_circle(lq_polynomial(f, ctx), disk, mode)


def _floor_index(ns: list, scaled: list, half):
    """Smallest ``n1`` with ``scaled[n] >= half`` for every ``n >= n1`` in the range."""
    n1 = None
    for n, s in reversed(list(zip(ns, scaled))):
        if s >= half:
            n1 = n
        else:
            break
    return n1


def lower_bound_experiment(cfg: ExperimentConfig, check_hypotheses: bool = True) -> Report:
    """``[n+1]_q ||U_{n,q} f - f||_r`` and its limit candidate ``||L_q f||_r``.

    Reports the empirical constant (minimum over the n-range) and the first
    ``n1`` from which the scaled error stays above ``||L_q f||_r / 2``.
    """
    f = cfg.series()
    if f.is_linear():
        raise HypothesisError("requires f not a polynomial of degree <= 1 (lower estimate hypothesis)")
    if check_hypotheses:
        ctx, f = _guard(cfg, 2, "q^2*r")
    else:
        ctx = cfg.ctx
    disk = cfg.disk
    mode = cfg.mode
    ns = list(cfg.n_range)
    errs, bounds, scaled = [], [], []
    upper_ok = ctx.q > 1 and (f.radius == math.inf or ctx.q * disk.r < f.radius)
    for n in ns:
        err = sup_norm_on_circle(_error_poly(n, ctx, f), disk, mode)
        errs.append(err)
        bounds.append(theorem1_bound(f, ctx, n, disk) if upper_ok else None)
        scaled.append(err * q_integer(n + 1, ctx))
    lq_norm = _lq_norm(f, ctx, disk, mode) if ctx.q > 1 else None
    half = lq_norm / 2 if lq_norm is not None else None
    n1 = _floor_index(ns, scaled, half) if half is not None else None
    meta = {
        "lq_norm": lq_norm,
        "empirical_constant": min(scaled),
        "n1": n1,
        "floor_holds": n1 is not None and all(s > 0 for s in scaled),
    }
    budget = _truncation_budget(f, disk.r)
    return _finish("lower_bound", cfg, ns, errs, bounds, scaled, meta, budget)


def saturation_diagnostic(cfg: ExperimentConfig) -> Report:
    """Forward direction of saturation (linear f has zero error) plus a floor check.

    For non-linear ``f`` the scaled error ``[n+1]_q ||U f - f||_r`` is examined:
    if it does not fall below half its maximum towards the end of the range, the
    report carries the flag ``"not linear: saturation floor detected"``.
    """
    f = cfg.series()
    ctx = cfg.ctx
    disk = cfg.disk
    if f.is_linear():
        ns = list(cfg.n_range)
        errs = [sup_norm_on_circle(_error_poly(n, ctx, f), disk, cfg.mode) for n in ns]
        scaled = [e * q_integer(n + 1, ctx) for n, e in zip(ns, errs)]
        zero = all(e == 0 for e in errs) if cfg.mode.is_exact else all(e <= 64 * cfg.mode.eps() for e in errs)
        meta = {"linear": True, "all_zero": zero, "flag": "linear: zero error" if zero else "linear: nonzero error"}
        return _finish("saturation", cfg, ns, errs, [None] * len(ns), scaled, meta, 0)
    rep = lower_bound_experiment(cfg, check_hypotheses=False)
    scaled = rep.column("err_times_qn")
    tail = scaled[len(scaled) // 2:]
    floor = min(tail) >= max(scaled) / 2 and min(tail) > 0
    rep.experiment = "saturation"
    rep.metadata["experiment"] = "saturation"
    rep.metadata["stamp"] = cfg.stamp("saturation")
    rep.metadata["linear"] = False
    rep.metadata["flag"] = "not linear: saturation floor detected" if floor else "not linear: no floor observed"
    return rep


def decay_factor(report: Report, n_from: int | None = None, n_to: int | None = None) -> float | None:
    """Geometric mean of ``sup_err(n)/sup_err(n+1)`` for ``n_from <= n < n_to``.

    Defaults to the top half of the report's n-range.
    """
    ns = [row.n for row in report.rows]
    if not ns:
        return None
    if n_to is None:
        n_to = ns[-1]
    if n_from is None:
        n_from = ns[0] + (ns[-1] - ns[0]) // 2
    ratios = [float(row.ratio) for row in report.rows if n_from <= row.n < n_to and row.ratio is not None]
    if not ratios or any(x <= 0 for x in ratios):
        return None
    return math.exp(sum(math.log(x) for x in ratios) / len(ratios))


# -- exact identity suite ---------------------------------------------------------


@dataclass(frozen=True)
class IdentityGrid:
    n_max: int = 8
    m_max: int = 8
    qs: tuple = ("1/2", "2/3", "1", "3/2", "2")
    binomial_n_max: int = 12
    stirling_k_max: int = 8
    jackson_ps: tuple = ("1/3", "1/2", "2/3")
    jackson_mn_max: int = 6


@dataclass(frozen=True)
class CheckResult:
    identity: str
    params: str
    passed: bool
    lhs: str = ""
    rhs: str = ""


@dataclass
class SuiteResult:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> dict:
        """``identity -> (passed, total)``."""
        out: dict = {}
        for c in self.checks:
            ok, tot = out.get(c.identity, (0, 0))
            out[c.identity] = (ok + c.passed, tot + 1)
        return out

    def failed_identities(self) -> set:
        return {c.identity for c in self.failures()}

    def table(self) -> str:
        lines = [f"{'identity':<28} {'result':<6} {'cases':>6}"]
        for name, (ok, tot) in self.summary().items():
            lines.append(f"{name:<28} {'PASS' if ok == tot else 'FAIL':<6} {ok:>3}/{tot}")
        for c in self.failures():
            lines.append(f"FAIL {c.identity} [{c.params}]: lhs={c.lhs} rhs={c.rhs}")
        return "\n".join(lines)


class _Recorder:
    def __init__(self):
        self.checks = []

    def eq(self, identity: str, params: str, lhs, rhs):
        ok = lhs == rhs
        self.checks.append(CheckResult(identity, params, ok, "" if ok else str(lhs), "" if ok else str(rhs)))

    def close(self, identity: str, params: str, lhs, rhs, tol):
        ok = abs(lhs - rhs) <= tol
        self.checks.append(CheckResult(identity, params, ok, "" if ok else str(lhs), "" if ok else str(rhs)))

    def true(self, identity: str, params: str, ok: bool, detail: str = ""):
        self.checks.append(CheckResult(identity, params, bool(ok), "" if ok else detail, ""))


def _qcore_checks(rec: _Recorder, ctx: QContext, grid: IdentityGrid, stirling: Callable):
    qs = f"q={ctx.q}"
    for n in range(grid.binomial_n_max + 1):
        for k in range(n + 1):
            rec.eq("q_binomial", f"{qs} n={n} k={k}", q_binomial(n, k, ctx),
                   q_factorial(n, ctx) / (q_factorial(k, ctx) * q_factorial(n - k, ctx)))
    for m in range(grid.m_max + 1):
        for k in range(grid.stirling_k_max + 1):
            qk = q_integer(k, ctx)
            prod = Fraction(1)
            for s in range(m):
                prod *= ctx.q**s * qk + q_integer(s, ctx)
            expansion = sum((stirling(m, s, ctx) * qk**s for s in range(m + 1)), Fraction(0))
            rec.eq("stirling_product", f"{qs} m={m} k={k}", prod, expansion)
    if ctx.q != 1:
        z = Fraction(3, 7)
        for m in range(11):
            e_m = ComplexPoly.monomial(m, Fraction(1))
            fprime0 = Fraction(1) if m == 1 else Fraction(0)
            rec.eq("q_derivative_monomial", f"{qs} m={m}", q_derivative(e_m, z, ctx, fprime0),
                   q_integer(m, ctx) * z ** (m - 1) if m else Fraction(0))


def _jackson_checks(rec: _Recorder, grid: IdentityGrid):
    # the Jackson sum is infinite, so these compare within the configured tolerance
    for ptext in grid.jackson_ps:
        p = Fraction(ptext)
        ctx = QContext(p, EXACT)
        tol = ctx.jackson_tol
        for m in range(11):
            val = jackson_integral(lambda t, m=m: t**m, p, ctx)
            rec.close("jackson_monomial", f"p={p} m={m}", val, 1 / q_integer(m + 1, ctx), tol)
        for m in range(1, grid.jackson_mn_max + 1):
            for n in range(1, grid.jackson_mn_max + 1):
                def integrand(t, m=m, n=n):
                    out = t ** (m - 1)
                    for s in range(n - 1):
                        out *= 1 - p ** (s + 1) * t
                    return out
                val = jackson_integral(integrand, p, ctx)
                exact = q_beta(m, n, p, ctx)
                rec.close("jackson_q_beta", f"p={p} m={m} n={n}", val, exact, tol * exact)


def _operator_checks(rec: _Recorder, ctx: QContext, grid: IdentityGrid, stirling: Callable):
    qs = f"q={ctx.q}"
    one = Fraction(1)
    zpoly = ComplexPoly([0, one])
    if ctx.q > 1:
        beta_p = 1 / ctx.q
    else:
        beta_p = ctx.q
    bctx = ctx.with_q(beta_p)
    for n in range(1, grid.n_max + 1):
        table = moment_table(n, ctx, grid.m_max + 1)
        qn1 = q_integer(n + 1, ctx)
        prod_norm = q_factorial(n - 1, ctx)
        for m in range(grid.m_max + 1):
            ps = f"{qs} n={n} m={m}"
            rec_row = table.row(m)
            direct = u_monomial_direct(n, m, ctx)
            rec.eq("recurrence_vs_direct", ps, rec_row, direct)
            if m >= 1:
                rec.eq("stirling_vs_recurrence", ps, u_monomial_stirling(n, m, ctx, stirling), rec_row)
                norm = sum((stirling(m, s, ctx) * q_integer(n, ctx) ** s for s in range(1, m + 1)), Fraction(0))
                rec.eq("normalization", ps, prod_norm / q_factorial(n + m - 1, ctx) * norm, one)
            rec.eq("rec1", ps, recurrence_step(n, m, ctx, direct).truncated(min(m + 1, n)),
                   u_monomial_direct(n, m + 1, ctx))
            rec.true("degree", ps, direct.degree <= min(m, n), f"degree {direct.degree}")
            rec.eq("endpoint_one", ps, direct(one), one)
            rec.eq("endpoint_zero", ps, direct(Fraction(0)), one if m == 0 else Fraction(0))
            if m == 0:
                rec.eq("closed_form", ps, direct, ComplexPoly([one]))
            elif m == 1:
                rec.eq("closed_form", ps, direct, zpoly)
            elif m == 2:
                closed = ComplexPoly.monomial(2, one) + zpoly * ComplexPoly([one, -one]) * ((1 + ctx.q) / qn1)
                rec.eq("closed_form", ps, direct, closed)
            if m >= 1:
                prev = u_monomial_direct(n, m - 1, ctx)
                rec.eq("idd1", ps, direct - ComplexPoly.monomial(m, one), idd1_rhs(n, m, ctx, prev))
            if m >= 2:
                rec.eq("idd2", ps, theta(n, m, ctx), idd2_rhs(n, m, ctx, u_monomial_direct(n, m - 1, ctx), theta(n, m - 1, ctx)))
            if m == 2:
                rec.true("theta2_zero", ps, theta(n, 2, ctx).is_zero())
                if ctx.q >= 1:
                    lq2 = lq_polynomial(builtin_series("monomial:2", 2, EXACT), ctx)
                    rec.eq("voronovskaja_m2", ps, direct - ComplexPoly.monomial(2, one), lq2 / qn1)
            for k in range(1, n):
                if ctx.q == 1:
                    beta = q_beta(k + m, n - k, 1, ctx)
                    expected = (n - 1) * q_binomial(n - 2, k - 1, ctx) * beta
                else:
                    beta = q_beta(k + m, n - k, beta_p, ctx)
                    expected = q_integer(n - 1, bctx) * q_binomial(n - 2, k - 1, bctx) * beta
                    if ctx.q > 1:
                        expected *= ctx.q ** ((k - n) * m)
                rec.eq("moment_ratio_beta", f"{ps} k={k}", moment_ratio(n, k, m, ctx), expected)
        for s in range(grid.m_max + 1):
            b = bernstein_monomial(n, s, ctx)
            rec.eq("bernstein_endpoint", f"{qs} n={n} s={s}", b(one), one)
            if s <= 1:
                rec.eq("bernstein_closed_form", f"{qs} n={n} s={s}", b, ComplexPoly([one]) if s == 0 else zpoly)


def _lq_checks(rec: _Recorder, ctx: QContext, grid: IdentityGrid):
    qs = f"q={ctx.q}"
    if not ctx.q > 1:
        return
    c = LqCoefficients(ctx, grid.m_max).values
    rec.eq("lq_c2", qs, c[2], 1 + ctx.q)
    for m in range(2, grid.m_max + 1):
        rec.true("lq_positive", f"{qs} m={m}", c[m] > 0)
        rec.eq("lq_deviation", f"{qs} m={m}", lq_coefficient_deviation(m, ctx), c[m] - m * (m - 1))
    zs = [RationalComplex(Fraction(1, 3), Fraction(1, 4)), RationalComplex(Fraction(-1, 2)), RationalComplex(0, Fraction(2, 3))]
    for deg in range(grid.m_max + 1):
        coeffs = ",".join(str(Fraction(j + 1, deg + 2)) for j in range(deg + 1))
        f = builtin_series(f"poly:{coeffs}", deg, EXACT)
        poly = lq_polynomial(f, ctx)
        for z in zs:
            ps = f"{qs} deg={deg} z={z}"
            s = lq_series(f, ctx, z)
            rec.eq("lq_series_vs_direct", ps, s, lq_direct(f, ctx, z))
            rec.eq("lq_polynomial_eval", ps, poly(z), s)
        rec.true("lq_kernel_linear", f"{qs} deg={deg}", poly.is_zero() == (deg <= 1))


def identity_suite(grid: IdentityGrid = IdentityGrid(), stirling: Callable = q_stirling, jackson: bool = True) -> SuiteResult:
    """Run every exact identity over the grid in rational arithmetic.

    ``stirling`` replaces the q-Stirling table, which lets a corrupted table be
    injected to confirm that exactly the Stirling-dependent identities fail.
    """
    rec = _Recorder()
    for qtext in grid.qs:
        ctx = QContext(Fraction(qtext), EXACT)
        _qcore_checks(rec, ctx, grid, stirling)
        _operator_checks(rec, ctx, grid, stirling)
        _lq_checks(rec, ctx, grid)
    if jackson:
        _jackson_checks(rec, grid)
    return SuiteResult(rec.checks)


STIRLING_DEPENDENT = frozenset({"stirling_product", "stirling_vs_recurrence", "normalization"})
