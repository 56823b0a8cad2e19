"""CSV rows and plain-text summaries for a CountReport.

Every value is formatted deterministically (ints as ints, floats by
repr, fractions as a/b) so identical scans give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import math
from fractions import Fraction

from .analytic import iterated_log, lemma4_bound_shape, li, mertens_product, prime_count_ap
from .counting import CountReport
from .errors import DomainError, InvariantViolation

CSV_VERSION_LINE = "# sigma-phi-lab csv v1"
COLUMNS = ("kind", "x", "y", "c", "delta", "p", "count", "bound_shape", "ratio", "violations")
#: pi(x; p, -1) needs a full prime sieve to x; skipped above this.
AP_ROWS_MAX_X = 10**8


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _ratio(a, b):
    return None if b in (None, 0) else float(a) / float(b)


def headline_main_term(report: CountReport) -> float | None:
    """pi^2 x / (6 c log_4 x) when log_4 x > 0 and the threshold is c n, else None."""
    if report.config.f_choice != "const":
        return None
    try:
        l4 = iterated_log(4, report.x)
    except DomainError:
        return None
    if l4 <= 0:
        return None
    return math.pi**2 * report.x / (6 * float(report.config.c_fraction) * l4)


def build_rows(report: CountReport) -> list[dict]:
    cfg = report.config
    base = {"x": report.x, "y": cfg.y, "c": cfg.c_fraction, "delta": cfg.delta_fraction}

    def row(kind, p=None, count=None, shape=None, ratio=None, violations=None):
        return {**base, "kind": kind, "p": p, "count": count, "bound_shape": shape,
                "ratio": ratio, "violations": violations}

    rows = []
    for p, s in report.sp_counts.items():
        try:
            shape = lemma4_bound_shape(p, report.x)
        except DomainError:
            shape = None
        rows.append(row("sp", p, s, shape, _ratio(s, shape)))
    rows.append(row("primorial", count=report.primorial_count))
    rows.append(row(f"threshold_{cfg.f_choice}", count=report.threshold_count))
    rows.append(row("sigma_ratio", count=report.sigma_ratio_count))
    mk = report.markov
    rows.append(row("markov", count=report.sigma_ratio_count, shape=mk.theoretical, ratio=mk.ratio))
    mv = report.mean_value
    rows.append(row("mean_value", count=mv.empirical, shape=mv.theoretical, ratio=mv.ratio))
    ss = report.sigma_sum_check
    rows.append(row("sigma_sum", count=report.sigma_sum, shape=ss.theoretical, ratio=ss.ratio))
    main = headline_main_term(report)
    if main is not None:
        rows.append(row("headline_main_term", count=report.threshold_count, shape=main,
                        ratio=report.threshold_count / main))
    viol = report.inclusion_violations
    rows.append(row("inclusion", violations=None if viol is None else len(viol)))
    try:
        mp = mertens_product(cfg.y)
        rows.append(row("mertens", count=mp, shape=1 / math.log(cfg.y), ratio=mp * math.log(cfg.y)))
    except InvariantViolation:
        rows.append(row("mertens", violations=1))
    if 2 <= report.x <= AP_ROWS_MAX_X:
        lix = li(report.x)
        for p in report.sp_counts:
            cnt = prime_count_ap(report.x, p, p - 1)
            rows.append(row("siegel_walfisz", p, cnt, lix / (p - 1), _ratio(cnt, lix / (p - 1))))
    return rows


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write(CSV_VERSION_LINE + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_fmt(r[k]) for k in COLUMNS])
    return buf.getvalue()


def to_text(report: CountReport) -> str:
    cfg = report.config
    lines = [
        f"sigma-phi-lab scan, n <= {report.x}",
        f"  y = {cfg.y}   c = {cfg.c_fraction} (~{float(cfg.c_fraction):.6g})"
        f"   delta = {cfg.delta_fraction} (~{float(cfg.delta_fraction):.6g})   f = {cfg.f_choice}",
        "  (real c and delta are compared as the fractions shown)",
    ]
    for p, s in report.sp_counts.items():
        lines.append(f"  S_{p}(x) = {s}   ({s / report.x:.6f} of x)")
    lines += [
        f"  #{{P(y) | sigma(n)}}          = {report.primorial_count}",
        f"  #{{phi(sigma(n)) >= threshold}} = {report.threshold_count}",
        f"  #{{sigma(n) >= delta n}}       = {report.sigma_ratio_count}"
        f"   Markov bound {report.markov.theoretical:.6f}",
        f"  sum sigma(n)/n = {report.sigma_over_n_sum!r}   / x = {report.sigma_over_n_sum / report.x:.8f}"
        f"   pi^2/6 = {math.pi ** 2 / 6:.8f}",
    ]
    if report.inclusion_violations is None:
        lines.append("  inclusion check: skipped (delta > c ln y)")
    else:
        lines.append(f"  inclusion violations: {len(report.inclusion_violations)}")
    try:
        l4 = iterated_log(4, report.x)
        if l4 <= 0:
            note = f"log_4 x = {l4:.4f} <= 0, headline main term undefined"
        else:
            main = headline_main_term(report)
            note = f"log_4 x = {l4:.4f}"
            if main is not None:
                note += f"; pi^2 x / (6 c log_4 x) = {main:.4g} ({main / report.x:.3g} x)"
    except DomainError as exc:
        note = str(exc)
    lines.append(f"  {note}")
    failures = report.invariant_failures()
    lines.append("  invariants: " + ("all hold" if not failures else "; ".join(failures)))
    return "\n".join(lines) + "\n"
