"""Render verification reports and splitting statistics as figure files.

matplotlib is imported lazily with the Agg backend so that report runs
without --figures never touch it.
"""

from __future__ import annotations

import os
from typing import Iterable

from .oracle import PATTERN_INERT, PATTERN_PARTIAL, PATTERN_SPLIT, splitting_statistics
from .verifier import VerificationReport

_SPLITTING_COEFFS = (1, 2, 16, -4)
_SPLITTING_P_MAX = 2000


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_check_figure(report: VerificationReport, path: str) -> None:
    """Horizontal bar chart of cases swept per check, colored by outcome."""
    plt = _pyplot()
    ids = [r.check_id for r in report.results]
    cases = [max(r.cases_run, 1) for r in report.results]
    colors = ["#2a9d4e" if r.passed else "#c0392b" for r in report.results]
    fig, ax = plt.subplots(figsize=(8, 0.5 * len(ids) + 1.5))
    ax.barh(ids, cases, color=colors)
    ax.set_xscale("log")
    ax.set_xlabel("cases swept (log scale)")
    ax.set_title(f"verification checks: {report.n_passed}/{len(report.results)} passed")
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_splitting_figure(path: str, coeffs: Iterable[int] = _SPLITTING_COEFFS) -> None:
    """Grouped bars of cubic factorization pattern frequencies for y^2 = x^3 + d."""
    plt = _pyplot()
    patterns = (PATTERN_SPLIT, PATTERN_PARTIAL, PATTERN_INERT)
    coeffs = list(coeffs)
    stats = [splitting_statistics(d, _SPLITTING_P_MAX) for d in coeffs]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    width = 0.8 / len(patterns)
    for k, pattern in enumerate(patterns):
        xs = [i + (k - 1) * width for i in range(len(coeffs))]
        ys = [s.frequency(pattern) for s in stats]
        ax.bar(xs, ys, width=width, label=f"pattern {pattern}")
    ax.set_xticks(range(len(coeffs)))
    ax.set_xticklabels([f"d = {d}" for d in coeffs])
    ax.set_ylabel(f"frequency over primes p <= {_SPLITTING_P_MAX}")
    ax.set_title("cubic factorization patterns of x^3 + d mod p")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_report_figures(report: VerificationReport, outdir: str) -> list[str]:
    """Write both report figures into outdir and return their paths."""
    os.makedirs(outdir, exist_ok=True)
    check_path = os.path.join(outdir, "verification_checks.png")
    split_path = os.path.join(outdir, "splitting_frequencies.png")
    render_check_figure(report, check_path)
    render_splitting_figure(split_path)
    return [check_path, split_path]
