"""Figure rendering for scans and duality reports (headless, file output)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .duality import DualityReport, ScanResult


def plot_scan(result: ScanResult, path) -> None:
    """Render ground energy, gap, and susceptibility panels to ``path``."""
    x = result.ratios()
    e0 = np.array([s.ground_energy for s in result.samples])
    gap = np.array([s.gap for s in result.samples])
    chi = np.array([s.chi_f for s in result.samples])
    fig, axes = plt.subplots(3, 1, sharex=True, figsize=(6.0, 7.5))
    axes[0].plot(x, e0, "o-", ms=3)
    axes[0].set_ylabel("ground energy")
    axes[1].plot(x, gap, "o-", ms=3)
    axes[1].set_ylabel("gap")
    axes[2].plot(x, chi, "o-", ms=3)
    axes[2].set_ylabel("fidelity susceptibility")
    axes[2].set_xlabel("coupling ratio")
    if result.critical_estimate is not None:
        for ax in axes:
            ax.axvline(result.critical_estimate, color="tab:red", lw=0.8,
                       ls="--")
    axes[0].set_title(result.model_id)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_duality(report: DualityReport, path) -> None:
    """Render both sorted spectra and their pointwise deviation."""
    a = report.original_sector_spectrum
    b = report.dual_spectrum
    idx = np.arange(len(a))
    fig, axes = plt.subplots(2, 1, sharex=True, figsize=(6.0, 5.5))
    axes[0].plot(idx, a, "o", ms=4, label="sector spectrum", mfc="none")
    axes[0].plot(idx, b, "x", ms=4, label="dual model spectrum")
    axes[0].set_ylabel("energy")
    axes[0].legend(loc="best", fontsize=8)
    axes[1].semilogy(idx, np.abs(a - b) + 1e-300, "o-", ms=3)
    axes[1].axhline(report.tolerance, color="tab:red", lw=0.8, ls="--")
    axes[1].set_ylabel("|deviation|")
    axes[1].set_xlabel("level index")
    title = "PASS" if report.passed else "FAIL"
    axes[0].set_title(f"duality check: {title} "
                      f"(max dev {report.max_abs_deviation:.3g})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
