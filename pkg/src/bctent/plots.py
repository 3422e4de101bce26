"""Matplotlib rendering for the CLI report path.

CSV/JSON remain the machine contract; these figures are written alongside
when --plot is given.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .convexity import CERTIFIED, REFUTED, ConvexityCertificate  # noqa: E402
from .envelope import TentEnvelope  # noqa: E402

_STATUS_COLOR = {CERTIFIED: "tab:green", REFUTED: "tab:red"}


def plot_envelope(env: TentEnvelope, path: Path) -> Path:
    xs, lo, hi = env.full_grid()
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.fill_between(xs, lo, hi, alpha=0.3, color="tab:blue", label="bracket")
    ax.plot(xs, lo, color="tab:blue", lw=0.8)
    ax.plot(xs, hi, color="tab:orange", lw=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel(r"$\varphi(x)$")
    title = f"lambda={env.lam0:.9g}, L={env.depth}, M={env.grid}"
    if env.eps:
        title += f", eps={env.eps:g}"
    ax.set_title(title)
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1.02)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def plot_cdf(xs, lo_vals, hi_vals, lam: float, depth: int, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(xs, lo_vals, label="lower", color="tab:blue", lw=0.9)
    ax.plot(xs, hi_vals, label="upper", color="tab:orange", lw=0.9)
    ax.set_xlabel("x")
    ax.set_ylabel("F(x)")
    ax.set_title(f"lambda={lam:.9g}, L={depth}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def plot_scan(certs: list[ConvexityCertificate], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    for cert in certs:
        color = _STATUS_COLOR.get(cert.status, "tab:gray")
        ax.scatter(cert.lam0, cert.min_margin, color=color, s=12)
    ax.axhline(0.0, color="black", lw=0.6)
    ax.set_xlabel("lambda")
    ax.set_ylabel("min margin")
    ax.set_title(f"scale 1/{certs[0].grid}" if certs else "scan")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)
