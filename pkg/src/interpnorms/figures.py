"""Matplotlib rendering for the CLI report paths (optional, Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_figure1(rows: list[dict], jmax: int, out_dir: Path) -> list[Path]:
    """Norm comparison and ratio plots over the theta grid."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    thetas = [r["theta"] for r in rows]
    paths = []

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for j in range(1, jmax + 1):
        ax.plot(thetas, [r[f"star_norm_phi{j}"] for r in rows],
                label=f"coefficient norm, mode {j}")
        ax.plot(thetas, [r[f"sobolev_norm_phi{j}"] for r in rows],
                linestyle="--", label=f"Fourier norm, mode {j}")
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel("norm")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = out_dir / "figure1_norms.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for j in range(1, jmax + 1):
        ax.plot(thetas, [r[f"ratio_phi{j}"] for r in rows],
                label=f"ratio, mode {j}")
    ax.axhline(1.0, color="gray", linewidth=0.6)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel("interpolation / Fourier norm")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = out_dir / "figure1_ratios.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    paths.append(path)
    return paths


def render_cusp(rows: list[dict], out_dir: Path) -> list[Path]:
    """Log-log scaling plot of the cusp norm table."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    h = [r["h"] for r in rows]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for key, label in (("l2_norm", "L2 norm"),
                       ("h2_plus_norm", "H2 extension norm"),
                       ("interp_bound", "interpolation bound")):
        ax.loglog(h, [r[key] for r in rows], marker="o", label=label)
    ax.set_xlabel("h")
    ax.set_ylabel("norm")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = out_dir / "cusp_scalings.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return [path]
