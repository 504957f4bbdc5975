"""Figure rendering for the CLI report paths.

Every sweep/report command drops a PNG next to its delimited output so the
result can be eyeballed without an external plotter. Rendering is headless
(Agg) and deterministic: the PNG metadata that normally embeds the
matplotlib version is stripped so identical runs produce identical bytes.
"""

from __future__ import annotations

import math
import os
import tempfile

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .hilbert import DensityMatrix

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_PNG_METADATA = {"Software": None}


def _new_axes(width: float = 6.0):
    fig, ax = plt.subplots(figsize=(width, width * GOLDEN))
    return fig, ax


def _save(fig, path: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".png")
    os.close(fd)
    try:
        fig.savefig(tmp, dpi=150, bbox_inches="tight", metadata=_PNG_METADATA)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    finally:
        plt.close(fig)


def plot_entanglement_sweep(thetas, curves: dict[str, list[float]], path: str) -> None:
    """Negativities and pi-tangle against the coupling angle theta."""
    fig, ax = _new_axes()
    for label, values in curves.items():
        ax.plot(thetas, values, lw=1.5, label=label)
    ax.set_xlabel(r"coupling angle $\theta$ (rad)")
    ax.set_ylabel("doubled negativity / $\\pi$-tangle")
    ax.set_xlim(min(thetas), max(thetas))
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8, ncol=2)
    _save(fig, path)


def plot_dielectric_sweep(eps_values, shifts_hz, path: str) -> None:
    """Qubit frequency shift against relative permittivity."""
    fig, ax = _new_axes()
    ax.plot(eps_values, np.asarray(shifts_hz) / 1e6, "o-", ms=3, lw=1.2)
    ax.set_xlabel(r"relative permittivity $\epsilon_r$")
    ax.set_ylabel("frequency shift (MHz)")
    ax.grid(alpha=0.3)
    _save(fig, path)


def plot_density_matrix(dm: DensityMatrix, path: str, title: str = "") -> None:
    """Real and imaginary parts side by side on a common color scale."""
    m = dm.matrix
    scale = max(np.max(np.abs(m.real)), np.max(np.abs(m.imag)), 1e-12)
    fig, axes = plt.subplots(1, 2, figsize=(8, 3.6))
    for ax, part, label in ((axes[0], m.real, "Re"), (axes[1], m.imag, "Im")):
        im = ax.imshow(part, vmin=-scale, vmax=scale, cmap="RdBu_r")
        ax.set_title(f"{label} {title}".strip())
        ax.set_xticks(range(dm.dim))
        ax.set_yticks(range(dm.dim))
    fig.colorbar(im, ax=axes, shrink=0.85)
    _save(fig, path)
