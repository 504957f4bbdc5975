"""Negativity-based entanglement quantifiers for the tripartite state.

The doubled negativity across a cut X:Y is the trace norm of the partial
transpose over X minus one; it is 1 for a two-qubit maximally entangled
state. Residual tangles subtract squared pairwise negativities from the
squared one-vs-rest negativity, and their average over the three parties is
the pi-tangle, a measure of genuine tripartite entanglement.

Residuals can come out slightly negative for mixed states; they are reported
as computed, and only the displayed pi-tangle is floored at zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .hilbert import (
    DensityMatrix,
    _partial_transpose_matrix,
    partial_trace,
    trace_norm,
)
from .tripartite import TripartiteState


@dataclass(frozen=True)
class EntanglementReport:
    """All six doubled negativities and the residual tangles for one state.

    Subsystems are labeled a, b, c in lexicographic order; for an expanded
    tripartite state c is the tardigrade qubit.
    """

    n_a_bc: float
    n_b_ac: float
    n_c_ab: float
    n_ab: float
    n_ac: float
    n_bc: float
    pi_a: float
    pi_b: float
    pi_c: float
    pi_tangle: float

    @property
    def pi_tangle_floored(self) -> float:
        return max(0.0, self.pi_tangle)


def negativity(rho: DensityMatrix, cut: int | Iterable[int]) -> float:
    """Doubled negativity across the given cut: ||rho^(T_cut)||_1 - 1, >= 0."""
    cut_set = {int(cut)} if isinstance(cut, (int, np.integer)) else {int(s) for s in cut}
    n = len(rho.dims)
    if not cut_set:
        raise ValueError("cut must be nonempty")
    if any(s < 0 or s >= n for s in cut_set):
        raise IndexError(f"cut {sorted(cut_set)} out of range for dims {rho.dims}")
    if len(cut_set) == n:
        raise ValueError("cut must be a proper subset of the subsystems")
    m = rho.matrix
    for s in sorted(cut_set):
        m = _partial_transpose_matrix(m, rho.dims, s)
    return max(0.0, trace_norm(m) - 1.0)


def entanglement_report(rho: DensityMatrix) -> EntanglementReport:
    """Negativities and pi-tangle of any three-qubit state (lex order a,b,c).

    One-vs-rest negativities are computed on the full 8-dim state; pairwise
    ones on the 4-dim reduced states after tracing out the third party.
    """
    if rho.dims != (2, 2, 2):
        raise ValueError("entanglement_report expects dims (2,2,2)")

    n_a_bc = negativity(rho, 0)
    n_b_ac = negativity(rho, 1)
    n_c_ab = negativity(rho, 2)

    def pair(i: int, j: int) -> float:
        reduced = partial_trace(rho, {i, j})
        return negativity(reduced, 0)

    n_ab = pair(0, 1)
    n_ac = pair(0, 2)
    n_bc = pair(1, 2)

    pi_a = n_a_bc**2 - n_ab**2 - n_ac**2
    pi_b = n_b_ac**2 - n_ab**2 - n_bc**2
    pi_c = n_c_ab**2 - n_ac**2 - n_bc**2

    return EntanglementReport(
        n_a_bc=n_a_bc,
        n_b_ac=n_b_ac,
        n_c_ab=n_c_ab,
        n_ab=n_ab,
        n_ac=n_ac,
        n_bc=n_bc,
        pi_a=pi_a,
        pi_b=pi_b,
        pi_c=pi_c,
        pi_tangle=(pi_a + pi_b + pi_c) / 3.0,
    )


def pi_tangle(state: TripartiteState) -> EntanglementReport:
    """Entanglement report for an expanded qubit-qubit-tardigrade state."""
    return entanglement_report(state.to_lexicographic())


def theta_sweep(
    rho4: DensityMatrix, thetas: Sequence[float]
) -> list[tuple[float, EntanglementReport]]:
    """Expand rho4 at each theta and quantify all entanglement measures.

    Rows are ordered by theta. Each point is independent of the others, so
    the result does not depend on evaluation order.
    """
    from .tripartite import expand

    rows = []
    for theta in sorted(float(t) for t in thetas):
        rows.append((theta, pi_tangle(expand(rho4, theta))))
    return rows


def default_theta_grid(points: int = 101) -> np.ndarray:
    """Uniform grid on [0, pi]; an odd count hits pi/2 exactly (bitwise)."""
    if points < 2:
        raise ValueError("need at least 2 grid points")
    return (np.arange(points) / (points - 1)) * np.pi
