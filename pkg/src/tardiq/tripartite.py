"""Expansion of the two-qubit state over {|0g>, |0e>, |1g>, |1e>} into an
explicit three-qubit state for qubit A, qubit B, and the tardigrade treated
as an effective qubit.

The dressed states map as

    |g> -> |0>_B |0>_T
    |e> -> cos(theta/2) |1>_B |0>_T + sin(theta/2) |0>_B |1>_T

so the joint excitation |1>_B |1>_T never appears: the system is not
energetic enough to excite qubit B and the tardigrade simultaneously, which
is why 28 entries of the 8x8 matrix vanish structurally.

Canonical basis order here is {|000>, |010>, |001>, |011>, |100>, |110>,
|101>, |111>} with labels read A,B,T left to right. That order makes the
matrix entry-by-entry checkable against its closed form but is NOT
lexicographic in (A,B,T); it is lexicographic in (A,T,B). CANONICAL_TO_LEX
maps between the two (it is its own inverse).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import DensityMatrix, tensor

ZERO_PATTERN_ATOL = 1e-12
ROUTE_AGREEMENT_ATOL = 1e-12

# canonical position i holds lexicographic (A,B,T) index CANONICAL_TO_LEX[i]
CANONICAL_TO_LEX = (0, 2, 1, 3, 4, 6, 5, 7)
BASIS_LABELS = ("000", "010", "001", "011", "100", "110", "101", "111")

# rows/columns of |011> and |111>, identically zero for any expansion
ZERO_SLOTS = (3, 7)


class ExpansionMismatchError(RuntimeError):
    """The closed-form entries and the isometry conjugation disagree."""


@dataclass(frozen=True)
class TripartiteState:
    """Three-qubit state in the canonical (A,B,T) basis order above."""

    theta: float
    rho_abt: DensityMatrix

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"theta {self.theta} outside [0, pi]")
        if self.rho_abt.dims != (2, 2, 2):
            raise ValueError("rho_abt must have dims (2,2,2)")
        m = self.rho_abt.matrix
        for slot in ZERO_SLOTS:
            if np.max(np.abs(m[slot, :])) > ZERO_PATTERN_ATOL or np.max(
                np.abs(m[:, slot])
            ) > ZERO_PATTERN_ATOL:
                raise ValueError(
                    "rows/columns for simultaneous B and T excitation must vanish"
                )

    def to_lexicographic(self) -> DensityMatrix:
        """Same state reordered to lexicographic (A,B,T) for subsystem ops."""
        perm = np.asarray(CANONICAL_TO_LEX)
        m = self.rho_abt.matrix[np.ix_(perm, perm)]
        return DensityMatrix((2, 2, 2), m)


def _entry_formula(rho: np.ndarray, theta: float) -> np.ndarray:
    """Literal closed form of the expanded matrix in the canonical order."""
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0)
    r = rho  # 0-indexed; the closed form below is the full 8x8, row by row
    cs = c * s
    out = np.array(
        [
            [r[0, 0], r[0, 1] * c, r[0, 1] * s, 0, r[0, 2], r[0, 3] * c, r[0, 3] * s, 0],
            [r[1, 0] * c, r[1, 1] * c * c, r[1, 1] * cs, 0, r[1, 2] * c, r[1, 3] * c * c, r[1, 3] * cs, 0],
            [r[1, 0] * s, r[1, 1] * cs, r[1, 1] * s * s, 0, r[1, 2] * s, r[1, 3] * cs, r[1, 3] * s * s, 0],
            [0, 0, 0, 0, 0, 0, 0, 0],
            [r[2, 0], r[2, 1] * c, r[2, 1] * s, 0, r[2, 2], r[2, 3] * c, r[2, 3] * s, 0],
            [r[3, 0] * c, r[3, 1] * c * c, r[3, 1] * cs, 0, r[3, 2] * c, r[3, 3] * c * c, r[3, 3] * cs, 0],
            [r[3, 0] * s, r[3, 1] * cs, r[3, 1] * s * s, 0, r[3, 2] * s, r[3, 3] * cs, r[3, 3] * s * s, 0],
            [0, 0, 0, 0, 0, 0, 0, 0],
        ],
        dtype=complex,
    )
    return out


def expansion_isometry(theta: float) -> np.ndarray:
    """8x4 isometry in lexicographic (A,B,T) order applying the dressed-state
    expansion to the B-T factor while leaving qubit A untouched."""
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0)
    v_bt = np.zeros((4, 2), dtype=complex)
    v_bt[0, 0] = 1.0  # |g> -> |00>
    v_bt[2, 1] = c  # |e> -> c|10> + s|01>
    v_bt[1, 1] = s
    return tensor(np.eye(2, dtype=complex), v_bt)


def _isometry_route(rho: np.ndarray, theta: float) -> np.ndarray:
    v = expansion_isometry(theta)
    lex = v @ rho @ v.conj().T
    perm = np.asarray(CANONICAL_TO_LEX)
    return lex[np.ix_(perm, perm)]


def expand(rho: DensityMatrix, theta: float) -> TripartiteState:
    """Expand a 4x4 dressed-basis state into the 8x8 three-qubit state.

    Computed twice, by the entry-by-entry closed form and by conjugation
    with the expansion isometry; the two must agree entrywise within 1e-12
    or the call aborts (transcription errors in the closed form are the
    dominant risk, so neither route is silently trusted).
    """
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta {theta} outside [0, pi]")
    if rho.dims != (2, 2):
        raise ValueError("expand expects a two-qubit state (dims (2,2))")

    direct = _entry_formula(rho.matrix, theta)
    conjugated = _isometry_route(rho.matrix, theta)
    gap = float(np.max(np.abs(direct - conjugated)))
    if gap > ROUTE_AGREEMENT_ATOL:
        raise ExpansionMismatchError(
            f"entry formula and isometry route disagree by {gap:.3e}"
        )

    matrix = (direct + direct.conj().T) / 2
    return TripartiteState(theta=float(theta), rho_abt=DensityMatrix((2, 2, 2), matrix))


def verify_zero_pattern(state: TripartiteState | DensityMatrix | np.ndarray) -> bool:
    """True iff all 28 entries in the |011> and |111> rows/columns vanish.

    Accepts a raw 8x8 matrix too, so hand-built candidates that could never
    pass TripartiteState validation can still be screened.
    """
    if isinstance(state, TripartiteState):
        m = state.rho_abt.matrix
    elif isinstance(state, DensityMatrix):
        m = state.matrix
    else:
        m = np.asarray(state, dtype=complex)
    if m.shape != (8, 8):
        raise ValueError(f"expected an 8x8 matrix, got shape {m.shape}")
    for slot in ZERO_SLOTS:
        if np.max(np.abs(m[slot, :])) > ZERO_PATTERN_ATOL:
            return False
        if np.max(np.abs(m[:, slot])) > ZERO_PATTERN_ATOL:
            return False
    return True
