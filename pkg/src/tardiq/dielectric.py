"""Transmon frequency model: charging energy from the shunt capacitance and
the downward frequency shift caused by a dielectric body raising the
effective permittivity across the capacitor.

The qubit frequency follows hbar*omega = sqrt(E_c*E_j) - E_c with
E_c = e^2/(2C). A dielectric only partially filling the field region is
modeled by a single participation ratio p in [0, 1]:

    C' = C * (1 + p*(eps_r - 1))

which reduces to the full-replacement C' = eps_r*C at p = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# exact SI (2019) values
ELEMENTARY_CHARGE = 1.602176634e-19  # C
HBAR = 1.054571817e-34  # J*s
TWO_PI = 2.0 * np.pi


class TransmonRegimeError(ValueError):
    """E_j must exceed E_c for the transmon frequency formula to apply."""


@dataclass(frozen=True)
class TransmonParams:
    """Charging energy, Josephson energy (J), anharmonicity (rad/s),
    shunt capacitance (F)."""

    E_c: float
    E_j: float
    delta_anharm: float
    C: float

    def __post_init__(self):
        if self.C <= 0:
            raise ValueError("capacitance must be positive")
        if self.E_c <= 0:
            raise ValueError("charging energy must be positive")
        if abs(self.E_c * 2.0 * self.C / ELEMENTARY_CHARGE**2 - 1.0) > 1e-12:
            raise ValueError(
                "E_c and C are inconsistent; expected E_c = e^2/(2C) "
                "(use from_capacitance or from_frequency)"
            )
        if self.E_j <= self.E_c:
            raise TransmonRegimeError(
                f"E_j ({self.E_j:g} J) must exceed E_c ({self.E_c:g} J)"
            )

    @classmethod
    def from_capacitance(cls, C: float, E_j: float, delta_anharm: float) -> "TransmonParams":
        """Build with E_c = e^2/(2C)."""
        return cls(E_c=charging_energy(C), E_j=E_j, delta_anharm=delta_anharm, C=C)

    @classmethod
    def from_frequency(cls, C: float, f_qubit_hz: float, delta_anharm: float) -> "TransmonParams":
        """Derive E_j from a target qubit frequency at the given capacitance."""
        e_c = charging_energy(C)
        hbar_omega = HBAR * TWO_PI * f_qubit_hz
        e_j = (hbar_omega + e_c) ** 2 / e_c
        return cls(E_c=e_c, E_j=e_j, delta_anharm=delta_anharm, C=C)


@dataclass(frozen=True)
class PermittivityScan:
    """Relative permittivities to sweep and the participation ratio."""

    eps_values: tuple[float, ...]
    participation: float

    def __post_init__(self):
        eps = tuple(float(e) for e in self.eps_values)
        if any(e < 1.0 for e in eps):
            raise ValueError("relative permittivities must be >= 1")
        if not 0.0 <= self.participation <= 1.0:
            raise ValueError("participation must lie in [0, 1]")
        object.__setattr__(self, "eps_values", eps)


def charging_energy(C: float) -> float:
    """E_c = e^2/(2C) in Joules."""
    if C <= 0:
        raise ValueError("capacitance must be positive")
    return ELEMENTARY_CHARGE**2 / (2.0 * C)


def qubit_frequency(p: TransmonParams) -> float:
    """Qubit transition frequency omega/2pi in Hz, hbar*omega = sqrt(E_c*E_j) - E_c."""
    if p.E_j <= p.E_c:
        raise TransmonRegimeError(
            f"E_j ({p.E_j:g} J) must exceed E_c ({p.E_c:g} J)"
        )
    return (np.sqrt(p.E_c * p.E_j) - p.E_c) / (HBAR * TWO_PI)


def transmon_levels(p: TransmonParams, j_max: int) -> list[float]:
    """Level frequencies omega_j/2pi for j = 0..j_max, in Hz.

    omega_j = (omega - delta/2)*j + (delta/2)*j^2, so level 0 sits at zero
    and level 1 at the qubit frequency regardless of anharmonicity.
    """
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    omega = TWO_PI * qubit_frequency(p)
    delta = p.delta_anharm
    return [
        ((omega - delta / 2.0) * j + (delta / 2.0) * j * j) / TWO_PI
        for j in range(j_max + 1)
    ]


def _scaled_params(p: TransmonParams, eps_r: float, participation: float) -> TransmonParams:
    c_eff = p.C * (1.0 + participation * (eps_r - 1.0))
    return TransmonParams.from_capacitance(c_eff, p.E_j, p.delta_anharm)


def shifted_frequency(p: TransmonParams, eps_r: float, participation: float) -> float:
    """Qubit frequency (Hz) after the dielectric scales the shunt capacitance.

    Strictly decreasing in eps_r whenever participation > 0, because a larger
    capacitance lowers E_c and the frequency grows with E_c throughout the
    transmon regime E_j > 4*E_c.
    """
    if eps_r < 1.0:
        raise ValueError("relative permittivity must be >= 1")
    if not 0.0 <= participation <= 1.0:
        raise ValueError("participation must lie in [0, 1]")
    return qubit_frequency(_scaled_params(p, eps_r, participation))


def fit_participation(
    f0_hz: float, observed_shift_hz: float, eps_r: float, p: TransmonParams
) -> float:
    """Participation ratio reproducing f0 + observed_shift at the given eps_r.

    Bisection on [0, 1] to 1e-12 relative tolerance; the shift is monotone in
    the participation, so a sign check on the bracket decides solvability.
    """
    if observed_shift_hz >= 0:
        if observed_shift_hz == 0:
            return 0.0
        raise ValueError("observed shift must be negative for eps_r > 1")
    if eps_r <= 1.0:
        raise ValueError("eps_r must exceed 1 to produce any shift")

    target = f0_hz + observed_shift_hz

    def freq_at(part: float) -> float:
        return shifted_frequency(p, eps_r, part)

    if freq_at(0.0) < target:
        raise ValueError(
            "target frequency exceeds the unshifted qubit frequency; "
            "f0 is inconsistent with the transmon parameters"
        )
    if freq_at(1.0) > target:
        raise ValueError(
            f"shift {observed_shift_hz:g} Hz is larger than full participation "
            f"allows ({freq_at(1.0) - f0_hz:g} Hz)"
        )

    lo, hi = 0.0, 1.0
    for _ in range(200):
        if hi - lo <= 1e-12 * hi:
            break
        mid = (lo + hi) / 2.0
        if freq_at(mid) > target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def permittivity_sweep(
    p: TransmonParams, scan: PermittivityScan
) -> list[tuple[float, float, float]]:
    """Rows of (eps_r, shifted frequency in Hz, shift in Hz)."""
    f0 = qubit_frequency(p)
    rows = []
    for eps in scan.eps_values:
        f = shifted_frequency(p, eps, scan.participation)
        rows.append((eps, f, f - f0))
    return rows
