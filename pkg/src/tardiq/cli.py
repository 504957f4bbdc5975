"""Command-line front end.

Subcommands: dressed, dielectric-sweep, tomo-sim, reconstruct, expand,
entangle-sweep, reproduce.

Units at this boundary are ordinary frequencies in Hz for every flag; the
angular-frequency convention (rad/s) is internal only. Exit codes: 0 on
success, 1 on runtime/numerical failure, 2 on usage or validation errors.
The default RNG seed comes from the TARDIQ_SEED environment variable when
set (flags always override). Sweep and report commands render a PNG next to
each delimited output unless --no-figures is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import dielectric, dressed, entanglement, serialize, tomography, tripartite
from .hilbert import DensityMatrix

TWO_PI = 2.0 * np.pi
SEED_ENV_VAR = "TARDIQ_SEED"

# all defaults below are illustrative stand-ins for hardware values the
# model does not pin down (oscillator count/frequencies, capacitance, E_j)
DEFAULT_SEED = 1234
DEFAULT_SHOTS = 100_000
DEFAULT_QUBIT_FREQ_HZ = 3.271e9
DEFAULT_OSC_FREQ_HZ = 5.0e9
DEFAULT_CAPACITANCE_F = 70e-15
DEFAULT_ANHARM_HZ = -300e6
REFERENCE_SHIFT_HZ = -8e6
REFERENCE_EPS_R = 4.0
REFERENCE_HARDWARE_FIDELITY = 0.82


class UsageError(Exception):
    """Flag-level validation failure; maps to exit code 2."""


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV_VAR)
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from exc


def _print_json(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        serialize.atomic_write_text(out, text)
    else:
        sys.stdout.write(text)


def _complex_pairs(values: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex)]


# ---------------------------------------------------------------------------
# dressed


def _build_dressed_model(args) -> dressed.DressedModel:
    if args.wq <= 0:
        raise UsageError("--wq must be a positive frequency in Hz")
    if any(f <= 0 for f in args.osc):
        raise UsageError("--osc frequencies must be positive, in Hz")
    if args.g < 0:
        raise UsageError("--g must be nonnegative, in Hz")
    if any(f == args.wq for f in args.osc):
        raise UsageError(
            "--osc contains a frequency resonant with --wq; "
            "the perturbative gap has a pole at zero detuning"
        )
    return dressed.DressedModel(
        omega_q=TWO_PI * args.wq,
        omegas=tuple(TWO_PI * f for f in args.osc),
        g=TWO_PI * args.g,
    )


def cmd_dressed(args) -> int:
    model = _build_dressed_model(args)
    pert = dressed.perturbative_gap(model)
    exact = dressed.exact_gap(model)
    state = dressed.dressed_excited_state(model)
    doc = {
        "perturbative_gap_hz": pert,
        "exact_gap_hz": exact,
        "relative_gap_difference": abs(pert - exact) / exact,
        "theta_rad": state.theta,
        "psi1_coefficients": _complex_pairs(state.psi1_coeffs),
        "gap_shift_hz": pert - args.wq,
    }
    if args.shift is not None:
        g_fit = dressed.coupling_from_shift(args.shift, model)
        doc["shift_fit"] = {
            "observed_shift_hz": args.shift,
            "fitted_coupling_hz": g_fit / TWO_PI,
            "theta_rad": dressed.theta_from_shift(args.shift, model),
        }
    _print_json(doc, args.out)
    return 0


# ---------------------------------------------------------------------------
# dielectric-sweep


def _build_transmon(args) -> dielectric.TransmonParams:
    if args.capacitance <= 0:
        raise UsageError("--capacitance must be positive, in Farads")
    if args.f0 <= 0:
        raise UsageError("--f0 must be positive, in Hz")
    return dielectric.TransmonParams.from_frequency(
        C=args.capacitance, f_qubit_hz=args.f0, delta_anharm=TWO_PI * args.anharm
    )


def cmd_dielectric_sweep(args) -> int:
    if args.eps_min < 1 or args.eps_max < args.eps_min:
        raise UsageError("--eps-min must be >= 1 and --eps-max >= --eps-min")
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    if args.participation is not None and not 0 <= args.participation <= 1:
        raise UsageError("--participation must lie in [0, 1]")

    params = _build_transmon(args)
    f0 = dielectric.qubit_frequency(params)

    if args.participation is not None:
        participation = args.participation
    else:
        if args.calibrate_shift >= 0:
            raise UsageError("--calibrate-shift must be negative, in Hz")
        if args.calibrate_eps <= 1:
            raise UsageError("--calibrate-eps must exceed 1")
        participation = dielectric.fit_participation(
            f0, args.calibrate_shift, args.calibrate_eps, params
        )

    scan = dielectric.PermittivityScan(
        eps_values=tuple(np.linspace(args.eps_min, args.eps_max, args.points)),
        participation=participation,
    )
    rows = dielectric.permittivity_sweep(params, scan)
    serialize.write_csv(args.out, ["eps_r", "frequency_hz", "shift_hz"], rows)
    sys.stderr.write(
        f"wrote {args.out} (participation {participation:.6g}, f0 {f0:.6g} Hz)\n"
    )
    if not args.no_figures:
        from . import figures  # deferred: pulls in matplotlib

        png = os.path.splitext(args.out)[0] + ".png"
        figures.plot_dielectric_sweep(
            [r[0] for r in rows], [r[2] for r in rows], png
        )
    return 0


# ---------------------------------------------------------------------------
# tomo-sim / reconstruct


def _load_two_qubit_state(path: str | None) -> DensityMatrix:
    if path is None:
        return tomography.ideal_density_matrix()
    dm = serialize.read_density_matrix(path)
    if dm.dims != (2, 2):
        raise UsageError(f"--input state must have dims [2, 2], got {list(dm.dims)}")
    return dm


def cmd_tomo_sim(args) -> int:
    if args.shots < 1:
        raise UsageError("--shots must be >= 1")
    if not 0 <= args.noise <= 1:
        raise UsageError("--noise must lie in [0, 1]")
    rho = _load_two_qubit_state(args.input)
    record = tomography.simulate_counts(rho, args.shots, seed=args.seed, noise=args.noise)
    serialize.write_record(args.out, record)
    sys.stderr.write(f"wrote {args.out} ({args.shots} shots per setting)\n")
    return 0


def cmd_reconstruct(args) -> int:
    if args.restarts < 0:
        raise UsageError("--restarts must be >= 0")
    if args.max_iterations < 1:
        raise UsageError("--max-iterations must be >= 1")
    record = serialize.read_record(args.counts)
    result = tomography.mle_reconstruct(
        record, restarts=args.restarts, max_iterations=args.max_iterations
    )
    serialize.write_density_matrix(args.out, result.rho)
    doc = {
        "out": args.out,
        "log_likelihood": result.log_likelihood,
        "iterations": result.iterations,
        "converged": result.converged,
        "fidelity_vs_ideal": tomography.fidelity(
            result.rho, tomography.ideal_density_matrix()
        ),
    }
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return 0


# ---------------------------------------------------------------------------
# expand / entangle-sweep


def cmd_expand(args) -> int:
    if not 0 <= args.theta <= np.pi:
        raise UsageError("--theta must lie in [0, pi] (radians)")
    rho = _load_two_qubit_state(args.input)
    state = tripartite.expand(rho, args.theta)
    serialize.write_density_matrix(
        args.out,
        state.rho_abt,
        extra={"theta": args.theta, "basis": list(tripartite.BASIS_LABELS)},
    )
    sys.stderr.write(f"wrote {args.out}\n")
    return 0


SWEEP_HEADER = [
    "theta",
    "n_a_bc",
    "n_b_ac",
    "n_t_ab",
    "n_ab",
    "n_at",
    "n_bt",
    "pi_tangle_raw",
    "pi_tangle",
]


def _sweep_rows(rho: DensityMatrix, thetas) -> list[list[float]]:
    rows = []
    for theta, rep in entanglement.theta_sweep(rho, thetas):
        rows.append(
            [
                theta,
                rep.n_a_bc,
                rep.n_b_ac,
                rep.n_c_ab,
                rep.n_ab,
                rep.n_ac,
                rep.n_bc,
                rep.pi_tangle,
                rep.pi_tangle_floored,
            ]
        )
    return rows


def _write_sweep(rho: DensityMatrix, points: int, out: str, with_figure: bool) -> list[list[float]]:
    thetas = entanglement.default_theta_grid(points)
    rows = _sweep_rows(rho, thetas)
    serialize.write_csv(out, SWEEP_HEADER, rows)
    if with_figure:
        from . import figures

        png = os.path.splitext(out)[0] + ".png"
        cols = list(zip(*rows))
        curves = {
            name: list(cols[i + 1])
            for i, name in enumerate(["n_a_bc", "n_b_ac", "n_t_ab", "n_ab", "n_at", "n_bt"])
        }
        curves["pi_tangle"] = list(cols[8])
        figures.plot_entanglement_sweep(list(cols[0]), curves, png)
    return rows


def cmd_entangle_sweep(args) -> int:
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    rho = _load_two_qubit_state(args.input)
    _write_sweep(rho, args.points, args.out, not args.no_figures)
    sys.stderr.write(f"wrote {args.out}\n")
    return 0


# ---------------------------------------------------------------------------
# reproduce


def cmd_reproduce(args) -> int:
    if args.shots < 1:
        raise UsageError("--shots must be >= 1")
    if not 0 <= args.noise <= 1:
        raise UsageError("--noise must lie in [0, 1]")
    if args.points < 2:
        raise UsageError("--points must be >= 2")

    outdir = args.outdir
    os.makedirs(outdir, exist_ok=True)

    ideal = tomography.ideal_density_matrix()
    record = tomography.simulate_counts(ideal, args.shots, seed=args.seed, noise=args.noise)
    serialize.write_record(os.path.join(outdir, "counts.json"), record)

    result = tomography.mle_reconstruct(record)
    serialize.write_density_matrix(os.path.join(outdir, "rho_mle.json"), result.rho)
    serialize.write_density_matrix(os.path.join(outdir, "rho_ideal.json"), ideal)
    fid = tomography.fidelity(result.rho, ideal)

    rows = _write_sweep(
        result.rho,
        args.points,
        os.path.join(outdir, "entanglement_sweep.csv"),
        not args.no_figures,
    )
    if not args.no_figures:
        from . import figures

        figures.plot_density_matrix(
            result.rho, os.path.join(outdir, "rho_mle.png"), title="reconstructed"
        )

    peak = max(rows, key=lambda r: r[-1])
    summary = [
        "tardiq reproduce",
        "================",
        f"seed:                     {args.seed}",
        f"shots per setting:        {args.shots}",
        f"depolarizing noise:       {args.noise}",
        f"mle converged:            {result.converged} ({result.iterations} iterations)",
        f"mle log-likelihood:       {result.log_likelihood:.6f}",
        f"fidelity vs ideal state:  {fid:.6f}",
        "",
        f"entanglement sweep:       {args.points} points on theta in [0, pi]",
        f"pi-tangle peak:           {peak[-1]:.6f} at theta = {peak[0]:.6f}",
        "",
        "reference points (reported for comparison, not asserted):",
        f"  hardware state fidelity   {REFERENCE_HARDWARE_FIDELITY:.2f} "
        "(from the physical experiment; includes readout and gate errors "
        "this simulation does not model)",
        f"  hardware frequency shift  {REFERENCE_SHIFT_HZ/1e6:.0f} MHz "
        "(combines junction aging with the dielectric loading; the split "
        "between the two is not identifiable from the data)",
        "",
    ]
    serialize.atomic_write_text(os.path.join(outdir, "summary.txt"), "\n".join(summary))
    sys.stdout.write(f"fidelity vs ideal: {fid:.6f}\nreport written to {outdir}\n")
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tardiq",
        description=(
            "Qubit-tardigrade entanglement numerics: dressed states, synthetic "
            "tomography, tripartite expansion, and entanglement sweeps. "
            "All frequency flags take ordinary frequencies in Hz."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    seed_default = None  # resolved lazily so the env var is read at run time

    p = sub.add_parser(
        "dressed",
        help="dressed-state gaps and mixing angle for a qubit coupled to oscillators",
    )
    p.add_argument("--wq", type=float, default=DEFAULT_QUBIT_FREQ_HZ,
                   help="bare qubit transition frequency in Hz (default %(default)g)")
    p.add_argument("--osc", type=float, nargs="+", default=[DEFAULT_OSC_FREQ_HZ],
                   help="oscillator frequencies in Hz, one per oscillator "
                        "(default %(default)s, illustrative)")
    p.add_argument("--g", type=float, default=1e8,
                   help="shared qubit-oscillator coupling in Hz (default %(default)g)")
    p.add_argument("--shift", type=float, default=None,
                   help="optional observed gap shift in Hz; fits the coupling "
                        "and reports the implied theta")
    p.add_argument("--out", default=None, help="write the JSON here instead of stdout")
    p.set_defaults(func=cmd_dressed)

    p = sub.add_parser(
        "dielectric-sweep",
        help="transmon frequency shift vs relative permittivity (CSV + PNG)",
    )
    p.add_argument("--f0", type=float, default=DEFAULT_QUBIT_FREQ_HZ,
                   help="bare qubit frequency in Hz (default %(default)g)")
    p.add_argument("--capacitance", type=float, default=DEFAULT_CAPACITANCE_F,
                   help="shunt capacitance in Farads (default %(default)g, illustrative)")
    p.add_argument("--anharm", type=float, default=DEFAULT_ANHARM_HZ,
                   help="anharmonicity in Hz (default %(default)g, illustrative)")
    p.add_argument("--eps-min", type=float, default=1.0,
                   help="smallest relative permittivity (default %(default)s)")
    p.add_argument("--eps-max", type=float, default=30.0,
                   help="largest relative permittivity (default %(default)s)")
    p.add_argument("--points", type=int, default=30,
                   help="number of sweep points (default %(default)s)")
    p.add_argument("--participation", type=float, default=None,
                   help="participation ratio in [0,1]; when omitted it is "
                        "calibrated from --calibrate-shift at --calibrate-eps")
    p.add_argument("--calibrate-shift", type=float, default=REFERENCE_SHIFT_HZ,
                   help="observed shift in Hz used for calibration "
                        "(default %(default)g)")
    p.add_argument("--calibrate-eps", type=float, default=REFERENCE_EPS_R,
                   help="permittivity at which the calibration shift applies "
                        "(default %(default)g)")
    p.add_argument("--out", default="dielectric_sweep.csv",
                   help="output CSV path (default %(default)s)")
    p.add_argument("--no-figures", action="store_true", help="skip the PNG")
    p.set_defaults(func=cmd_dielectric_sweep)

    p = sub.add_parser("tomo-sim", help="simulate tomography counts (JSON)")
    p.add_argument("--input", default=None,
                   help="two-qubit density-matrix JSON; defaults to the ideal "
                        "circuit output (Hadamard then ground-controlled NOT)")
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS,
                   help="shots per measurement setting (default %(default)s)")
    p.add_argument("--seed", type=int, default=seed_default,
                   help=f"RNG seed (default from ${SEED_ENV_VAR} or {DEFAULT_SEED})")
    p.add_argument("--noise", type=float, default=0.0,
                   help="depolarizing weight in [0,1] mixed into the state "
                        "(default %(default)s)")
    p.add_argument("--out", default="counts.json",
                   help="output record path (default %(default)s)")
    p.set_defaults(func=cmd_tomo_sim)

    p = sub.add_parser(
        "reconstruct", help="maximum-likelihood state from a counts record"
    )
    p.add_argument("--counts", required=True, help="tomography record JSON")
    p.add_argument("--out", default="rho_mle.json",
                   help="output density-matrix path (default %(default)s)")
    p.add_argument("--restarts", type=int, default=3,
                   help="perturbed optimizer restarts (default %(default)s)")
    p.add_argument("--max-iterations", type=int, default=10000,
                   help="optimizer iteration cap (default %(default)s)")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser(
        "expand", help="expand a 4x4 dressed-basis state to the 8x8 three-qubit state"
    )
    p.add_argument("--input", default=None,
                   help="two-qubit density-matrix JSON (default: ideal state)")
    p.add_argument("--theta", type=float, required=True,
                   help="coupling angle in radians, in [0, pi]")
    p.add_argument("--out", default="rho_abt.json",
                   help="output density-matrix path (default %(default)s)")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser(
        "entangle-sweep",
        help="negativities and pi-tangle vs theta (CSV + PNG)",
    )
    p.add_argument("--input", default=None,
                   help="two-qubit density-matrix JSON (default: ideal state)")
    p.add_argument("--points", type=int, default=101,
                   help="theta grid points on [0, pi] (default %(default)s)")
    p.add_argument("--out", default="entanglement_sweep.csv",
                   help="output CSV path (default %(default)s)")
    p.add_argument("--no-figures", action="store_true", help="skip the PNG")
    p.set_defaults(func=cmd_entangle_sweep)

    p = sub.add_parser(
        "reproduce",
        help="end-to-end pipeline: simulate, reconstruct, expand, quantify",
    )
    p.add_argument("--outdir", default="report",
                   help="report directory (default %(default)s)")
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS,
                   help="shots per setting (default %(default)s)")
    p.add_argument("--seed", type=int, default=seed_default,
                   help=f"RNG seed (default from ${SEED_ENV_VAR} or {DEFAULT_SEED})")
    p.add_argument("--noise", type=float, default=0.0,
                   help="depolarizing weight in [0,1] (default %(default)s)")
    p.add_argument("--points", type=int, default=101,
                   help="theta grid points (default %(default)s)")
    p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "seed") and args.seed is None:
        try:
            args.seed = _default_seed()
        except UsageError as exc:
            sys.stderr.write(f"error: {exc}\n")
            return 2
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except dressed.ResonanceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except Exception as exc:  # noqa: BLE001 - boundary: report and set exit code
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
