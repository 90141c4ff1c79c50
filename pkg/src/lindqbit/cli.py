"""Command-line interface: figure reproduction, simulations, rate checks.

Exit codes: 0 success, 2 config/input error, 3 unphysical evolution,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .config import load_config, parse_dissipation, parse_state_node
from .dynamics import (
    ControlHamiltonian,
    RateSet,
    check_dephasing_constraints,
    dephasing_constraint_residuals,
    dephasing_from_amplitudes,
    dissipator_from_rates,
    extract_rates,
    lindblad_dissipator,
    realize_dephasing_amplitudes,
)
from .entanglement import concurrence_mixed, concurrence_pure, entanglement_of_formation
from .errors import (
    ConfigError,
    DomainError,
    InvalidRatesError,
    InvalidStateError,
    NoConvergenceError,
    NotHermitianError,
    NotPSDError,
    UnphysicalEvolutionError,
)
from .states import BELL_KINDS, PureState, bell_state, density_from_pure, is_separable_pure
from .trajectory import dissipative_records, time_grid, unitary_records, write_csv

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNPHYSICAL = 3
EXIT_NUMERICAL = 4


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="CSV", help="CSV output path")
    common.add_argument(
        "--plot", metavar="FILE", help="plot output path (format from suffix; SVG by default)"
    )
    common.add_argument(
        "--seed",
        type=int,
        default=None,
        help="seed for randomized features; falls back to LINDQBIT_SEED "
        "(current commands are fully deterministic)",
    )
    common.add_argument(
        "--tol",
        type=float,
        default=1e-12,
        help="tolerance for verdicts and constraint checks (default 1e-12)",
    )

    parser = argparse.ArgumentParser(
        prog="lindqbit",
        description="Two-qubit entanglement dynamics: unitary control, dephasing, "
        "Lindblad dissipation, and concurrence reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p1 = sub.add_parser(
        "figure1",
        parents=[common],
        help="concurrence oscillation under the corner-coupling Hamiltonian",
    )
    p1.add_argument("--y", type=float, default=1.0, help="coupling strength (nonzero)")
    p1.add_argument("--x1", type=float, default=0.0, help="energy of levels 1 and 4")
    p1.add_argument("--x2", type=float, default=0.0, help="energy of level 2")
    p1.add_argument("--x3", type=float, default=0.0, help="energy of level 3")
    p1.add_argument("--t-max", type=float, default=math.pi, help="grid end time")
    p1.add_argument("--points", type=int, default=400, help="grid size")

    p2 = sub.add_parser(
        "figure2",
        parents=[common],
        help="Bell-state concurrence decay under pure dephasing",
    )
    p2.add_argument("--gamma14", type=float, default=1.0, help="corner dephasing rate (>= 0)")
    p2.add_argument(
        "--gamma-rest",
        type=float,
        default=None,
        help="the other five dephasing rates (default: equal to --gamma14, which "
        "satisfies the physical-process relations)",
    )
    p2.add_argument("--t-max", type=float, default=5.0, help="grid end time")
    p2.add_argument("--points", type=int, default=400, help="grid size")

    ps = sub.add_parser("simulate", parents=[common], help="run a JSON-configured simulation")
    ps.add_argument("config", help="path to a JSON config file")

    pc = sub.add_parser(
        "check-rates", parents=[common], help="report rate constraints and realizability"
    )
    pc.add_argument("config", help="JSON file with a dissipation section (or a bare one)")

    pq = sub.add_parser(
        "concurrence", parents=[common], help="entanglement report for a single state"
    )
    pq.add_argument(
        "state",
        help="Bell kind name, inline JSON, or path to a JSON file holding 4 amplitude "
        "[re, im] pairs, a 4x4 matrix of pairs, or {'amplitudes'|'matrix': ...}",
    )
    pq.add_argument(
        "--normalize",
        action="store_true",
        help="rescale amplitude input to unit norm before the analysis",
    )
    return parser


def _grid(t_max: float, points: int):
    try:
        return time_grid(t_max, points)
    except ValueError as exc:
        raise ConfigError("time_grid", str(exc)) from exc


def _emit(records, csv_path, plot_path, title):
    write_csv(records, csv_path)
    print(f"wrote {csv_path} ({len(records)} points)")
    if plot_path:
        from .plotting import save_concurrence_plot  # lazy: pulls in matplotlib

        save_concurrence_plot(records, plot_path, title=title)
        print(f"wrote {plot_path}")


def cmd_figure1(args) -> int:
    if args.y == 0.0:
        raise ConfigError("y", "coupling must be nonzero; zero coupling never entangles")
    grid = _grid(args.t_max, args.points)
    h = ControlHamiltonian(args.x1, args.x2, args.x3, args.y)
    v0 = PureState([1.0, 0.0, 0.0, 0.0])
    records = unitary_records(h, v0, grid)
    peak = max(records, key=lambda rec: rec.concurrence)
    _emit(
        records,
        args.out or "figure1.csv",
        args.plot or "figure1.svg",
        title=f"concurrence under corner coupling y={args.y:g}",
    )
    print(f"peak concurrence {peak.concurrence:.12g} at t = {peak.t:.12g}")
    return EXIT_OK


def cmd_figure2(args) -> int:
    if args.gamma14 < 0.0:
        raise ConfigError("gamma14", f"rate must be nonnegative, got {args.gamma14!r}")
    rest = args.gamma14 if args.gamma_rest is None else args.gamma_rest
    if rest < 0.0:
        raise ConfigError("gamma-rest", f"rate must be nonnegative, got {rest!r}")
    rates = RateSet.pure_dephasing(
        g12=rest, g13=rest, g14=args.gamma14, g23=rest, g24=rest, g34=rest
    )
    if not check_dephasing_constraints(rates, args.tol):
        r1, r2 = dephasing_constraint_residuals(rates)
        print(
            f"warning: dephasing rates violate the physical-process relations "
            f"(residuals {r1:.3g}, {r2:.3g}); evolution may leave the physical set",
            file=sys.stderr,
        )
    grid = _grid(args.t_max, args.points)
    generator = dissipator_from_rates(rates)
    rho0 = density_from_pure(bell_state("phi_plus"))
    records = dissipative_records(generator, rho0, grid)
    _emit(
        records,
        args.out or "figure2.csv",
        args.plot or "figure2.svg",
        title=f"Bell-state concurrence decay, corner rate {args.gamma14:g}",
    )
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    csv_path = args.out or cfg.csv_path
    if not csv_path:
        raise ConfigError("outputs.csv_path", "missing; set it in the config or pass --out")
    plot_path = args.plot or cfg.plot_path
    grid = _grid(cfg.t_max, cfg.points)
    records = dissipative_records(cfg.generator(), cfg.initial_state, grid)
    _emit(records, csv_path, plot_path, title="simulated concurrence")
    return EXIT_OK


def _load_json(path_or_doc, what):
    try:
        with open(path_or_doc) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError("", f"cannot read {what} {path_or_doc!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"invalid JSON in {path_or_doc!r}: {exc}") from exc


def _print_matrix(label, matrix):
    print(f"{label}:")
    for row in np.asarray(matrix):
        print("  " + "  ".join(f"{val:12.6g}" for val in row))


def cmd_check_rates(args) -> int:
    doc = _load_json(args.config, "rates config")
    node = doc.get("dissipation", doc) if isinstance(doc, dict) else doc

    kind, rates, lindblad = parse_dissipation(node)
    if kind == "none":
        raise ConfigError("dissipation", "check-rates needs a rates or lindblad variant")

    if kind == "lindblad_diagonal":
        # each operator holds a single diagonal entry, so the sum restores
        # the amplitude vector (skipped zeros stay zero)
        total = sum(lindblad.operators, np.zeros((4, 4), dtype=complex))
        rates = dephasing_from_amplitudes(np.diag(total))
        print("rates derived from diagonal collapse amplitudes")
    elif kind == "lindblad_general":
        extraction = extract_rates(lindblad_dissipator(lindblad), tol=max(args.tol, 1e-12))
        form = "yes" if extraction.is_rate_form else "no"
        print(f"rate form: {form} (pattern residual {extraction.residual:.3e})")
        if not extraction.is_rate_form:
            print("note: entries outside the rate-form layout are ignored below")
        dephasing = (extraction.dephasing + extraction.dephasing.T) / 2.0
        _print_matrix("dephasing rates (Gamma)", dephasing)
        _print_matrix("relaxation rates (gamma)", extraction.relaxation)
        _report_constraints(dephasing, args.tol)
        return EXIT_OK

    _print_matrix("dephasing rates (Gamma)", rates.dephasing)
    _print_matrix("relaxation rates (gamma)", rates.relaxation)
    _report_constraints(rates.dephasing, args.tol)
    return EXIT_OK


def _report_constraints(dephasing, tol):
    r1, r2 = dephasing_constraint_residuals(dephasing)
    verdict = "yes" if (r1 <= tol and r2 <= tol) else "no"
    print(f"constraint residuals: {r1:.6g} (12+34 vs 14+23), {r2:.6g} (14+23 vs 13+24)")
    print(f"constraints satisfied within {tol:g}: {verdict}")
    realization = realize_dephasing_amplitudes(dephasing, tol=max(tol, 1e-12))
    mags = ", ".join(f"{val:.6g}" for val in realization.squared_magnitudes)
    real_verdict = "yes" if realization.realizable else "no"
    print(
        f"diagonal-amplitude realization: squared magnitudes [{mags}], "
        f"fit residual {realization.residual:.3e}, realizable: {real_verdict}"
    )


def cmd_concurrence(args) -> int:
    node = args.state
    if node not in BELL_KINDS:
        if os.path.exists(node):
            node = _load_json(node, "state file")
        else:
            try:
                node = json.loads(node)
            except json.JSONDecodeError:
                raise ConfigError(
                    "state",
                    f"{args.state!r} is not a Bell kind ({', '.join(BELL_KINDS)}), "
                    "readable JSON file, or inline JSON",
                ) from None
    state, pure = parse_state_node(node, "state", normalize=args.normalize)

    if pure is not None:
        c = concurrence_pure(pure)
        print("input: pure state")
        print(f"concurrence = {c:.12g}")
        print(f"entanglement of formation = {entanglement_of_formation(min(c, 1.0)):.12g}")
        verdict = "yes" if is_separable_pure(pure, tol=args.tol) else "no"
        print(f"separable (|det c| <= {args.tol:g}): {verdict}")
    else:
        result = concurrence_mixed(state)
        print("input: density matrix")
        print(f"concurrence = {result.value:.12g}")
        print("lambda spectrum = " + ", ".join(f"{lam:.12g}" for lam in result.lambdas))
        print(f"entanglement of formation = {entanglement_of_formation(result.value):.12g}")
    return EXIT_OK


_HANDLERS = {
    "figure1": cmd_figure1,
    "figure2": cmd_figure2,
    "simulate": cmd_simulate,
    "check-rates": cmd_check_rates,
    "concurrence": cmd_concurrence,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is None:
        env_seed = os.environ.get("LINDQBIT_SEED")
        args.seed = int(env_seed) if env_seed and env_seed.isdigit() else None
    try:
        return _HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvalidStateError, InvalidRatesError, NotHermitianError, DomainError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except UnphysicalEvolutionError as exc:
        print(f"unphysical evolution: {exc}", file=sys.stderr)
        return EXIT_UNPHYSICAL
    except (NoConvergenceError, NotPSDError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
