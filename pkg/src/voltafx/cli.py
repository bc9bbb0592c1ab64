"""Command-line interface.

Exit status: 0 on success, 1 on domain/validation errors, 2 on usage
errors. Diagnostics always go to stderr; stdout carries only results.
Numbers are printed with 12 significant digits so output parses back to the
computed values.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .arbitrage import detect_arbitrage
from .errors import ExchangeModelError
from .fitting import fit_potentials
from .formats import (
    ledger_to_csv,
    load_table_file,
    parse_quotes_csv,
    save_table,
)
from .graph import build_graph
from .parity import ocp_cross_rate
from .potentials import ScaleConfig, attractiveness_score, emf, rank_series
from .simulation import (
    CellConfig,
    GeneratorConfig,
    run_electrolysis,
    run_to_equilibrium,
)
from .validation import as_exact


def _num(value: float) -> str:
    return format(value, ".12g")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voltafx",
        description=(
            "Currency potentials, EMF, cross rates, arbitrage detection, and "
            "exchange-cell simulation"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit a potential table to a quote CSV")
    p_fit.add_argument("--quotes", required=True, help="quote CSV file")
    p_fit.add_argument("--reference", required=True, help="currency pinned to 0")
    p_fit.add_argument("--tolerance", type=float, default=1e-10)
    p_fit.add_argument("--max-iterations", type=int, default=None)
    p_fit.add_argument(
        "--out",
        help="write the table document here; without it the document goes to "
             "stdout and the fit metrics to stderr",
    )

    p_series = sub.add_parser("series", help="rank a table into a currency series")
    p_series.add_argument("--table", required=True, help="table document file")
    p_series.add_argument("--format", choices=("table", "csv", "json"),
                          default="table")

    p_emf = sub.add_parser("emf", help="EMF between two currencies of a table")
    p_emf.add_argument("--table", required=True)
    p_emf.add_argument("--cathode", required=True)
    p_emf.add_argument("--anode", required=True)

    p_cross = sub.add_parser("cross", help="cross rate from two quotes: a / b")
    p_cross.add_argument("--a", type=float, required=True)
    p_cross.add_argument("--b", type=float, required=True)

    p_score = sub.add_parser("score", help="attractiveness score of a currency")
    p_score.add_argument("--table", required=True)
    p_score.add_argument("--code", required=True)
    p_score.add_argument("--midpoint", type=float, default=5.0)
    p_score.add_argument("--gain", type=float, default=10.0)
    p_score.add_argument("--lower", type=float, default=0.0)
    p_score.add_argument("--upper", type=float, default=10.0)

    p_arb = sub.add_parser("arbitrage", help="find profitable cycles in quotes")
    p_arb.add_argument("--quotes", required=True)
    p_arb.add_argument("--tolerance", type=float, default=1e-9)
    p_arb.add_argument("--format", choices=("table", "csv", "json"), default="table")

    p_cell = sub.add_parser(
        "sim-cell", help="run the un-driven cell to equilibrium"
    )
    _add_cell_arguments(p_cell)
    p_cell.add_argument("--anode-stock", type=int, required=True,
                        help="anode minor units available")
    p_cell.add_argument("--step-limit", type=int, default=1_000_000)
    p_cell.add_argument("--ledger", help="write the transaction ledger CSV here")

    p_elec = sub.add_parser(
        "sim-electrolysis", help="run the generator-driven exchange"
    )
    _add_cell_arguments(p_elec)
    p_elec.add_argument("--anode-stock", type=int, required=True)
    p_elec.add_argument("--generator-stock", type=int, required=True,
                        help="minor units the generator can push in total")
    p_elec.add_argument("--current", type=int, required=True,
                        help="minor units pushed per step")
    p_elec.add_argument("--soluble", action="store_true",
                        help="replenish the anode each step")
    p_elec.add_argument("--step-limit", type=int, default=1_000_000)
    p_elec.add_argument("--ledger", help="write the transaction ledger CSV here")

    return parser


def _add_cell_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--anode", required=True, help="currency being sold")
    p.add_argument("--cathode", required=True, help="currency being bought")
    p.add_argument("--rate", required=True,
                   help="cathode per anode minor unit, e.g. 2, 2/3, 0.25")
    p.add_argument("--commission", default="0")
    p.add_argument("--initial-emf", default="0")
    p.add_argument("--polarization-delta", default="0")
    p.add_argument("--quantum", type=int, default=1)


def _cmd_fit(args) -> int:
    quotes = parse_quotes_csv(Path(args.quotes).read_text())
    graph = build_graph(quotes)
    result = fit_potentials(
        graph,
        reference=args.reference,
        tolerance=args.tolerance,
        max_iterations=args.max_iterations,
    )
    document = save_table(
        result.table, metadata={"source": f"fit of {args.quotes}"}
    )
    max_residual = float(max(map(abs, result.residuals), default=0.0))
    if args.out:
        Path(args.out).write_text(document)
        print(f"objective {_num(result.objective)}")
        print(f"max_abs_residual {_num(max_residual)}")
    else:
        sys.stdout.write(document)
        print(f"objective {_num(result.objective)}", file=sys.stderr)
        print(f"max_abs_residual {_num(max_residual)}", file=sys.stderr)
    if not result.converged:
        print("warning: solver did not converge", file=sys.stderr)
    return 0


def _cmd_series(args) -> int:
    table = load_table_file(args.table)
    entries = rank_series(table)
    if args.format == "json":
        print(json.dumps(
            [
                {"code": e.code, "potential": e.potential,
                 "polarity": e.polarity.value}
                for e in entries
            ],
            indent=2,
        ))
    elif args.format == "csv":
        print("code,potential,polarity")
        for e in entries:
            print(f"{e.code},{_num(e.potential)},{e.polarity.value}")
    else:
        for e in entries:
            print(f"{e.code:<8} {_num(e.potential):>18} {e.polarity.value}")
    return 0


def _cmd_emf(args) -> int:
    table = load_table_file(args.table)
    value = emf(table.potential(args.cathode), table.potential(args.anode))
    print(_num(value))
    return 0


def _cmd_cross(args) -> int:
    print(_num(ocp_cross_rate(args.a, args.b)))
    return 0


def _cmd_score(args) -> int:
    table = load_table_file(args.table)
    cfg = ScaleConfig(midpoint=args.midpoint, gain=args.gain,
                      lower=args.lower, upper=args.upper)
    print(_num(attractiveness_score(table.potential(args.code), cfg)))
    return 0


def _cmd_arbitrage(args) -> int:
    quotes = parse_quotes_csv(Path(args.quotes).read_text())
    graph = build_graph(quotes)
    cycles = detect_arbitrage(graph, tolerance=args.tolerance)
    if args.format == "json":
        print(json.dumps(
            [
                {"path": list(c.path), "gross_log_gain": c.gross_log_gain,
                 "net_log_gain": c.net_log_gain}
                for c in cycles
            ],
            indent=2,
        ))
    elif args.format == "csv":
        print("path,gross_log_gain,net_log_gain")
        for c in cycles:
            print(f"{'->'.join(c.path)},{_num(c.gross_log_gain)},"
                  f"{_num(c.net_log_gain)}")
    else:
        if not cycles:
            print("no profitable cycles")
        for c in cycles:
            loop = "->".join(c.path + (c.path[0],))
            print(f"{loop} gross {_num(c.gross_log_gain)} "
                  f"net {_num(c.net_log_gain)}")
    return 0


def _cell_config(args) -> CellConfig:
    return CellConfig(
        anode=args.anode,
        cathode=args.cathode,
        rate=as_exact(args.rate, "rate"),
        commission=as_exact(args.commission, "commission"),
        initial_emf=as_exact(args.initial_emf, "initial_emf"),
        polarization_delta=as_exact(args.polarization_delta, "polarization_delta"),
        quantum=args.quantum,
    )


def _print_sim_summary(state, ledger, ledger_path: str | None) -> None:
    print(f"halted {state.halt_reason.value}")
    print(f"steps {state.steps}")
    print(f"dissolved {state.dissolved}")
    print(f"deposited {state.cathode_deposit}")
    print(f"commission {state.commission_pool}")
    print(f"carry {state.carry}")
    print(f"emf_final {_num(float(state.emf_now))}")
    print(f"anode_remaining {state.anode_remaining}")
    if state.generator_remaining is not None:
        print(f"generator_remaining {state.generator_remaining}")
    if ledger_path:
        Path(ledger_path).write_text(ledger_to_csv(ledger))


def _cmd_sim_cell(args) -> int:
    cfg = _cell_config(args)
    state, ledger = run_to_equilibrium(cfg, args.anode_stock, args.step_limit)
    _print_sim_summary(state, ledger, args.ledger)
    return 0


def _cmd_sim_electrolysis(args) -> int:
    cfg = _cell_config(args)
    generator = GeneratorConfig(
        stock=args.generator_stock, current=args.current,
        soluble_anode=args.soluble,
    )
    state, ledger = run_electrolysis(cfg, generator, args.anode_stock,
                                     args.step_limit)
    _print_sim_summary(state, ledger, args.ledger)
    return 0


_COMMANDS = {
    "fit": _cmd_fit,
    "series": _cmd_series,
    "emf": _cmd_emf,
    "cross": _cmd_cross,
    "score": _cmd_score,
    "arbitrage": _cmd_arbitrage,
    "sim-cell": _cmd_sim_cell,
    "sim-electrolysis": _cmd_sim_electrolysis,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help; pass it through.
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ExchangeModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        errors = getattr(exc, "errors", None)
        if errors:
            for item in errors:
                print(f"  {item}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
