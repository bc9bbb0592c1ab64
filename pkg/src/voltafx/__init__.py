"""Electrochemical-cell model of currency exchange with commission.

Currencies behave like electrodes: each carries a potential measurable only
against a pinned reference, the EMF of a pair drives their exchange, and the
commission acts as an overpotential that the drive must overcome. The
package fits reference-pinned potentials to noisy quote sets by weighted
least squares, ranks currencies into a series, detects commission-aware
arbitrage cycles, and simulates discrete exchange with exact value
conservation in minor units.
"""

from .arbitrage import MAX_ENUMERATION_NODES, ArbitrageCycle, detect_arbitrage
from .errors import (
    ConfigurationError,
    DisconnectedGraphError,
    DomainError,
    ExchangeModelError,
    SimulationStateError,
    UnknownCurrencyError,
    ValidationError,
)
from .estimators import ArbitrageDetector, PotentialFitter, coerce_quotes
from .fitting import FitResult, fit_potentials, residual_report
from .formats import (
    electrode_series_path,
    ledger_to_csv,
    load_electrode_series,
    load_table,
    load_table_file,
    parse_quotes_csv,
    quotes_to_csv,
    save_table,
    save_table_file,
    table_metadata,
    write_ledger_csv,
)
from .graph import Edge, ExchangeGraph, build_graph, validate_connectivity
from .parity import (
    Commission,
    Quote,
    effective_rate,
    invert_quote,
    ocp_cross_rate,
    overpotential,
)
from .potentials import (
    Polarity,
    PotentialTable,
    ScaleConfig,
    SeriesEntry,
    attractiveness_score,
    classify_polarity,
    emf,
    emf_from_levels,
    potential_from_rate,
    rank_series,
    rate_from_potentials,
)
from .simulation import (
    CellConfig,
    ExchangeLedger,
    GeneratorConfig,
    HaltReason,
    LedgerEntry,
    SimState,
    conservation_check,
    equilibrium_transfer_count,
    init_cell,
    run_electrolysis,
    run_to_equilibrium,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "ArbitrageCycle",
    "ArbitrageDetector",
    "CellConfig",
    "Commission",
    "ConfigurationError",
    "DisconnectedGraphError",
    "DomainError",
    "Edge",
    "ExchangeGraph",
    "ExchangeLedger",
    "ExchangeModelError",
    "FitResult",
    "GeneratorConfig",
    "HaltReason",
    "LedgerEntry",
    "MAX_ENUMERATION_NODES",
    "Polarity",
    "PotentialFitter",
    "PotentialTable",
    "Quote",
    "ScaleConfig",
    "SeriesEntry",
    "SimState",
    "SimulationStateError",
    "UnknownCurrencyError",
    "ValidationError",
    "attractiveness_score",
    "build_graph",
    "classify_polarity",
    "coerce_quotes",
    "conservation_check",
    "detect_arbitrage",
    "effective_rate",
    "electrode_series_path",
    "emf",
    "emf_from_levels",
    "equilibrium_transfer_count",
    "fit_potentials",
    "init_cell",
    "invert_quote",
    "ledger_to_csv",
    "load_electrode_series",
    "load_table",
    "load_table_file",
    "ocp_cross_rate",
    "overpotential",
    "parse_quotes_csv",
    "potential_from_rate",
    "quotes_to_csv",
    "rank_series",
    "rate_from_potentials",
    "residual_report",
    "run_electrolysis",
    "run_to_equilibrium",
    "save_table",
    "save_table_file",
    "step",
    "table_metadata",
    "validate_connectivity",
    "write_ledger_csv",
]
