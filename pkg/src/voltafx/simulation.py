"""Discrete exchange-cell simulation with exact value conservation.

Two regimes are modeled. In the un-driven cell, minor units ("cents as
ions") flow from the anode currency to the cathode currency while the cell
EMF exceeds the commission overpotential; a linear polarization model drops
the EMF by a fixed delta per transferred minor unit, so the run reaches
dynamic equilibrium in a predictable number of steps. In the
generator-driven (electrolysis) regime an external stock pushes a fixed
current per step regardless of EMF, optionally replenishing the anode
("soluble anode") so its balance stays constant.

All balances are integers and every conversion is carried out in exact
rational arithmetic with a fractional carry accumulator in [0, 1), so

    dissolved * rate == deposited + commission_pool + carry

holds exactly after every step, never approximately. Floats entering a
config are read as their shortest decimal representation (0.01 means 1/100);
EMF bookkeeping also runs on exact rationals so the closed-form equilibrium
transfer count agrees with the simulated count bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ConfigurationError, DomainError, SimulationStateError
from .parity import Commission
from .validation import (
    as_exact,
    check_currency_code,
    require_nonnegative_int,
    require_positive_int,
)


class HaltReason(str, Enum):
    EQUILIBRIUM = "equilibrium"          # EMF no longer exceeds the overpotential
    ANODE_EXHAUSTED = "anode-exhausted"  # nothing left to dissolve
    STOCK_EXHAUSTED = "stock-exhausted"  # generator stock spent
    STEP_LIMIT = "step-limit"            # caller-imposed cap reached


def _exact_overpotential(commission: Fraction) -> Fraction:
    """Halting threshold as an exact rational.

    The log-space overpotential is transcendental, so it is computed in
    floating point and then frozen through its shortest decimal
    representation. Both the stepper and the closed-form count use this
    same value, which is what makes them agree exactly.
    """
    if commission == 0:
        return Fraction(0)
    return as_exact(-math.log1p(-float(commission)), "overpotential")


@dataclass(frozen=True)
class CellConfig:
    """An exchange cell: anode currency sold into cathode currency.

    ``rate`` is cathode minor units per anode minor unit, held exactly
    (pass a Fraction, an int, a string like "2/3" or "0.25", a
    (numerator, denominator) pair, or a float read as decimal).
    ``polarization_delta`` is the EMF drop per transferred anode minor unit;
    ``quantum`` is how many anode minor units move per step.
    """

    anode: str
    cathode: str
    rate: Fraction
    commission: Fraction = Fraction(0)
    initial_emf: Fraction = Fraction(0)
    polarization_delta: Fraction = Fraction(0)
    quantum: int = 1

    def __post_init__(self):
        check_currency_code(self.anode)
        check_currency_code(self.cathode)
        if self.anode == self.cathode:
            raise ConfigurationError(
                f"anode and cathode are both {self.anode!r}; a cell needs two currencies"
            )
        commission = self.commission
        if isinstance(commission, Commission):
            commission = commission.fraction
        object.__setattr__(self, "rate", as_exact(self.rate, "rate"))
        object.__setattr__(self, "commission", as_exact(commission, "commission"))
        object.__setattr__(self, "initial_emf", as_exact(self.initial_emf, "initial_emf"))
        object.__setattr__(
            self, "polarization_delta", as_exact(self.polarization_delta, "polarization_delta")
        )
        if self.rate <= 0:
            raise ConfigurationError(f"rate must be positive, got {self.rate}")
        if not 0 <= self.commission < 1:
            raise ConfigurationError(
                f"commission must lie in [0, 1), got {self.commission}"
            )
        if self.polarization_delta < 0:
            raise ConfigurationError(
                f"polarization_delta must be non-negative, got {self.polarization_delta}"
            )
        require_positive_int(self.quantum, "quantum")

    @property
    def halting_threshold(self) -> Fraction:
        return _exact_overpotential(self.commission)


@dataclass(frozen=True)
class GeneratorConfig:
    """External drive for electrolysis mode: a stock pushing a fixed current."""

    stock: int
    current: int
    soluble_anode: bool = False

    def __post_init__(self):
        require_nonnegative_int(self.stock, "generator stock")
        require_positive_int(self.current, "current")


@dataclass(frozen=True)
class LedgerEntry:
    step: int
    dissolved: int
    deposited: int
    commission_taken: int
    emf_after: float


class ExchangeLedger:
    """Append-only transaction log; column sums match the state exactly."""

    def __init__(self):
        self.entries: list[LedgerEntry] = []

    def append(self, entry: LedgerEntry) -> None:
        self.entries.append(entry)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def total_dissolved(self) -> int:
        return sum(e.dissolved for e in self.entries)

    @property
    def total_deposited(self) -> int:
        return sum(e.deposited for e in self.entries)

    @property
    def total_commission(self) -> int:
        return sum(e.commission_taken for e in self.entries)


@dataclass
class SimState:
    """Mutable state of one running cell.

    ``dissolved`` counts every anode minor unit ever converted and
    ``replenished`` every unit restored by a soluble anode, so conservation
    stays checkable even when ``anode_remaining`` is held constant.
    """

    anode_remaining: int
    cathode_deposit: int = 0
    commission_pool: int = 0
    carry: Fraction = Fraction(0)
    emf_now: Fraction = Fraction(0)
    steps: int = 0
    halt_reason: HaltReason | None = None
    dissolved: int = 0
    replenished: int = 0
    generator_remaining: int | None = None

    @property
    def halted(self) -> bool:
        return self.halt_reason is not None


def init_cell(cfg: CellConfig, anode_stock: int) -> SimState:
    """Fresh state: full anode, zeroed deposits, EMF at its initial value."""
    require_nonnegative_int(anode_stock, "anode stock")
    return SimState(anode_remaining=anode_stock, emf_now=cfg.initial_emf)


def _transfer(state: SimState, cfg: CellConfig, quanta: int,
              ledger: ExchangeLedger | None) -> None:
    """Move ``quanta`` anode minor units through the cell, exactly.

    Gross cathode value splits into an integer deposit, an integer
    commission take, and a fractional remainder that accumulates in the
    carry; once the carry reaches one whole minor unit it promotes into the
    deposit.
    """
    gross = quanta * cfg.rate
    commission_part = gross * cfg.commission
    net = gross - commission_part

    deposit_int = math.floor(net)
    commission_int = math.floor(commission_part)
    state.carry += (net - deposit_int) + (commission_part - commission_int)
    promoted = math.floor(state.carry)
    state.carry -= promoted
    deposit_int += promoted

    state.cathode_deposit += deposit_int
    state.commission_pool += commission_int
    state.anode_remaining -= quanta
    state.dissolved += quanta
    state.emf_now -= cfg.polarization_delta * quanta
    state.steps += 1
    if ledger is not None:
        ledger.append(
            LedgerEntry(
                step=state.steps,
                dissolved=quanta,
                deposited=deposit_int,
                commission_taken=commission_int,
                emf_after=float(state.emf_now),
            )
        )


def step(state: SimState, cfg: CellConfig,
         ledger: ExchangeLedger | None = None) -> SimState:
    """Advance the un-driven cell by one step, mutating ``state``.

    Halts with EQUILIBRIUM (no transfer) as soon as the EMF no longer
    exceeds the commission overpotential -- the exchange does not take
    place at or below zero net drive. Otherwise transfers
    min(quantum, anode_remaining) minor units and halts with
    ANODE_EXHAUSTED when the anode empties.
    """
    if state.halted:
        raise SimulationStateError(f"cell already halted: {state.halt_reason.value}")
    if state.emf_now <= cfg.halting_threshold:
        state.halt_reason = HaltReason.EQUILIBRIUM
        return state
    if state.anode_remaining == 0:
        state.halt_reason = HaltReason.ANODE_EXHAUSTED
        return state
    _transfer(state, cfg, min(cfg.quantum, state.anode_remaining), ledger)
    if state.anode_remaining == 0:
        state.halt_reason = HaltReason.ANODE_EXHAUSTED
    return state


def run_to_equilibrium(
    cfg: CellConfig, anode_stock: int, step_limit: int
) -> tuple[SimState, ExchangeLedger]:
    """Run the un-driven cell until it halts or ``step_limit`` transfers.

    With a positive polarization delta, equilibrium is reached after at most
    ceil((initial_emf - overpotential) / (delta * quantum)) transfers, so
    the step limit is a guard, not the expected exit.
    """
    require_positive_int(step_limit, "step limit")
    state = init_cell(cfg, anode_stock)
    ledger = ExchangeLedger()
    while not state.halted:
        if state.steps >= step_limit:
            state.halt_reason = HaltReason.STEP_LIMIT
            break
        step(state, cfg, ledger)
    return state, ledger


def run_electrolysis(
    cfg: CellConfig,
    generator: GeneratorConfig,
    anode_stock: int,
    step_limit: int,
) -> tuple[SimState, ExchangeLedger]:
    """Run the generator-driven cell; the external stock overrides equilibrium.

    Each step transfers min(current, generator stock remaining,
    anode_remaining) minor units with the same exact conversion arithmetic
    (the EMF still decays but never halts the run). A soluble anode is
    replenished by the transferred amount each step, holding
    ``anode_remaining`` constant. Halts on STOCK_EXHAUSTED, ANODE_EXHAUSTED
    (insoluble anode only, or a soluble one that started empty), or
    STEP_LIMIT.
    """
    require_positive_int(step_limit, "step limit")
    state = init_cell(cfg, anode_stock)
    state.generator_remaining = generator.stock
    ledger = ExchangeLedger()
    while not state.halted:
        if state.steps >= step_limit:
            state.halt_reason = HaltReason.STEP_LIMIT
            break
        quanta = min(generator.current, state.generator_remaining, state.anode_remaining)
        if quanta == 0:
            state.halt_reason = (
                HaltReason.STOCK_EXHAUSTED
                if state.generator_remaining == 0
                else HaltReason.ANODE_EXHAUSTED
            )
            break
        _transfer(state, cfg, quanta, ledger)
        state.generator_remaining -= quanta
        if generator.soluble_anode:
            state.anode_remaining += quanta
            state.replenished += quanta
        if state.generator_remaining == 0:
            state.halt_reason = HaltReason.STOCK_EXHAUSTED
        elif state.anode_remaining == 0:
            state.halt_reason = HaltReason.ANODE_EXHAUSTED
    return state, ledger


def conservation_check(
    state: SimState, cfg: CellConfig, initial_anode: int
) -> str | None:
    """Recompute the conservation identity exactly; None means it holds.

    Checks, in exact rational arithmetic:
      dissolved * rate == cathode_deposit + commission_pool + carry,
      0 <= carry < 1, and
      anode_remaining == initial_anode - dissolved + replenished.
    Returns a description of the first violation, including the exact
    discrepancy, instead of raising.
    """
    expected = state.dissolved * cfg.rate
    actual = state.cathode_deposit + state.commission_pool + state.carry
    if actual != expected:
        discrepancy = actual - expected
        return (
            f"value not conserved: deposits + commission + carry = {actual} "
            f"but dissolved * rate = {expected} (discrepancy {discrepancy})"
        )
    if not 0 <= state.carry < 1:
        return f"carry {state.carry} outside [0, 1)"
    expected_anode = initial_anode - state.dissolved + state.replenished
    if state.anode_remaining != expected_anode:
        return (
            f"anode accounting broken: remaining {state.anode_remaining} "
            f"!= initial {initial_anode} - dissolved {state.dissolved} "
            f"+ replenished {state.replenished}"
        )
    return None


def equilibrium_transfer_count(cfg: CellConfig) -> int:
    """Closed-form number of quantum-sized transfers before equilibrium.

    The EMF after k transfers is initial_emf - k * delta * quantum, and a
    transfer happens only while the EMF strictly exceeds the overpotential,
    so the count is ceil((initial_emf - overpotential) / (delta * quantum)),
    floored at zero. Evaluated in the same exact arithmetic as the stepper,
    it matches :func:`run_to_equilibrium` exactly whenever the anode holds
    enough stock. Unsupported for zero polarization delta (the EMF never
    decays, so the count is unbounded).
    """
    if cfg.polarization_delta == 0:
        raise DomainError(
            "equilibrium transfer count is unbounded when polarization_delta is 0"
        )
    drive = cfg.initial_emf - cfg.halting_threshold
    if drive <= 0:
        return 0
    return math.ceil(drive / (cfg.polarization_delta * cfg.quantum))
