"""One-lie liar game: bounds, strategy, adversary, oracle, harness, service."""

from .bounds import (
    MAX_Q,
    StrategyBound,
    ceil_log2,
    gap,
    gap_histogram,
    pelc_q1,
    strategy_bound,
    volume_winnable,
)
from .candidates import Question
from .game import (
    GameState,
    InconsistentResponderError,
    LiarGameError,
    PadEntry,
    QuestionEntry,
    StateSummary,
    initial_state,
    state_from_populations,
    weight,
)
from .oracle import Oracle, OracleCapError, oracle_q1, winnable
from .responders import HonestResponder, WeightAdversary, adversarial_answer
from .strategy import (
    GameResult,
    MachineQuestioner,
    Phase,
    StrategyPlan,
    make_plan,
    run_game,
)
from .verify import (
    AdversaryRun,
    CaseBudgetError,
    SplitMix64,
    VerificationReport,
    simulate_adversary,
    simulate_adversary_random,
    verify_exhaustive,
    verify_sampled,
    weight_conservation_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_Q",
    "StrategyBound",
    "ceil_log2",
    "gap",
    "gap_histogram",
    "pelc_q1",
    "strategy_bound",
    "volume_winnable",
    "Question",
    "GameState",
    "InconsistentResponderError",
    "LiarGameError",
    "PadEntry",
    "QuestionEntry",
    "StateSummary",
    "initial_state",
    "state_from_populations",
    "weight",
    "Oracle",
    "OracleCapError",
    "oracle_q1",
    "winnable",
    "HonestResponder",
    "WeightAdversary",
    "adversarial_answer",
    "GameResult",
    "MachineQuestioner",
    "Phase",
    "StrategyPlan",
    "make_plan",
    "run_game",
    "AdversaryRun",
    "CaseBudgetError",
    "SplitMix64",
    "VerificationReport",
    "simulate_adversary",
    "simulate_adversary_random",
    "verify_exhaustive",
    "verify_sampled",
    "weight_conservation_sweep",
    "__version__",
]
