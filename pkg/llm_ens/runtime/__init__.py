from .result import EnsembleConfig, RunResult
from .runner import (evaluate, evaluate_runs, run_combiner_episode,
                     run_llm_ens_episode, run_single_agent_episode)

__all__ = [
    "EnsembleConfig",
    "RunResult",
    "evaluate",
    "evaluate_runs",
    "run_combiner_episode",
    "run_llm_ens_episode",
    "run_single_agent_episode",
]
