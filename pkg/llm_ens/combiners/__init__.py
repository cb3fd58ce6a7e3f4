from .combiners import (COMBINERS, CombinerInput, CombinerOutput, aggregate,
                        boltzmann_addition, boltzmann_multiplication,
                        borda_scores, combine, get_combiner, majority_vote,
                        rank_vote)

__all__ = [
    "COMBINERS",
    "CombinerInput",
    "CombinerOutput",
    "aggregate",
    "boltzmann_addition",
    "boltzmann_multiplication",
    "borda_scores",
    "combine",
    "get_combiner",
    "majority_vote",
    "rank_vote",
]
