from .agents import TrainedAgent, train_q_learning
from .combiners import combine
from .harness import ExperimentPlan, run_experiment
from .mdp import make_environment
from .profile import RewardDistribution
from .runtime import run_llm_ens_episode
from .situations import SituationCatalog

__version__ = "0.1.0"
