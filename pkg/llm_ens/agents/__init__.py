from .config import AgentConfig
from .q_agent import (TrainedAgent, act_greedy, action_probabilities,
                      argmax_uniform, boltzmann, constant_action_agent,
                      train_q_learning)
from .serialization import (LoadedAgent, load_agent, read_agent, save_agent,
                            write_agent)

__all__ = [
    "AgentConfig",
    "LoadedAgent",
    "TrainedAgent",
    "act_greedy",
    "action_probabilities",
    "argmax_uniform",
    "boltzmann",
    "constant_action_agent",
    "load_agent",
    "read_agent",
    "save_agent",
    "train_q_learning",
    "write_agent",
]
