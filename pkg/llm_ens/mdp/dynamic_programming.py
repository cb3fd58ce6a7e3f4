import logging

import numpy as np

from .environment import Environment

logger = logging.getLogger(__name__)


def dp_optimal_return(env: Environment, gamma: float) -> float:
    """
    Optimal value of the start state by finite-horizon backward induction
    over every state reachable from it.

    Raises UnsupportedDynamicsError for environments whose transitions read
    the world RNG.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")

    model = env.deterministic_model()

    index = {model.start_id: 0}
    frontier = [model.start_id]
    edges = []
    while frontier:
        state_id = frontier.pop()
        if model.is_terminal(state_id):
            continue
        for action in range(model.action_count):
            next_id, reward = model.transition(state_id, action)
            if next_id not in index:
                index[next_id] = len(index)
                frontier.append(next_id)
            edges.append((index[state_id], action, index[next_id], reward))

    n = len(index)
    rewards = np.zeros((n, model.action_count))
    successors = np.zeros((n, model.action_count), dtype=int)
    terminal = np.array([model.is_terminal(s) for s in index])
    for s, a, s_next, r in edges:
        rewards[s, a] = r
        successors[s, a] = s_next

    values = np.zeros(n)
    for _ in range(model.horizon):
        continuation = np.where(terminal[successors], 0.0, values[successors])
        values = np.max(rewards + gamma * continuation, axis=1)
        values[terminal] = 0.0

    logger.debug("%s: %d reachable states, optimal return %.6g", env, n,
                 values[0])
    return float(values[0])
