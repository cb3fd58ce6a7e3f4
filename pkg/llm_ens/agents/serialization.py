from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, NamedTuple

import numpy as np
from pydantic import ValidationError

from llm_ens.errors import AgentFormatError
from llm_ens.mdp import is_registered
from llm_ens.utils.json_io import read_json_file, write_json_file

from .config import AgentConfig
from .q_agent import TrainedAgent

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


class LoadedAgent(NamedTuple):
    agent: TrainedAgent
    unknown_env: bool


def save_agent(agent: TrainedAgent) -> dict[str, Any]:
    """Serialize to a JSON-ready record with sparse (state, action, value) triples."""
    triples = [[int(state_id), action, float(value)]
               for state_id in sorted(agent.q_table)
               for action, value in enumerate(agent.q_table[state_id])]
    return {
        "format_version": FORMAT_VERSION,
        "agent_id": agent.agent_id,
        "env_name": agent.env_name,
        "action_count": agent.action_count,
        "train_seed": agent.train_seed,
        "config": agent.config.model_dump(),
        "q_table": triples,
    }


def load_agent(record: dict[str, Any]) -> LoadedAgent:
    if not isinstance(record, dict):
        raise AgentFormatError("agent record must be a JSON object")
    version = record.get("format_version")
    if version != FORMAT_VERSION:
        raise AgentFormatError(
            f"unsupported agent format version {version!r}, "
            f"expected {FORMAT_VERSION}")
    try:
        action_count = int(record["action_count"])
        config = AgentConfig.model_validate(record["config"])
        q_table: dict[int, np.ndarray] = {}
        for state_id, action, value in record["q_table"]:
            if state_id not in q_table:
                q_table[state_id] = np.zeros(action_count)
            q_table[state_id][action] = value
        agent = TrainedAgent(agent_id=str(record["agent_id"]),
                             env_name=str(record["env_name"]),
                             action_count=action_count,
                             config=config,
                             train_seed=int(record["train_seed"]),
                             q_table=q_table)
    except (KeyError, TypeError, ValueError, IndexError,
            ValidationError) as e:
        raise AgentFormatError(f"malformed agent record: {e}") from e

    for row in q_table.values():
        if not np.all(np.isfinite(row)):
            raise AgentFormatError(f"{agent.agent_id}: non-finite Q value")
        row.flags.writeable = False

    unknown_env = not is_registered(agent.env_name)
    if unknown_env:
        logger.warning("agent %s refers to unregistered environment %r",
                       agent.agent_id, agent.env_name)
    return LoadedAgent(agent, unknown_env)


def write_agent(agent: TrainedAgent, path: str | Path) -> None:
    write_json_file(path, save_agent(agent))


def read_agent(path: str | Path) -> LoadedAgent:
    try:
        record = read_json_file(path)
    except ValueError as e:
        raise AgentFormatError(f"{path}: {e}") from e
    return load_agent(record)
