from pathlib import Path

import pytest

from llm_ens.agents import constant_action_agent
from llm_ens.mdp import FORWARD, JUMP, FourRoomsForage, TwoZoneCorridor
from llm_ens.situations import oracle_catalog

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def corridor():
    return TwoZoneCorridor()


@pytest.fixture
def four_rooms():
    return FourRoomsForage()


@pytest.fixture
def forward_agent(corridor):
    return constant_action_agent(corridor, FORWARD)


@pytest.fixture
def jump_agent(corridor):
    return constant_action_agent(corridor, JUMP)


@pytest.fixture
def corridor_catalog(corridor):
    return oracle_catalog(corridor)


@pytest.fixture(autouse=True)
def _no_api_key(monkeypatch):
    monkeypatch.delenv("LLM_ENS_API_KEY", raising=False)
