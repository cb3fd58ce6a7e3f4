from __future__ import annotations

import logging
from typing import Protocol

from pydantic import BaseModel, ConfigDict, Field

from llm_ens.errors import (CategorizationParseError, CategorizerError,
                            GatewayError, SituationOutOfRangeError)
from llm_ens.gateway import ChatRequest, LLMGateway
from llm_ens.mdp import Environment, StateObs

from .catalog import SituationCatalog
from .parsers import parse_output_format_1, parse_output_format_2
from .prompts import (build_situation_generation_prompt,
                      build_state_categorization_prompt,
                      build_task_description)

logger = logging.getLogger(__name__)


class CategorizerConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    cadence: int = Field(30, ge=1)
    fallback_situation: int | None = Field(None, ge=1)


def should_categorize(step_index: int, cadence: int) -> bool:
    return step_index % cadence == 0


class Categorizer(Protocol):
    call_count: int

    def categorize(self, state: StateObs) -> int:
        ...


def oracle_categorize(env: Environment, state: StateObs) -> int:
    return env.oracle_situation(state)


class OracleCategorizer:
    """Ground-truth situations straight from the environment."""

    def __init__(self, env: Environment):
        self.env = env
        self.call_count = 0

    def categorize(self, state: StateObs) -> int:
        self.call_count += 1
        return oracle_categorize(self.env, state)


class LLMCategorizer:
    """
    Asks the gateway which catalog situation a rendered state belongs to.
    Unparsable or out-of-range answers map to `fallback_situation` when one
    is configured.
    """

    def __init__(self,
                 gateway: LLMGateway,
                 catalog: SituationCatalog,
                 env: Environment,
                 config: CategorizerConfig | None = None,
                 modality: str = "image"):
        self.gateway = gateway
        self.catalog = catalog
        self.env = env
        self.config = config or CategorizerConfig()
        if (self.config.fallback_situation is not None
                and self.config.fallback_situation not in catalog):
            raise SituationOutOfRangeError(self.config.fallback_situation,
                                           catalog.count)
        self.system_prompt = build_state_categorization_prompt(
            catalog, build_task_description(env.spec), env.name, modality)
        self.call_count = 0
        self.last_reason = ""

    def categorize(self, state: StateObs) -> int:
        self.call_count += 1
        request = ChatRequest.build(self.gateway.config, [
            ("system", self.system_prompt),
            ("user", self.env.render_text(state)),
        ])
        try:
            answer = self.gateway.complete(request)
        except GatewayError as e:
            raise CategorizerError(f"categorization call failed: {e}") from e

        try:
            situation_id, self.last_reason = parse_output_format_2(answer)
            if situation_id not in self.catalog:
                raise SituationOutOfRangeError(situation_id,
                                               self.catalog.count)
        except (CategorizationParseError, SituationOutOfRangeError) as e:
            if self.config.fallback_situation is None:
                raise CategorizerError(str(e)) from e
            logger.warning("%s; using fallback situation %d", e,
                           self.config.fallback_situation)
            return self.config.fallback_situation
        return situation_id


def generate_situations(env: Environment,
                        gateway: LLMGateway) -> SituationCatalog:
    request = ChatRequest.build(
        gateway.config,
        [("user", build_situation_generation_prompt(env.spec))])
    catalog = parse_output_format_1(gateway.complete(request), env.name)
    logger.info("%s: generated %d situations: %s", env.name, catalog.count,
                ", ".join(s.name for s in catalog.situations))
    return catalog
