"""Prompt templates for situation generation and state categorization."""
from __future__ import annotations

from string import Formatter

from llm_ens.errors import PromptFieldError
from llm_ens.mdp import EnvSpec

from .catalog import SituationCatalog

TASK_DESCRIPTION = (
    "The task is a reinforcement learning problem where an agent "
    "{TaskDetails}. The action space is {ActionDetails}. The agent receives "
    "a reward of {RewardDetails}. The game ends when {EndConditions}. The "
    "goal is to {GoalDetails}.")

SITUATION_GENERATION = (
    "You are classifying all states in the Atari {EnvironmentName} "
    "environment into a few situations. {TaskDescription}. Please provide "
    "your classification and a brief description of it. Only present the "
    "classification method you consider most reasonable, using as few "
    "categories as possible. {OutputFormat1}.")

OUTPUT_FORMAT_1 = (
    "Your output format should be: {[situation 1]: [description 1], "
    "[situation 2]: [description 2], ...}.")

STATE_CATEGORIZATION = (
    "In the Atari {EnvironmentName} environment, many different states may "
    "occur. {TaskDescription}. The states faced by the agent can be divided "
    "into {SituationNum} general categories, which are listed as follows: "
    "{GeneratedSituations}. Please classify the input {Modality} into one of "
    "these situations and attach a brief reason for your conclusion. "
    "{OutputFormat2}.")

OUTPUT_FORMAT_2 = "Use the output format: {[situation ID], [reason]}."


class PromptTemplate:
    """Template with {Field} placeholders; every field must be non-empty."""

    def __init__(self, template: str) -> None:
        self.template = template
        self._formatter = Formatter()

    def get_fields(self) -> list[str]:
        return [
            field_name
            for _, field_name, _, _ in self._formatter.parse(self.template)
            if field_name is not None
        ]

    def render(self, data: dict[str, str]) -> str:
        for name in self.get_fields():
            value = data.get(name)
            if value is None:
                raise PromptFieldError(f"missing prompt field {{{name}}}")
            if not str(value).strip():
                raise PromptFieldError(f"empty prompt field {{{name}}}")
        return self.template.format(**data)


def _sentence(text: str) -> str:
    # the templates supply the closing period themselves
    return text[:-1] if text.endswith(".") else text


def build_task_description(spec: EnvSpec) -> str:
    return PromptTemplate(TASK_DESCRIPTION).render(spec.placeholders())


def build_situation_generation_prompt(spec: EnvSpec) -> str:
    return PromptTemplate(SITUATION_GENERATION).render({
        "EnvironmentName": spec.name,
        "TaskDescription": _sentence(build_task_description(spec)),
        "OutputFormat1": _sentence(OUTPUT_FORMAT_1),
    })


def format_generated_situations(catalog: SituationCatalog) -> str:
    return "; ".join(f"{s.situation_id}. {s.name}: {_sentence(s.description)}"
                     for s in catalog.situations)


def build_state_categorization_prompt(catalog: SituationCatalog,
                                      task_description: str,
                                      environment_name: str | None = None,
                                      modality: str = "image") -> str:
    """
    The state itself is not part of this prompt; callers send its text
    rendering as a separate user message.
    """
    return PromptTemplate(STATE_CATEGORIZATION).render({
        "EnvironmentName": environment_name or catalog.env_name,
        "TaskDescription": _sentence(task_description),
        "SituationNum": str(catalog.count),
        "GeneratedSituations": format_generated_situations(catalog),
        "Modality": modality,
        "OutputFormat2": _sentence(OUTPUT_FORMAT_2),
    })
