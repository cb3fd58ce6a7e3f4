class LLMEnsError(Exception):
    """Base class of every error raised by llm_ens."""


# environments


class UnknownEnvironmentError(LLMEnsError, ValueError):

    def __init__(self, name: str):
        super().__init__(f"Unknown environment {name!r}")
        self.name = name


class EpisodeFinishedError(LLMEnsError, ValueError):
    pass


class InvalidActionError(LLMEnsError, ValueError):
    pass


class UnsupportedDynamicsError(LLMEnsError, ValueError):
    pass


# agents and combiners


class AgentFormatError(LLMEnsError, ValueError):
    pass


class AgentEnvironmentMismatchError(LLMEnsError, ValueError):

    def __init__(self, agent_id: str, agent_env: str, env_name: str):
        super().__init__(
            f"Agent {agent_id!r} was trained on {agent_env!r}, not {env_name!r}")
        self.agent_id = agent_id


class UnknownCombinerError(LLMEnsError, ValueError):

    def __init__(self, name: str):
        super().__init__(f"Unknown combiner {name!r}")
        self.name = name


# situations


class PromptFieldError(LLMEnsError, ValueError):
    pass


class CatalogParseError(LLMEnsError, ValueError):
    pass


class CategorizationParseError(LLMEnsError, ValueError):
    pass


class SituationOutOfRangeError(LLMEnsError, ValueError):

    def __init__(self, situation_id: int, count: int):
        super().__init__(
            f"Situation {situation_id} is outside 1..{count}")
        self.situation_id = situation_id
        self.count = count


class CategorizerError(LLMEnsError, RuntimeError):
    pass


# gateway


class GatewayError(LLMEnsError, RuntimeError):
    pass


class TransientGatewayError(GatewayError):
    """A 429, a 5xx or a timeout; retried by the gateway."""


class GatewayHTTPError(GatewayError):

    def __init__(self, status_code: int, body: str = ""):
        super().__init__(f"Endpoint answered HTTP {status_code}: {body[:200]}")
        self.status_code = status_code


class RetriesExhaustedError(GatewayError):
    pass


class MalformedResponseError(GatewayError):
    pass


class MissingCredentialError(GatewayError):
    pass


class ScriptExhaustedError(GatewayError):
    pass


# reward profiles and runtime


class ProfileFormatError(LLMEnsError, ValueError):
    pass


class StaleProfileError(LLMEnsError, ValueError):
    pass


class EpisodeAbortedError(LLMEnsError, RuntimeError):

    def __init__(self, step_index: int, cause: Exception):
        super().__init__(f"Episode aborted at step {step_index}: {cause}")
        self.step_index = step_index
        self.cause = cause


# harness


class ExperimentStageError(LLMEnsError, RuntimeError):

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"Stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


class ReportError(LLMEnsError, OSError):
    pass


class AuditMismatchError(LLMEnsError, ValueError):
    pass


class PlanError(LLMEnsError, ValueError):
    pass
