from pydantic import BaseModel, ConfigDict, Field, model_validator


class AgentConfig(BaseModel):
    """Tabular Q-learning hyperparameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    learning_rate: float = Field(0.1, gt=0.0, le=1.0)
    gamma: float = Field(0.99, ge=0.0, le=1.0)
    epsilon_start: float = Field(1.0, ge=0.0, le=1.0)
    epsilon_min: float = Field(0.1, ge=0.0, le=1.0)
    epsilon_decay_per_step: float = Field(0.99999, gt=0.0, le=1.0)
    training_episodes: int = Field(5000, ge=0)

    @model_validator(mode="after")
    def _check_epsilon_schedule(self):
        if self.epsilon_min > self.epsilon_start:
            raise ValueError("epsilon_min must not exceed epsilon_start")
        return self
