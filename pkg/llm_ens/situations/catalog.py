from __future__ import annotations

import hashlib
from enum import Enum
from pathlib import Path

from pydantic import (BaseModel, ConfigDict, Field, ValidationError,
                      model_validator)

from llm_ens.errors import CatalogParseError
from llm_ens.mdp import Environment
from llm_ens.utils.json_io import canonical_json, read_json_file, write_json_file


class CatalogSource(str, Enum):
    LLM = "llm-generated"
    ORACLE = "oracle"
    FILE = "file"


class Situation(BaseModel):
    model_config = ConfigDict(frozen=True, str_strip_whitespace=True)

    situation_id: int = Field(ge=1)
    name: str = Field(min_length=1)
    description: str = Field(min_length=1)


class SituationCatalog(BaseModel):
    """Ordered situations of one environment, ids exactly 1..N."""

    model_config = ConfigDict(frozen=True)

    env_name: str
    situations: tuple[Situation, ...]
    source: CatalogSource = CatalogSource.FILE

    @model_validator(mode="after")
    def _check_situations(self):
        if len(self.situations) < 2:
            raise ValueError("a catalog needs at least 2 situations")
        ids = [s.situation_id for s in self.situations]
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError(f"situation ids must be 1..{len(ids)}, got {ids}")
        names = [s.name for s in self.situations]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate situation names in {names}")
        return self

    def __len__(self):
        return len(self.situations)

    @property
    def count(self) -> int:
        return len(self.situations)

    def __contains__(self, situation_id: int) -> bool:
        return 1 <= situation_id <= len(self.situations)

    def get(self, situation_id: int) -> Situation:
        return self.situations[situation_id - 1]

    @classmethod
    def from_pairs(cls, env_name: str, pairs, source: CatalogSource):
        return cls(env_name=env_name,
                   situations=tuple(
                       Situation(situation_id=i, name=name, description=desc)
                       for i, (name, desc) in enumerate(pairs, start=1)),
                   source=source)

    def to_output_format_1(self) -> str:
        return "{" + ", ".join(f"{s.name}: {s.description}"
                               for s in self.situations) + "}"

    def catalog_hash(self) -> str:
        """Hash of the environment name and situations; ignores `source`."""
        content = canonical_json({
            "env_name": self.env_name,
            "situations": [s.model_dump() for s in self.situations],
        })
        return hashlib.sha256(content.encode("utf-8")).hexdigest()


def oracle_catalog(env: Environment) -> SituationCatalog:
    return SituationCatalog.from_pairs(env.name, env.oracle_situations(),
                                       CatalogSource.ORACLE)


def save_catalog(catalog: SituationCatalog, path: str | Path) -> None:
    write_json_file(path, catalog.model_dump(mode="json"))


def load_catalog(path: str | Path) -> SituationCatalog:
    try:
        return SituationCatalog.model_validate(read_json_file(path))
    except (ValidationError, ValueError) as e:
        raise CatalogParseError(f"{path}: invalid catalog: {e}") from e
