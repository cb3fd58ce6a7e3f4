from .catalog import (CatalogSource, Situation, SituationCatalog,
                      load_catalog, oracle_catalog, save_catalog)
from .categorizers import (Categorizer, CategorizerConfig, LLMCategorizer,
                           OracleCategorizer, generate_situations,
                           oracle_categorize, should_categorize)
from .parsers import parse_output_format_1, parse_output_format_2
from .prompts import (OUTPUT_FORMAT_1, OUTPUT_FORMAT_2, PromptTemplate,
                      build_situation_generation_prompt,
                      build_state_categorization_prompt,
                      build_task_description, format_generated_situations)

__all__ = [
    "CatalogSource",
    "Categorizer",
    "CategorizerConfig",
    "LLMCategorizer",
    "OUTPUT_FORMAT_1",
    "OUTPUT_FORMAT_2",
    "OracleCategorizer",
    "PromptTemplate",
    "Situation",
    "SituationCatalog",
    "build_situation_generation_prompt",
    "build_state_categorization_prompt",
    "build_task_description",
    "format_generated_situations",
    "generate_situations",
    "load_catalog",
    "oracle_catalog",
    "oracle_categorize",
    "parse_output_format_1",
    "parse_output_format_2",
    "save_catalog",
    "should_categorize",
]
