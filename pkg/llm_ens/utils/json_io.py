import json
from pathlib import Path
from typing import Any


def read_json_file(file_name: str | Path) -> Any:
    """
    Read a JSON file and return its decoded contents.
    """
    try:
        with open(file_name, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise FileNotFoundError(f"File {file_name} not found")


def write_json_file(file_name: str | Path, data: Any) -> None:
    """
    Write `data` as indented, key-sorted JSON so repeated writes are
    byte-identical.
    """
    Path(file_name).parent.mkdir(parents=True, exist_ok=True)
    with open(file_name, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False)
