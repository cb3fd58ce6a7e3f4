from .json_io import canonical_json, read_json_file, write_json_file
from .seeding import derive_seed, make_rng

__all__ = [
    "canonical_json",
    "derive_seed",
    "make_rng",
    "read_json_file",
    "write_json_file",
]
