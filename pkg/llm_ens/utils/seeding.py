import numpy as np

# stream ids keep the world, the policy and training exploration independent
WORLD_STREAM = 0
POLICY_STREAM = 1
TRAINING_STREAM = 2
EPISODE_STREAM = 3


def make_rng(seed: int, stream: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    return np.random.default_rng(np.random.SeedSequence([seed, stream]))


def derive_seed(*parts: int) -> int:
    """Derive a non-negative 32-bit seed from a tuple of non-negative ints."""
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])
