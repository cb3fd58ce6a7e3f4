from .distribution import (RewardDistribution, SegmentRecord, load_profile,
                           merge, save_profile, update)
from .profiler import profile_agent, profile_agents

__all__ = [
    "RewardDistribution",
    "SegmentRecord",
    "load_profile",
    "merge",
    "profile_agent",
    "profile_agents",
    "save_profile",
    "update",
]
