from .environment import Environment
from .types import EnvSpec, StateObs

FORWARD = 0
JUMP = 1

ZONE_A = range(0, 6)
ZONE_B = range(6, 11)
EXIT = 11

TWO_ZONE_CORRIDOR = EnvSpec(
    name="two-zone-corridor",
    action_count=2,
    action_names=("FORWARD", "JUMP"),
    task_details=(
        "walks along a corridor of twelve positions numbered 0 to 11, "
        "starting at position 0 and advancing exactly one position per step"),
    action_details=(
        "discrete with 2 actions, FORWARD (0) and JUMP (1), and both actions "
        "advance the agent by one position"),
    reward_details=(
        "+1 for FORWARD while in Zone A (positions 0 to 5), +1 for JUMP while "
        "in Zone B (positions 6 to 10), and 0 otherwise"),
    end_conditions="the agent reaches position 11 or 30 steps have elapsed",
    goal_details=(
        "collect as much reward as possible by choosing the action that suits "
        "the current zone"),
    max_steps=30,
    oracle_situation_count=2,
)


class TwoZoneCorridor(Environment):
    """
    Twelve positions in a row. Both actions advance, but only FORWARD pays in
    Zone A and only JUMP pays in Zone B, so each single-action policy is
    optimal in exactly one zone.
    """

    spec = TWO_ZONE_CORRIDOR

    def _initial_state_id(self) -> int:
        return 0

    def _transition(self, state_id, action):
        if state_id in ZONE_A:
            reward = 1.0 if action == FORWARD else 0.0
        elif state_id in ZONE_B:
            reward = 1.0 if action == JUMP else 0.0
        else:
            reward = 0.0
        return min(state_id + 1, EXIT), reward

    def is_terminal(self, state_id):
        return state_id >= EXIT

    def is_deterministic(self):
        return True

    def enumerable_states(self):
        return range(EXIT + 1)

    def render_text(self, state: StateObs) -> str:
        if state.state_id in ZONE_A:
            where = f"Zone A, position {state.state_id}"
        elif state.state_id in ZONE_B:
            where = f"Zone B, position {state.state_id}"
        else:
            where = f"the exit, position {state.state_id}"
        return (f"Two-zone corridor: the agent is in {where} of {EXIT} "
                f"(step {state.step_index} of {self.spec.max_steps}).")

    def oracle_situation(self, state: StateObs) -> int:
        return 1 if state.state_id <= ZONE_A[-1] else 2

    def oracle_situations(self):
        return [
            ("Zone A",
             "the agent is at positions 0 to 5, where FORWARD is rewarded"),
            ("Zone B",
             "the agent is at positions 6 to 11, where JUMP is rewarded"),
        ]
