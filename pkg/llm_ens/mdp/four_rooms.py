from __future__ import annotations

from .environment import Environment
from .types import EnvSpec, StateObs

UP, DOWN, LEFT, RIGHT = range(4)
MOVES = {UP: (-1, 0), DOWN: (1, 0), LEFT: (0, -1), RIGHT: (0, 1)}

SIZE = 9
WALL_LINE = 4
DOORWAYS = frozenset({(4, 2), (2, 4), (4, 6), (6, 4)})
START = (1, 1)
ABSENT = SIZE * SIZE
RADIX = ABSENT + 1
PELLET_SLOTS = 4

ROOM_ROWS = {1: (1, 2, 3), 2: (1, 2, 3), 3: (5, 6, 7), 4: (5, 6, 7)}
ROOM_COLS = {1: (1, 2, 3), 2: (5, 6, 7), 3: (1, 2, 3), 4: (5, 6, 7)}
OPPOSITE_ROOM = {1: 4, 2: 3, 3: 2, 4: 1}

FOUR_ROOMS_FORAGE = EnvSpec(
    name="four-rooms-forage",
    action_count=4,
    action_names=("UP", "DOWN", "LEFT", "RIGHT"),
    task_details=(
        "forages in a 9x9 grid split by walls into four rooms joined by "
        "one-cell doorways, where every room holds a pellet and a hazard "
        "wanders through the two bottom rooms"),
    action_details=(
        "discrete with 4 actions, UP (0), DOWN (1), LEFT (2) and RIGHT (3), "
        "and moving into a wall leaves the agent in place"),
    reward_details=(
        "+1 for eating a pellet, after which the pellet reappears in the "
        "diagonally opposite room, and -1 for touching the hazard"),
    end_conditions="100 steps have elapsed",
    goal_details=(
        "eat as many pellets as possible while staying away from the hazard"),
    max_steps=100,
    oracle_situation_count=4,
)


def cell_index(cell: tuple[int, int]) -> int:
    return cell[0] * SIZE + cell[1]


def index_cell(index: int) -> tuple[int, int]:
    return divmod(index, SIZE)


def is_wall(cell: tuple[int, int]) -> bool:
    row, col = cell
    if row in (0, SIZE - 1) or col in (0, SIZE - 1):
        return True
    if row == WALL_LINE or col == WALL_LINE:
        return cell not in DOORWAYS
    return False


def room_of(cell: tuple[int, int]) -> int:
    """Rooms 1..4 are top-left, top-right, bottom-left, bottom-right."""
    row, col = cell
    top = row < WALL_LINE
    left = col < WALL_LINE
    if top:
        return 1 if left else 2
    return 3 if left else 4


def room_cells(room: int) -> list[tuple[int, int]]:
    return [(r, c) for r in ROOM_ROWS[room] for c in ROOM_COLS[room]]


HAZARD_CELLS = frozenset(room_cells(3) + room_cells(4) + [(6, 4)])


def encode(agent, hazard, pellets) -> int:
    digits = [cell_index(agent),
              cell_index(hazard) if hazard is not None else ABSENT]
    slots = sorted(cell_index(p) for p in pellets)
    digits += slots + [ABSENT] * (PELLET_SLOTS - len(slots))
    state_id = 0
    for digit in digits:
        state_id = state_id * RADIX + digit
    return state_id


def decode(state_id: int):
    digits = []
    for _ in range(2 + PELLET_SLOTS):
        state_id, digit = divmod(state_id, RADIX)
        digits.append(digit)
    digits.reverse()
    agent = index_cell(digits[0])
    hazard = None if digits[1] == ABSENT else index_cell(digits[1])
    pellets = tuple(index_cell(d) for d in digits[2:] if d != ABSENT)
    return agent, hazard, pellets


class FourRoomsForage(Environment):
    """
    Four-room gridworld with one pellet per room and a hazard that
    random-walks through the bottom rooms.

    With `hazard=False` and `respawn=False` the dynamics no longer read the
    world RNG after `reset`, which is the fragment exact DP can solve.
    """

    spec = FOUR_ROOMS_FORAGE

    def __init__(self, hazard: bool = True, respawn: bool = True):
        super().__init__()
        self.hazard = hazard
        self.respawn = respawn

    def _initial_state_id(self) -> int:
        pellets = []
        for room in (1, 2, 3, 4):
            free = [c for c in room_cells(room) if c != START]
            pellets.append(free[self._world_rng.integers(len(free))])

        hazard = None
        if self.hazard:
            free = sorted(HAZARD_CELLS - set(pellets))
            hazard = free[self._world_rng.integers(len(free))]

        return encode(START, hazard, pellets)

    def is_deterministic(self):
        return not self.hazard and not self.respawn

    def is_terminal(self, state_id):
        return False

    def _transition(self, state_id, action):
        agent, hazard, pellets = decode(state_id)
        dr, dc = MOVES[action]
        target = (agent[0] + dr, agent[1] + dc)
        if not is_wall(target):
            agent = target

        gain = 0
        pellets = list(pellets)
        if agent in pellets:
            pellets.remove(agent)
            gain = 1
            if self.respawn:
                room = OPPOSITE_ROOM[room_of(agent)]
                free = [
                    c for c in room_cells(room)
                    if c != agent and c != hazard and c not in pellets
                ]
                pellets.append(free[self._world_rng.integers(len(free))])

        if hazard is not None:
            options = [hazard] + [(hazard[0] + hr, hazard[1] + hc)
                                  for hr, hc in MOVES.values()]
            options = [c for c in options if c in HAZARD_CELLS]
            hazard = options[self._world_rng.integers(len(options))]

        contact = 1 if hazard is not None and hazard == agent else 0
        return encode(agent, hazard, pellets), float(gain - contact)

    def render_text(self, state: StateObs) -> str:
        agent, hazard, pellets = decode(state.state_id)
        rows = []
        for r in range(SIZE):
            line = []
            for c in range(SIZE):
                cell = (r, c)
                if cell == agent:
                    line.append("A")
                elif cell == hazard:
                    line.append("X")
                elif cell in pellets:
                    line.append("o")
                elif is_wall(cell):
                    line.append("#")
                else:
                    line.append(".")
            rows.append("".join(line))
        rows.append(f"step {state.step_index}/{self.spec.max_steps}")
        return "\n".join(rows)

    def oracle_situation(self, state: StateObs) -> int:
        agent, _, _ = decode(state.state_id)
        return room_of(agent)

    def oracle_situations(self):
        return [
            ("Top-left room", "the agent is in the top-left room, "
             "where every episode starts"),
            ("Top-right room", "the agent is in the top-right room, "
             "away from the hazard"),
            ("Bottom-left room", "the agent is in the bottom-left room, "
             "which the hazard can enter"),
            ("Bottom-right room", "the agent is in the bottom-right room, "
             "which the hazard can enter"),
        ]
