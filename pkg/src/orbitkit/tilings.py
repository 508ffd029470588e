"""SW-deterministic Wang tile sets as automata, and non-y-recurrent rectangles.

A tile (N, W, S, E) is the transition W --S/N--> E.  A row of tiles is one
state (the west color) reading the south colors and writing the north
colors, so stacked rows are the orbit of the bottom word.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .automaton import Automaton, require_finite
from .errors import InvariantViolation, OrbitkitError, ParseError
from .orbits import GenLang, OrbitPath, orbit_path_search, orbital_transducer


class NotSWDeterministic(OrbitkitError):
    def __init__(self, t1, t2):
        self.witness = (t1, t2)
        super().__init__(f"tiles {t1} and {t2} share south and west colors")


@dataclass(frozen=True)
class TileSet:
    colors: tuple
    tiles: tuple                    # (N, W, S, E)
    name: str = "tiles"
    state_colors: tuple = None      # colors used on W/E sides, if known
    letter_colors: tuple = None     # colors used on S/N sides, if known

    def sw_witness(self):
        seen = {}
        for t in self.tiles:
            key = (t[2], t[1])
            if key in seen:
                return seen[key], t
            seen[key] = t
        return None

    @property
    def sw_deterministic(self) -> bool:
        return self.sw_witness() is None


def tileset_to_automaton(w: TileSet) -> Automaton:
    wit = w.sw_witness()
    if wit is not None:
        raise NotSWDeterministic(*wit)
    states = w.state_colors or w.colors
    letters = w.letter_colors or w.colors
    trans = {(W, S): (N, E) for N, W, S, E in w.tiles}
    return Automaton(w.name, letters, states, trans)


def automaton_to_tileset(a: Automaton) -> TileSet:
    """One tile per transition.  State and letter colors get "q:"/"a:"
    prefixes only when a name is used for both."""
    require_finite(a, "automaton_to_tileset")
    clash = bool(set(a.states) & set(a.alphabet))
    sq = (lambda q: "q:" + q) if clash else (lambda q: q)
    sa = (lambda x: "a:" + x) if clash else (lambda x: x)
    states = tuple(map(sq, a.states))
    letters = tuple(map(sa, a.alphabet))
    tiles = tuple((sa(y), sq(q), sa(x), sq(p)) for q, x, y, p in a.triples())
    return TileSet(states + letters, tiles, a.name, states, letters)


# --------------------------------------------------------------------------
# file format

def parse_tiles(text: str) -> TileSet:
    name = "tiles"
    colors = states = letters = None
    tiles = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "tileset":
            name = rest[0] if rest else name
        elif head == "colors":
            colors = tuple(rest)
        elif head == "states":
            states = tuple(rest)
        elif head == "letters":
            letters = tuple(rest)
        elif head == "tile":
            if len(rest) != 4:
                raise ParseError("expected 'tile <N> <W> <S> <E>'", lineno)
            tiles.append(tuple(rest))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if not colors:
        raise ParseError("missing colors")
    cset = set(colors)
    for t in tiles:
        for c in t:
            if c not in cset:
                raise ParseError(f"unknown color {c!r} in tile {t}")
    return TileSet(colors, tuple(tiles), name, states, letters)


def serialize_tiles(w: TileSet) -> str:
    lines = [f"tileset {w.name}", "colors " + " ".join(w.colors)]
    if w.state_colors:
        lines.append("states " + " ".join(w.state_colors))
    if w.letter_colors:
        lines.append("letters " + " ".join(w.letter_colors))
    lines += ["tile " + " ".join(t) for t in w.tiles]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# rectangles

@dataclass(frozen=True)
class RectTiling:
    grid: tuple             # grid[y][x] = (N, W, S, E); y = 0 is the bottom row
    rows: tuple             # horizontal color sequences h_0 .. h_{Y+1}

    @property
    def width(self) -> int:
        return len(self.grid[0])

    @property
    def height(self) -> int:
        return len(self.grid)

    def restrict(self, height: int) -> "RectTiling":
        return RectTiling(self.grid[:height], self.rows[:height + 1])

    def render(self) -> str:
        out = []
        for row in reversed(self.grid):
            out.append(" ".join(f"{N}/{W}·{S}/{E}" for N, W, S, E in row))
        out.append("h: " + " | ".join(" ".join(h) for h in self.rows))
        return "\n".join(out)


def validate_tiling(w: TileSet, t: RectTiling) -> list:
    """Independent check; returns a list of problems (empty when valid)."""
    problems = []
    tiles = set(w.tiles)
    H, X = t.height, t.width
    if len(t.rows) != H + 1:
        problems.append("wrong number of horizontal sequences")
    for y in range(H):
        if len(t.grid[y]) != X:
            problems.append(f"row {y} has wrong width")
            continue
        for x in range(X):
            tile = t.grid[y][x]
            if tile not in tiles:
                problems.append(f"({x},{y}) is not a tile")
            if x + 1 < X and tile[3] != t.grid[y][x + 1][1]:
                problems.append(f"E/W mismatch at ({x},{y})")
            if y + 1 < H and tile[0] != t.grid[y + 1][x][2]:
                problems.append(f"N/S mismatch at ({x},{y})")
        if tuple(c[2] for c in t.grid[y]) != tuple(t.rows[y]):
            problems.append(f"h_{y} does not match row {y}")
    if H and tuple(c[0] for c in t.grid[H - 1]) != tuple(t.rows[H]):
        problems.append(f"h_{H} does not match the top row")
    if len(set(map(tuple, t.rows))) != len(t.rows):
        problems.append("horizontal sequences are not pairwise distinct")
    return problems


@dataclass(frozen=True)
class NotFoundWithinBudget:
    width_budget: int


def _build(a: Automaton, path: OrbitPath, blocks) -> RectTiling:
    grid = []
    for y, f in enumerate(path.labels):
        state = blocks[f][0]
        row = []
        for c in path.nodes[y]:
            out, nxt = a.step(state, c)
            row.append((out, state, c, nxt))
            state = nxt
        grid.append(tuple(row))
    return RectTiling(tuple(grid), tuple(path.nodes))


def find_non_y_recurrent(w: TileSet, Y: int, width_budget: int, node_budget: int = 10**6):
    """Rectangle of height Y+1 with pairwise distinct horizontal sequences.

    Bottom words are tried by ascending length, then lexicographically; the
    rows above are a simple path of length Y+1 in the orbital graph.
    """
    a = tileset_to_automaton(w)
    lang = GenLang.full()
    blocks = lang.blocks(a)
    for width in range(1, width_budget + 1):
        for u in product(a.alphabet, repeat=width):
            if len(orbital_transducer(a, lang, u, node_limit=Y + 2)) < Y + 2:
                continue
            p = orbit_path_search(a, lang, u, Y + 1, node_budget)
            if isinstance(p, OrbitPath):
                t = _build(a, p, blocks)
                problems = validate_tiling(w, t)
                if problems:
                    raise InvariantViolation("; ".join(problems))
                return t
    return NotFoundWithinBudget(width_budget)
