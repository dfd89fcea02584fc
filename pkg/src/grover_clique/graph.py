"""Undirected simple graphs, DIMACS I/O and the brute-force clique oracle.

Vertices are labelled ``1..n`` everywhere a user can see them (DIMACS files,
``Graph.edges``, reports).  Candidate cliques are bitstrings ``x_1 x_2 ... x_n``
where ``x_k == "1"`` selects vertex ``k``.  When a bitstring is read as an
integer index, ``x_1`` is the most significant bit, so vertex ``v`` lives at
bit position ``n - v``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import DomainError, ParseError, ResourceLimitError

#: Largest n accepted by exhaustive enumeration.
BRUTEFORCE_MAX_N = 25
#: Largest n for which a full legality table (2**n booleans) is built.
TABLE_MAX_N = 26


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``1..n``.

    ``edges`` is canonicalised on construction to a frozenset of ``(i, j)``
    pairs with ``i < j``; the input may list pairs in either orientation and
    may repeat them.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise DomainError(f"vertex count must be a non-negative integer, got {self.n!r}")
        canon = set()
        for pair in self.edges:
            i, j = (int(v) for v in pair)
            if i == j:
                raise DomainError(f"self-loop on vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise DomainError(f"edge ({i}, {j}) outside vertex range 1..{self.n}")
            canon.add((min(i, j), max(i, j)))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", frozenset(canon))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        """Edges in lexicographic order."""
        return sorted(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Boolean ``n x n`` adjacency matrix, 0-based."""
        adj = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges:
            adj[i - 1, j - 1] = adj[j - 1, i - 1] = True
        return adj

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(1, n + 1), 2)))


def complement(g: Graph) -> Graph:
    """Same vertex set, exactly the vertex pairs absent from ``g``."""
    missing = (p for p in combinations(range(1, g.n + 1), 2) if p not in g.edges)
    return Graph(g.n, frozenset(missing))


def random_graph(n: int, p: float = 0.5, seed=None) -> Graph:
    """Erdos-Renyi G(n, p) graph drawn with ``numpy.random.default_rng(seed)``."""
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(1, n + 1), 2))
    keep = rng.random(len(pairs)) < p
    return Graph(n, frozenset(pr for pr, k in zip(pairs, keep) if k))


# -- DIMACS ---------------------------------------------------------------


def parse_dimacs(text: str) -> Graph:
    """Parse a DIMACS edge document.

    Recognised lines are ``c ...`` comments, a single ``p edge n m`` header and
    ``e i j`` edges with 1-based vertex labels.  Repeated edges collapse to one.
    The header edge count must match either the number of ``e`` lines or the
    number of distinct edges.

    Raises:
        ParseError: naming the offending line.
    """
    n = None
    declared = 0
    header_lineno = header_line = None
    e_lines = 0
    pairs = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        tag = tokens[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno, line)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise ParseError("expected 'p edge <n> <m>'", lineno, line)
            try:
                n, declared = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise ParseError("non-integer vertex or edge count", lineno, line) from None
            if n < 0 or declared < 0:
                raise ParseError("negative vertex or edge count", lineno, line)
            header_lineno, header_line = lineno, line
        elif tag == "e":
            if n is None:
                raise ParseError("edge line before problem line", lineno, line)
            if len(tokens) != 3:
                raise ParseError("expected 'e <i> <j>'", lineno, line)
            try:
                i, j = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise ParseError("non-integer vertex label", lineno, line) from None
            if not (1 <= i <= n and 1 <= j <= n):
                raise ParseError(f"vertex label outside 1..{n}", lineno, line)
            if i == j:
                raise ParseError("self-loop", lineno, line)
            e_lines += 1
            pairs.add((min(i, j), max(i, j)))
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno, line)
    if n is None:
        raise ParseError("missing 'p edge <n> <m>' problem line")
    if declared not in (e_lines, len(pairs)):
        raise ParseError(
            f"header declares {declared} edges but {e_lines} edge lines "
            f"({len(pairs)} distinct) were read",
            header_lineno,
            header_line,
        )
    return Graph(n, frozenset(pairs))


def to_dimacs(g: Graph, comment: str | None = None) -> str:
    lines = [f"c {c}" for c in comment.splitlines()] if comment else []
    lines.append(f"p edge {g.n} {g.num_edges}")
    lines.extend(f"e {i} {j}" for i, j in g.sorted_edges())
    return "\n".join(lines) + "\n"


# -- candidate cliques ------------------------------------------------------


def _check_bits(g: Graph, x) -> str:
    if not isinstance(x, str):
        x = "".join(str(int(b)) for b in x)
    if len(x) != g.n or set(x) - {"0", "1"}:
        raise DomainError(f"expected a {g.n}-character 0/1 string, got {x!r}")
    return x


def weight(x: str) -> int:
    """Hamming weight of a bitstring."""
    return x.count("1")


def bits_to_index(x: str) -> int:
    return int(x, 2) if x else 0


def index_to_bits(index: int, n: int) -> str:
    return format(index, f"0{n}b") if n else ""


def is_legal_clique(g: Graph, x) -> bool:
    """True when no complement edge has both endpoints selected by ``x``."""
    x = _check_bits(g, x)
    for i, j in complement(g).edges:
        if x[i - 1] == "1" and x[j - 1] == "1":
            return False
    return True


def is_clique(g: Graph, x) -> bool:
    """True when every pair of vertices selected by ``x`` is adjacent in ``g``."""
    x = _check_bits(g, x)
    chosen = [k + 1 for k, b in enumerate(x) if b == "1"]
    return all(g.has_edge(i, j) for i, j in combinations(chosen, 2))


def hamming_weights(n: int) -> np.ndarray:
    """Weights of the basis indices ``0 .. 2**n - 1`` as ``uint8``."""
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.uint8)


def legal_table(g: Graph) -> np.ndarray:
    """Boolean array over all ``2**n`` candidate indices, True where legal."""
    if g.n > TABLE_MAX_N:
        raise ResourceLimitError(f"legality table for n={g.n} exceeds guard n <= {TABLE_MAX_N}")
    idx = np.arange(1 << g.n, dtype=np.uint32)
    legal = np.ones(idx.shape, dtype=bool)
    for i, j in complement(g).edges:
        both = (idx >> (g.n - i)) & (idx >> (g.n - j)) & 1
        legal &= both == 0
    return legal


def target_table(g: Graph, level: int) -> np.ndarray:
    """Boolean array, True on legal candidates of Hamming weight ``level``."""
    if not 0 <= level <= g.n:
        raise DomainError(f"level {level} outside 0..{g.n}")
    return legal_table(g) & (hamming_weights(g.n) == level)


def _guard_enumeration(g: Graph):
    if g.n == 0:
        raise DomainError("graph has no vertices")
    if g.n > BRUTEFORCE_MAX_N:
        raise ResourceLimitError(f"enumerating 2**{g.n} subsets exceeds guard n <= {BRUTEFORCE_MAX_N}")


def max_cliques_bruteforce(g: Graph) -> tuple[int, frozenset]:
    """Size of the largest clique and every clique of that size, by enumeration."""
    _guard_enumeration(g)
    legal = legal_table(g)
    weights = hamming_weights(g.n)
    size = int(weights[legal].max())
    witnesses = np.flatnonzero(legal & (weights == size))
    return size, frozenset(index_to_bits(int(w), g.n) for w in witnesses)


def count_solutions(g: Graph, i: int) -> int:
    """Number of legal cliques of Hamming weight exactly ``i``."""
    if not 0 <= i <= g.n:
        raise DomainError(f"level {i} outside 0..{g.n}")
    _guard_enumeration(g)
    return int(np.count_nonzero(target_table(g, i)))


# -- named instances -----------------------------------------------------------

# Six vertices, eleven edges, unique maximum clique {1, 2, 3, 4}; vertices 1
# and 5 are non-adjacent.
_FIG1_MISSING = {(1, 5), (2, 6), (3, 5), (4, 6)}

EXAMPLES = {
    "g21": Graph(2, frozenset({(1, 2)})),
    "g32": Graph(3, frozenset({(1, 2), (2, 3)})),
    "fig1": Graph(6, frozenset(p for p in combinations(range(1, 7), 2) if p not in _FIG1_MISSING)),
}


def example_graph(name: str) -> Graph:
    try:
        return EXAMPLES[name]
    except KeyError:
        raise DomainError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None


def iter_all_graphs(n: int) -> Iterable[Graph]:
    """Every labelled simple graph on ``n`` vertices (``2**(n(n-1)/2)`` of them)."""
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))
