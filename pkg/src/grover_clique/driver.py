"""Level-descending Grover search for a maximum clique.

For each candidate size ``i = n, n-1, ..., 1`` the search restarts from the
uniform superposition, runs some Grover rounds against the weight-``i``
oracle, measures the data register and checks the outcome classically.  The
first level that yields a verified clique gives the answer.

Two schedules pick the round count:

``known``
    ``M_i`` (number of weight-``i`` cliques) is taken from the brute-force
    counter and the optimal round count is used.  Levels with ``M_i = 0``
    are skipped and logged.
``unknown``
    The exponential schedule of Boyer, Brassard, Hoyer and Tapp: draw the
    round count uniformly from ``[0, lam)``, grow ``lam`` by 6/5 after each
    miss, and give up on the level once ``ceil(9.2 * sqrt(2**n))`` rounds
    have been spent.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DomainError, ResourceLimitError
from .graph import Graph, count_solutions, is_legal_clique, target_table, weight
from .simulator import (
    MAX_COMPILED_QUBITS,
    MAX_DENSE_QUBITS,
    Distribution,
    _to_distribution,
    compiled_amplitudes,
    dense_grover_run,
    sample_distribution,
)
from .circuit import layout

BACKENDS = ("dense", "compiled")
M_MODES = ("known", "unknown")
DEFAULT_SEED = 20180101
SCHEDULE_GROWTH = 6 / 5
SCHEDULE_BUDGET = 9.2


def iterations_for(N: int, M: int) -> int:
    """Round count maximising ``sin^2((2k+1) theta)`` with ``sin theta = sqrt(M/N)``."""
    if N < 1 or not 1 <= M <= N:
        raise DomainError(f"need 1 <= M <= N, got N={N}, M={M}")
    theta = math.asin(math.sqrt(M / N))
    return max(0, round(math.pi / (4 * theta) - 0.5))


def success_probability(N: int, M: int, k: int) -> float:
    theta = math.asin(math.sqrt(M / N))
    return math.sin((2 * k + 1) * theta) ** 2


def verify_candidate(g: Graph, x: str, level: int) -> bool:
    """True iff ``x`` selects exactly ``level`` vertices forming a clique."""
    if len(x) != g.n:
        raise DomainError(f"candidate {x!r} does not have {g.n} bits")
    return weight(x) == level and is_legal_clique(g, x)


@dataclass
class SolveConfig:
    backend: str = "compiled"
    m_mode: str = "known"
    attempts_per_level: int = 3
    seed: int | None = DEFAULT_SEED
    collect_witnesses: bool = True
    max_dense_qubits: int = MAX_DENSE_QUBITS
    max_compiled_qubits: int = MAX_COMPILED_QUBITS

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise DomainError(f"backend must be one of {BACKENDS}, got {self.backend!r}")
        if self.m_mode not in M_MODES:
            raise DomainError(f"m_mode must be one of {M_MODES}, got {self.m_mode!r}")
        if int(self.attempts_per_level) < 1:
            raise DomainError("attempts_per_level must be >= 1")


@dataclass
class LevelAttempt:
    level: int
    k: int | None
    sample: str | None
    verified: bool
    note: str = ""

    def to_line(self) -> str:
        k = "-" if self.k is None else self.k
        s = "-" if self.sample is None else self.sample
        line = f"level={self.level} k={k} sample={s} verified={str(self.verified).lower()}"
        return f"{line} note={self.note}" if self.note else line


@dataclass
class SolveResult:
    clique_size: int
    witnesses: list[str]
    trace: list[LevelAttempt] = field(default_factory=list)
    oracle_calls: int = 0
    measurements: int = 0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> SolveResult:
        doc = dict(doc)
        doc["trace"] = [LevelAttempt(**t) for t in doc.get("trace", [])]
        return cls(**doc)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> SolveResult:
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [
            f"clique_size {self.clique_size}",
            "witnesses " + " ".join(self.witnesses),
            f"oracle_calls {self.oracle_calls}",
            f"measurements {self.measurements}",
        ]
        lines.extend(t.to_line() for t in self.trace)
        return "\n".join(lines) + "\n"


class _LevelRunner:
    """Distribution after ``k`` rounds at one level, cached across attempts.

    Re-running from the uniform state for every attempt gives the same exact
    distribution, so it is computed once per ``k``.
    """

    def __init__(self, g: Graph, level: int, backend: str):
        self.g, self.level, self.backend = g, level, backend
        self._cache: dict[int, Distribution] = {}
        self._targets = target_table(g, level) if backend == "compiled" else None

    def distribution(self, k: int) -> Distribution:
        if k not in self._cache:
            if self.backend == "dense":
                self._cache[k] = dense_grover_run(self.g, self.level, k)
            else:
                for amps in compiled_amplitudes(self.g, self.level, k, self._targets):
                    pass
                self._cache[k] = _to_distribution(amps**2, self.g.n, tuple(range(self.g.n)))
        return self._cache[k]


def _check_guards(g: Graph, cfg: SolveConfig):
    if g.n < 1:
        raise DomainError("graph has no vertices")
    if cfg.backend == "dense":
        total = layout(g).total
        if total > min(cfg.max_dense_qubits, MAX_DENSE_QUBITS):
            raise ResourceLimitError(f"dense backend needs {total} qubits, guard is {cfg.max_dense_qubits}")
    elif g.n > min(cfg.max_compiled_qubits, MAX_COMPILED_QUBITS):
        raise ResourceLimitError(f"compiled backend guard is n <= {cfg.max_compiled_qubits}")


def solve(g: Graph, cfg: SolveConfig | None = None) -> SolveResult:
    """Find the maximum clique size of ``g`` and the witnesses measured for it.

    In known mode with ``collect_witnesses`` the level that first verifies
    still spends its remaining attempts, so distinct maximum cliques are
    gathered; otherwise the search stops at the first verified sample.
    """
    cfg = cfg or SolveConfig()
    _check_guards(g, cfg)
    rng = np.random.default_rng(cfg.seed)
    N = 1 << g.n
    trace: list[LevelAttempt] = []
    calls = measurements = 0

    for level in range(g.n, 0, -1):
        runner = _LevelRunner(g, level, cfg.backend)
        found: list[str] = []
        if cfg.m_mode == "known":
            M = count_solutions(g, level)
            if M == 0:
                trace.append(LevelAttempt(level, None, None, False, "skipped:M=0"))
                continue
            k = iterations_for(N, M)
            dist = runner.distribution(k)
            for _ in range(int(cfg.attempts_per_level)):
                x = sample_distribution(dist, rng)
                ok = verify_candidate(g, x, level)
                trace.append(LevelAttempt(level, k, x, ok))
                calls += k
                measurements += 1
                if ok:
                    found.append(x)
                    if not cfg.collect_witnesses:
                        break
        else:
            lam, spent = 1.0, 0
            budget = math.ceil(SCHEDULE_BUDGET * math.sqrt(N))
            cap = math.sqrt(N)
            while spent < budget:
                k = int(rng.integers(0, math.ceil(lam)))
                if k and spent + k > budget:
                    break
                x = sample_distribution(runner.distribution(k), rng)
                ok = verify_candidate(g, x, level)
                trace.append(LevelAttempt(level, k, x, ok))
                calls += k
                spent += max(k, 1)
                measurements += 1
                if ok:
                    found.append(x)
                    break
                lam = min(lam * SCHEDULE_GROWTH, cap)
        if found:
            return SolveResult(level, sorted(set(found)), trace, calls, measurements)

    # unreachable for n >= 1 in known mode; unknown mode can exhaust every level
    return SolveResult(0, ["0" * g.n], trace, calls, measurements)
