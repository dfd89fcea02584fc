"""State-vector backends.

Two ways to run the search:

* the dense backend keeps every qubit of a :class:`~grover_clique.circuit.Circuit`
  in a ``2**N`` complex vector and applies gates one by one;
* the compiled backend keeps only the ``n`` data qubits.  The compute /
  kickback / uncompute oracle is a basis permutation followed by its inverse,
  so its net effect is a sign flip on the target candidates, which is applied
  directly from a classical lookup table.

Bit order: qubit 0 is the most significant bit of a basis index, so basis
labels read ``q0 q1 ...`` left to right.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .circuit import CNOT, H, PSG, TOFFOLI, X, Circuit, Gate, build_grover_circuit, layout
from .errors import DomainError, ResourceLimitError
from .graph import Graph, index_to_bits, target_table

#: Guard on the qubit count of the dense backend (2**26 complex128 = 1 GiB).
MAX_DENSE_QUBITS = 26
#: Guard on the data-register width of the compiled backend.
MAX_COMPILED_QUBITS = 26
#: Probabilities at or below this are dropped from distributions.
PROB_FLOOR = 1e-14

_SQRT1_2 = 1 / np.sqrt(2.0)


@dataclass
class State:
    """Dense amplitude vector over ``2**qubit_count`` basis states."""

    qubit_count: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.qubit_count,):
            raise DomainError("amplitude vector does not match qubit count")

    def copy(self) -> State:
        return State(self.qubit_count, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def _tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.qubit_count)


def new_state(circuit: Circuit | int, initial_bits: Sequence[int] | None = None) -> State:
    """Basis state given by a circuit header (or an explicit qubit count and bits)."""
    if isinstance(circuit, Circuit):
        count, bits = circuit.qubit_count, circuit.initial_bits
    else:
        count, bits = int(circuit), tuple(initial_bits or (0,) * int(circuit))
    if count > MAX_DENSE_QUBITS:
        raise ResourceLimitError(f"{count} qubits exceeds dense guard of {MAX_DENSE_QUBITS}")
    if len(bits) != count:
        raise DomainError("initial bits do not match qubit count")
    amps = np.zeros(1 << count, dtype=np.complex128)
    amps[int("".join(map(str, bits)) or "0", 2)] = 1.0
    return State(count, amps)


def _apply_inplace(state: State, gate: Gate) -> None:
    n = state.qubit_count
    if max(gate.qubits) >= n:
        raise DomainError(f"gate {gate} addresses a qubit >= {n}")
    amps = state.amplitudes
    if gate.kind == H:
        q = gate.qubits[0]
        v = amps.reshape(1 << q, 2, -1)
        a = v[:, 0, :].copy()
        b = v[:, 1, :]
        v[:, 0, :] = (a + b) * _SQRT1_2
        v[:, 1, :] = (a - b) * _SQRT1_2
    elif gate.kind in (X, CNOT, TOFFOLI):
        t = state._tensor()
        sel = [slice(None)] * n
        for q, pol in zip(gate.controls, gate.control_polarity):
            sel[q] = int(pol)
        sel[gate.target] = 0
        lo = tuple(sel)
        sel[gate.target] = 1
        hi = tuple(sel)
        tmp = t[lo].copy()
        t[lo] = t[hi]
        t[hi] = tmp
    elif gate.kind == PSG:
        t = state._tensor()
        amps *= -1
        sel = [slice(None)] * n
        for q in gate.qubits:
            sel[q] = 0
        t[tuple(sel)] *= -1
    else:  # pragma: no cover - Gate validates kinds
        raise DomainError(f"unsupported gate {gate.kind}")


def apply_gate(state: State, gate: Gate) -> State:
    """Return a new state with ``gate`` applied."""
    out = state.copy()
    _apply_inplace(out, gate)
    return out


def run(state: State, circuit: Circuit, inplace: bool = False) -> State:
    if state.qubit_count != circuit.qubit_count:
        raise DomainError(
            f"state has {state.qubit_count} qubits, circuit {circuit.qubit_count}"
        )
    out = state if inplace else state.copy()
    for gate in circuit.gates:
        _apply_inplace(out, gate)
    return out


def simulate(circuit: Circuit) -> State:
    """Run ``circuit`` from its own initial bits."""
    return run(new_state(circuit), circuit, inplace=True)


# -- distributions --------------------------------------------------------------


class Distribution(Mapping):
    """Read-only ``bitstring -> probability`` map over a qubit subset."""

    def __init__(self, probs: Mapping[str, float], qubits: Sequence[int] | None = None):
        self._probs = {k: float(v) for k, v in probs.items()}
        self.qubits = tuple(qubits) if qubits is not None else None
        if any(p < 0 for p in self._probs.values()):
            raise DomainError("negative probability")

    def __getitem__(self, key):
        return self._probs[key]

    def __iter__(self):
        return iter(self._probs)

    def __len__(self):
        return len(self._probs)

    def __repr__(self):
        return f"Distribution({dict(self.items_sorted())})"

    def get(self, key, default=0.0):
        return self._probs.get(key, default)

    def total(self) -> float:
        return sum(self._probs.values())

    def items_sorted(self) -> list[tuple[str, float]]:
        """Descending probability, ties broken lexicographically."""
        return sorted(self._probs.items(), key=lambda kv: (-kv[1], kv[0]))

    def to_text(self, digits: int = 9) -> str:
        return "".join(f"{k} {p:.{digits}f}\n" for k, p in self.items_sorted())

    def to_dict(self) -> dict:
        return {
            "qubits": list(self.qubits) if self.qubits is not None else None,
            "probabilities": dict(self.items_sorted()),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> Distribution:
        return cls(doc["probabilities"], doc.get("qubits"))

    @classmethod
    def from_json(cls, text: str) -> Distribution:
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_text(cls, text: str) -> Distribution:
        probs = {}
        for line in text.splitlines():
            if line.strip():
                key, value = line.split()
                probs[key] = float(value)
        return cls(probs)

    def max_abs_diff(self, other: Mapping[str, float]) -> float:
        keys = set(self) | set(other)
        return max((abs(self.get(k, 0.0) - other.get(k, 0.0)) for k in keys), default=0.0)


def _check_qubits(state: State, qubits: Sequence[int]) -> tuple[int, ...]:
    qubits = tuple(int(q) for q in qubits)
    if len(set(qubits)) != len(qubits):
        raise DomainError("repeated qubit index")
    if any(not 0 <= q < state.qubit_count for q in qubits):
        raise DomainError(f"qubit index outside 0..{state.qubit_count - 1}")
    return qubits


def _marginal_array(state: State, qubits: tuple[int, ...]) -> np.ndarray:
    probs = state.probabilities().reshape((2,) * state.qubit_count)
    rest = tuple(q for q in range(state.qubit_count) if q not in qubits)
    summed = probs.sum(axis=rest) if rest else probs
    # surviving axes are in ascending qubit order; permute to the request
    order = sorted(qubits)
    summed = np.transpose(summed, [order.index(q) for q in qubits]) if qubits else summed
    return np.asarray(summed).reshape(-1)


def _to_distribution(probs: np.ndarray, width: int, qubits=None) -> Distribution:
    keep = np.flatnonzero(probs > PROB_FLOOR)
    return Distribution({index_to_bits(int(i), width): float(probs[i]) for i in keep}, qubits)


def marginal(state: State, qubits: Sequence[int]) -> Distribution:
    """Probability of each outcome on ``qubits`` (in the order given)."""
    qubits = _check_qubits(state, qubits)
    return _to_distribution(_marginal_array(state, qubits), len(qubits), qubits)


def sample(state: State | Distribution, qubits: Sequence[int] = (), seed=None) -> str:
    """Draw one outcome.  ``seed`` is an int or a ``numpy.random.Generator``."""
    dist = state if isinstance(state, Distribution) else marginal(state, qubits)
    return sample_distribution(dist, seed)


def sample_distribution(dist: Distribution, seed=None, size: int | None = None):
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    keys = sorted(dist)
    p = np.array([dist[k] for k in keys])
    p = p / p.sum()
    picks = rng.choice(len(keys), size=size, p=p)
    if size is None:
        return keys[int(picks)]
    return [keys[int(i)] for i in picks]


# -- compiled backend ------------------------------------------------------------


def _diffuse(amps: np.ndarray) -> None:
    """``H^n PSG H^n``: inversion about the mean, in place."""
    mean = amps.mean()
    np.subtract(2 * mean, amps, out=amps)


def compiled_amplitudes(g: Graph, level: int, iterations: int, targets: np.ndarray | None = None):
    """Yield the data-register amplitudes after 0, 1, ..., ``iterations`` rounds.

    The same array is updated in place between yields; copy it to keep it.
    """
    if g.n > MAX_COMPILED_QUBITS:
        raise ResourceLimitError(f"n={g.n} exceeds compiled guard of {MAX_COMPILED_QUBITS}")
    if iterations < 0:
        raise DomainError("iteration count must be non-negative")
    if targets is None:
        targets = target_table(g, level)
    amps = np.full(1 << g.n, 1 / np.sqrt(1 << g.n), dtype=np.float64)
    yield amps
    for _ in range(iterations):
        amps[targets] *= -1
        _diffuse(amps)
        yield amps


def compiled_oracle_run(g: Graph, level: int, iterations: int) -> Distribution:
    """Exact data-register distribution after ``iterations`` Grover rounds."""
    for amps in compiled_amplitudes(g, level, iterations):
        pass
    return _to_distribution(amps**2, g.n, tuple(range(g.n)))


def dense_grover_run(g: Graph, level: int, iterations: int) -> Distribution:
    """Data-register marginal of the full synthesized circuit."""
    lay = layout(g)
    if lay.total > MAX_DENSE_QUBITS:
        raise ResourceLimitError(f"{lay.total} qubits exceeds dense guard of {MAX_DENSE_QUBITS}")
    state = simulate(build_grover_circuit(g, level, iterations, lay))
    return marginal(state, lay.x)
