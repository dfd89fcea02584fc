"""Gate IR, register layout and the circuit builders for the clique search.

A circuit is an immutable value: qubit count, classical initial bits, an
ordered gate tuple and an optional name -> index register map.  Builders
return circuits sharing the header of the layout they were built for, so
stages concatenate with ``+``.

Gate alphabet: ``H``, ``X``, ``CNOT``, ``TOFFOLI`` (controls may be negated)
and ``PSG``, the n-qubit conditional phase shift that negates every basis
state whose data substring is nonzero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DomainError, ParseError
from .graph import Graph, complement

H, X, CNOT, TOFFOLI, PSG = "H", "X", "CNOT", "TOFFOLI", "PSG"
GATE_KINDS = (H, X, CNOT, TOFFOLI, PSG)
_ARITY = {H: 1, X: 1, CNOT: 2, TOFFOLI: 3}


@dataclass(frozen=True)
class Gate:
    """One gate.  For CNOT/TOFFOLI the last qubit is the target."""

    kind: str
    qubits: tuple[int, ...]
    negated: tuple[bool, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind not in GATE_KINDS:
            raise DomainError(f"unknown gate kind {self.kind!r}")
        if self.kind in _ARITY and len(self.qubits) != _ARITY[self.kind]:
            raise DomainError(f"{self.kind} acts on {_ARITY[self.kind]} qubits, got {self.qubits}")
        if self.kind == PSG and not self.qubits:
            raise DomainError("PSG needs at least one qubit")
        if len(set(self.qubits)) != len(self.qubits):
            raise DomainError(f"repeated qubit in {self.kind}{self.qubits}")
        if min(self.qubits) < 0:
            raise DomainError(f"negative qubit index in {self.kind}{self.qubits}")
        neg = tuple(bool(b) for b in self.negated)
        if neg and self.kind != TOFFOLI:
            raise DomainError("negated controls are only allowed on TOFFOLI")
        if self.kind == TOFFOLI:
            neg = neg or (False, False)
            if len(neg) != 2:
                raise DomainError("TOFFOLI takes one polarity flag per control")
        object.__setattr__(self, "negated", neg)

    @property
    def controls(self) -> tuple[int, ...]:
        return self.qubits[:-1] if self.kind in (CNOT, TOFFOLI) else ()

    @property
    def target(self) -> int | None:
        return self.qubits[-1] if self.kind in (H, X, CNOT, TOFFOLI) else None

    @property
    def control_polarity(self) -> tuple[bool, ...]:
        """Per control: True when it fires on ``|1>``."""
        if self.kind == TOFFOLI:
            return tuple(not b for b in self.negated)
        return (True,) * len(self.controls)

    def to_text(self) -> str:
        labels = [f"q{q}" for q in self.qubits]
        for k, neg in enumerate(self.negated):
            if neg:
                labels[k] = "!" + labels[k]
        return " ".join([self.kind, *labels])

    def __str__(self):
        return self.to_text()


def h(q):
    return Gate(H, (q,))


def x(q):
    return Gate(X, (q,))


def cnot(control, target):
    return Gate(CNOT, (control, target))


def toffoli(c1, c2, target, negated=(False, False)):
    return Gate(TOFFOLI, (c1, c2, target), tuple(negated))


def psg(qubits):
    return Gate(PSG, tuple(qubits))


@dataclass(frozen=True)
class Circuit:
    qubit_count: int
    initial_bits: tuple[int, ...]
    gates: tuple[Gate, ...] = ()
    registers: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "initial_bits", tuple(int(b) for b in self.initial_bits))
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "registers", dict(self.registers))
        self.validate()

    def validate(self):
        if len(self.initial_bits) != self.qubit_count:
            raise DomainError(
                f"{len(self.initial_bits)} initial bits for {self.qubit_count} qubits"
            )
        if set(self.initial_bits) - {0, 1}:
            raise DomainError("initial bits must be 0 or 1")
        for g in self.gates:
            if max(g.qubits) >= self.qubit_count:
                raise DomainError(f"gate {g} addresses a qubit >= {self.qubit_count}")
        if len(set(self.registers.values())) != len(self.registers):
            raise DomainError("register map is not injective")
        for name, q in self.registers.items():
            if not 0 <= q < self.qubit_count:
                raise DomainError(f"register {name} -> q{q} out of range")

    def with_gates(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.qubit_count, self.initial_bits, tuple(gates), self.registers)

    def __add__(self, other: Circuit) -> Circuit:
        if not isinstance(other, Circuit):
            return NotImplemented
        if (other.qubit_count, other.initial_bits) != (self.qubit_count, self.initial_bits):
            raise DomainError("cannot concatenate circuits with different headers")
        return self.with_gates(self.gates + other.gates)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def reverse(c: Circuit) -> Circuit:
    """Gates in reverse order.  Every gate in the alphabet is self-inverse,
    so this is the inverse circuit."""
    return c.with_gates(reversed(c.gates))


def lower(c: Circuit) -> Circuit:
    """Replace every negated control by an X on each side of the gate."""
    out = []
    for g in c.gates:
        flips = [q for q, neg in zip(g.controls, g.negated) if neg]
        if not flips:
            out.append(g)
            continue
        out.extend(x(q) for q in flips)
        out.append(Gate(g.kind, g.qubits))
        out.extend(x(q) for q in flips)
    return c.with_gates(out)


# -- register layout ------------------------------------------------------------


@dataclass(frozen=True)
class RegisterLayout:
    """Qubit indices for the data register and all ancillas.

    Order: ``x_1..x_n``, ``e_1..e_m`` (complement-edge flags), ``c_0..c_m``
    (running legality chain), ``z_{i,j}`` row-major over ``1 <= i <= n``,
    ``0 <= j <= i``, then the oracle qubit.  With ``m == 0`` the ``e`` and
    ``c`` registers are absent.
    """

    n: int
    complement_edges: tuple[tuple[int, int], ...]
    x: tuple[int, ...]
    ebar: tuple[int, ...]
    c: tuple[int, ...]
    z: dict
    oracle: int
    total: int

    @property
    def m(self) -> int:
        return len(self.complement_edges)

    @property
    def legal_flag(self) -> int | None:
        """Qubit holding 1 exactly for legal candidates (``c_m``), if any."""
        return self.c[-1] if self.c else None

    def initial_bits(self) -> tuple[int, ...]:
        bits = [0] * self.total
        for q in self.ebar:
            bits[q] = 1
        if self.c:
            bits[self.c[0]] = 1
        bits[self.oracle] = 1
        return tuple(bits)

    def register_map(self) -> dict[str, int]:
        names = {f"x{k}": q for k, q in enumerate(self.x, start=1)}
        names.update({f"e{k}": q for k, q in enumerate(self.ebar, start=1)})
        names.update({f"c{k}": q for k, q in enumerate(self.c)})
        names.update({f"z{i}_{j}": q for (i, j), q in self.z.items()})
        names["O"] = self.oracle
        return names

    def empty_circuit(self) -> Circuit:
        return Circuit(self.total, self.initial_bits(), (), self.register_map())


def layout(g: Graph) -> RegisterLayout:
    if g.n < 1:
        raise DomainError("layout needs at least one vertex")
    n = g.n
    edges = tuple(complement(g).sorted_edges())
    m = len(edges)
    nxt = n
    xs = tuple(range(n))
    ebar = tuple(range(nxt, nxt + m))
    nxt += m
    cs = tuple(range(nxt, nxt + m + 1)) if m else ()
    nxt += len(cs)
    z = {}
    for i in range(1, n + 1):
        for j in range(i + 1):
            z[(i, j)] = nxt
            nxt += 1
    return RegisterLayout(n, edges, xs, ebar, cs, z, nxt, nxt + 1)


def _check_layout(g: Graph, lay: RegisterLayout):
    if lay.n != g.n or lay.complement_edges != tuple(complement(g).sorted_edges()):
        raise DomainError("register layout was not built for this graph")


# -- builders ------------------------------------------------------------------


def build_superposition(lay: RegisterLayout) -> Circuit:
    return lay.empty_circuit().with_gates(h(q) for q in lay.x)


def build_exclusion(g: Graph, lay: RegisterLayout) -> Circuit:
    """Mark legal candidates in ``c_m``.

    For the k-th complement edge ``(v_i, v_j)`` the flag ``e_k`` (preset to 1)
    becomes ``NOT(x_i AND x_j)`` and ``c_k = e_k AND c_{k-1}``.
    """
    _check_layout(g, lay)
    gates = []
    for k, (i, j) in enumerate(lay.complement_edges):
        gates.append(toffoli(lay.x[i - 1], lay.x[j - 1], lay.ebar[k]))
        gates.append(toffoli(lay.ebar[k], lay.c[k], lay.c[k + 1]))
    return lay.empty_circuit().with_gates(gates)


def build_classifier(lay: RegisterLayout) -> Circuit:
    """Sort legal candidates into ``z_{n,j}`` by Hamming weight ``j``.

    After the circuit, ``z_{i,j} = 1`` iff the candidate is legal and
    ``x_1..x_i`` holds exactly ``j`` ones.
    """
    x1, z = lay.x[0], lay.z
    flag = lay.legal_flag
    if flag is not None:
        gates = [
            toffoli(flag, x1, z[(1, 1)]),
            toffoli(flag, x1, z[(1, 0)], negated=(False, True)),
        ]
    else:
        # every candidate is legal: copy x_1 and its negation
        gates = [cnot(x1, z[(1, 1)]), x(x1), cnot(x1, z[(1, 0)]), x(x1)]
    for i in range(1, lay.n):
        xi = lay.x[i]
        for j in range(i + 1):
            gates.append(toffoli(xi, z[(i, j)], z[(i + 1, j + 1)]))
            gates.append(toffoli(xi, z[(i, j)], z[(i + 1, j)], negated=(True, False)))
    return lay.empty_circuit().with_gates(gates)


def build_oracle(g: Graph, lay: RegisterLayout, level: int) -> Circuit:
    """Compute, kick back through the oracle qubit, uncompute.

    With the oracle qubit in ``|->`` this flips the sign of exactly the legal
    candidates of weight ``level`` and restores every ancilla.
    """
    if not 0 <= level <= g.n:
        raise DomainError(f"level {level} outside 0..{g.n}")
    excl = build_exclusion(g, lay)
    cls = build_classifier(lay)
    kick = lay.empty_circuit().with_gates([cnot(lay.z[(g.n, level)], lay.oracle)])
    return excl + cls + kick + reverse(cls) + reverse(excl)


def build_diffusion(lay: RegisterLayout) -> Circuit:
    hs = [h(q) for q in lay.x]
    return lay.empty_circuit().with_gates([*hs, psg(lay.x), *hs])


def build_grover_circuit(g: Graph, level: int, iterations: int, lay: RegisterLayout | None = None) -> Circuit:
    """Full search circuit: superposition, ``H(O)``, ``iterations`` rounds of
    oracle + diffusion, then ``H(O)`` to return the oracle qubit to ``|1>``."""
    if iterations < 0:
        raise DomainError("iteration count must be non-negative")
    lay = lay or layout(g)
    oracle = build_oracle(g, lay, level)
    diffusion = build_diffusion(lay)
    gates = list(build_superposition(lay).gates)
    gates.append(h(lay.oracle))
    for _ in range(iterations):
        gates.extend(oracle.gates)
        gates.extend(diffusion.gates)
    gates.append(h(lay.oracle))
    return lay.empty_circuit().with_gates(gates)


def build_g21_reduced() -> Circuit:
    """Hand-reduced four-qubit search for the one-edge graph on two vertices.

    Qubits ``x1, x2, z, O`` start in ``0, 0, 0, 1``; the ideal output is
    ``|1101>``.
    """
    x1, x2, z, o = 0, 1, 2, 3
    gates = [
        h(x1), h(x2), h(o),
        toffoli(x1, x2, z), cnot(z, o), toffoli(x1, x2, z),
        h(x1), h(x2), psg((x1, x2)), h(x1), h(x2),
        h(o),
    ]
    return Circuit(4, (0, 0, 0, 1), tuple(gates), {"x1": x1, "x2": x2, "z1_1": z, "O": o})


# -- classical evaluation -------------------------------------------------------


def evaluate_classical(c: Circuit, inputs: dict[int, int] | Sequence[int] | None = None) -> list[int]:
    """Run a permutation circuit (X/CNOT/TOFFOLI only) on a basis state.

    ``inputs`` overrides initial bits, either as a full bit sequence or as a
    ``{qubit: bit}`` mapping.  Returns the final bits.
    """
    bits = list(c.initial_bits)
    if isinstance(inputs, dict):
        for q, b in inputs.items():
            bits[q] = int(b)
    elif inputs is not None:
        if len(inputs) != c.qubit_count:
            raise DomainError("input length does not match qubit count")
        bits = [int(b) for b in inputs]
    for g in c.gates:
        if g.kind in (H, PSG):
            raise DomainError(f"{g.kind} is not a classical permutation gate")
        fire = all(bits[q] == int(pol) for q, pol in zip(g.controls, g.control_polarity))
        if fire:
            bits[g.target] ^= 1
    return bits


# -- text format ---------------------------------------------------------------


def to_text(c: Circuit) -> str:
    """One gate per line after a ``qubits`` / ``init`` / ``reg`` header."""
    lines = [f"qubits {c.qubit_count}", "init " + "".join(map(str, c.initial_bits))]
    lines.extend(f"reg {name} q{q}" for name, q in c.registers.items())
    lines.extend(g.to_text() for g in c.gates)
    return "\n".join(lines) + "\n"


def _qubit(token: str, lineno: int, line: str) -> tuple[int, bool]:
    neg = token.startswith("!")
    body = token[1:] if neg else token
    if not body.startswith("q") or not body[1:].isdigit():
        raise ParseError(f"bad qubit token {token!r}", lineno, line)
    return int(body[1:]), neg


def parse_text(text: str) -> Circuit:
    """Inverse of :func:`to_text`.  Blank lines and ``#`` comments are ignored."""
    count = init = None
    registers = {}
    gates = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split("#", 1)[0].split()
        if not tokens:
            continue
        head = tokens[0]
        if head == "qubits":
            if count is not None or len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError("expected a single 'qubits <N>' line", lineno, line)
            count = int(tokens[1])
        elif head == "init":
            if len(tokens) != 2 or set(tokens[1]) - {"0", "1"}:
                raise ParseError("expected 'init <bits>'", lineno, line)
            init = tuple(int(b) for b in tokens[1])
        elif head == "reg":
            if len(tokens) != 3:
                raise ParseError("expected 'reg <name> q<index>'", lineno, line)
            q, neg = _qubit(tokens[2], lineno, line)
            if neg or tokens[1] in registers:
                raise ParseError("bad register entry", lineno, line)
            registers[tokens[1]] = q
        elif head in GATE_KINDS:
            parsed = [_qubit(t, lineno, line) for t in tokens[1:]]
            qubits = tuple(q for q, _ in parsed)
            negated = tuple(neg for _, neg in parsed[:-1]) if head == TOFFOLI else ()
            if head != TOFFOLI and any(neg for _, neg in parsed):
                raise ParseError("negated control outside TOFFOLI", lineno, line)
            if head == TOFFOLI and parsed and parsed[-1][1]:
                raise ParseError("target cannot be negated", lineno, line)
            try:
                gates.append(Gate(head, qubits, negated))
            except DomainError as exc:
                raise ParseError(str(exc), lineno, line) from None
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, line)
    if count is None:
        raise ParseError("missing 'qubits <N>' line")
    if init is None:
        init = (0,) * count
    try:
        return Circuit(count, init, tuple(gates), registers)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def classification_table(g: Graph) -> list[dict[str, int]]:
    """Ancilla values after exclusion + classification, one row per candidate.

    Rows follow ``x = 0 .. 2**n - 1``; each maps ``x1..xn``, ``e1..em``,
    ``c0..cm`` and ``z{i}_{j}`` to the bit left on that qubit.
    """
    lay = layout(g)
    circ = build_exclusion(g, lay) + build_classifier(lay)
    names = lay.register_map()
    rows = []
    for idx in range(1 << g.n):
        inputs = {q: (idx >> (g.n - 1 - k)) & 1 for k, q in enumerate(lay.x)}
        bits = evaluate_classical(circ, inputs)
        rows.append({name: bits[q] for name, q in names.items() if name != "O"})
    return rows
