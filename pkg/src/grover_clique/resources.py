"""Gate and qubit accounting.

Exact tallies come from walking a synthesized circuit after negated controls
are lowered (each negated control costs two X gates).  The closed forms below
are the per-stage counts those tallies must reproduce, plus the asymptotic
leading terms for one run, the worst case and the average case.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .circuit import (
    GATE_KINDS,
    Circuit,
    build_classifier,
    build_diffusion,
    build_exclusion,
    build_superposition,
    layout,
    lower,
    reverse,
)
from .errors import DomainError
from .graph import Graph

STAGES = ("superposition", "exclusion", "classifier", "kickback", "uncompute", "diffusion", "readout")


@dataclass
class ResourceReport:
    counts: dict[str, int] = field(default_factory=lambda: dict.fromkeys(GATE_KINDS, 0))
    qubit_total: int = 0
    measurements: int = 0
    stages: dict[str, dict[str, int]] = field(default_factory=dict)

    def __getitem__(self, kind: str) -> int:
        return self.counts[kind]

    @property
    def total_gates(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict:
        return {
            "counts": dict(self.counts),
            "qubit_total": self.qubit_total,
            "measurements": self.measurements,
            "stages": {k: dict(v) for k, v in self.stages.items()},
        }

    @classmethod
    def from_dict(cls, doc: dict) -> ResourceReport:
        return cls(dict(doc["counts"]), doc["qubit_total"], doc["measurements"],
                   {k: dict(v) for k, v in doc.get("stages", {}).items()})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> ResourceReport:
        return cls.from_dict(json.loads(text))

    def to_table(self) -> str:
        cols = list(GATE_KINDS)
        rows = [("stage", *cols)]
        for name, counts in self.stages.items():
            rows.append((name, *(str(counts.get(c, 0)) for c in cols)))
        rows.append(("total", *(str(self.counts[c]) for c in cols)))
        widths = [max(len(r[i]) for r in rows) for i in range(len(cols) + 1)]
        lines = ["  ".join(cell.rjust(w) if i else cell.ljust(w) for i, (cell, w) in enumerate(zip(r, widths)))
                 for r in rows]
        lines.append(f"qubits {self.qubit_total}")
        lines.append(f"measurements {self.measurements}")
        return "\n".join(lines) + "\n"


def _tally(c: Circuit) -> dict[str, int]:
    counts = dict.fromkeys(GATE_KINDS, 0)
    for g in lower(c).gates:
        counts[g.kind] += 1
    return counts


def count_gates(c: Circuit, measurements: int = 1) -> ResourceReport:
    """Exact per-kind gate counts; a negated control adds two X gates."""
    return ResourceReport(_tally(c), c.qubit_count, measurements)


def grover_report(g: Graph, level: int, iterations: int) -> ResourceReport:
    """Per-stage counts of ``build_grover_circuit(g, level, iterations)``.

    Stage totals are summed from independently built pieces; they must equal
    ``count_gates`` of the assembled circuit.
    """
    lay = layout(g)
    if not 0 <= level <= g.n:
        raise DomainError(f"level {level} outside 0..{g.n}")
    excl = _tally(build_exclusion(g, lay))
    cls = _tally(build_classifier(lay))
    uncompute = _tally(reverse(build_classifier(lay)) + reverse(build_exclusion(g, lay)))
    diffusion = _tally(build_diffusion(lay))
    sup = _tally(build_superposition(lay))
    sup["H"] += 1  # H on the oracle qubit
    k = iterations
    stages = {
        "superposition": sup,
        "exclusion": {kind: k * v for kind, v in excl.items()},
        "classifier": {kind: k * v for kind, v in cls.items()},
        "kickback": {**dict.fromkeys(GATE_KINDS, 0), "CNOT": k},
        "uncompute": {kind: k * v for kind, v in uncompute.items()},
        "diffusion": {kind: k * v for kind, v in diffusion.items()},
        "readout": {**dict.fromkeys(GATE_KINDS, 0), "H": 1},
    }
    totals = dict.fromkeys(GATE_KINDS, 0)
    for counts in stages.values():
        for kind, v in counts.items():
            totals[kind] += v
    return ResourceReport(totals, lay.total, 1, stages)


# -- closed forms --------------------------------------------------------------


def qubit_count(n: int, m: int) -> int:
    """Qubits used by the synthesized search: ``2m + n + 2 + n(n+3)/2`` for
    ``m >= 1``; without complement edges the ``e`` and ``c`` registers go,
    leaving ``n + 1 + n(n+3)/2``."""
    if n < 1 or not 0 <= m <= n * (n - 1) // 2:
        raise DomainError(f"need n >= 1 and 0 <= m <= n(n-1)/2, got n={n}, m={m}")
    z = n * (n + 3) // 2
    return 2 * m + n + 2 + z if m else n + 1 + z


def exclusion_toffoli(m: int) -> int:
    return 2 * m


def classifier_counts(n: int, m: int) -> dict[str, int]:
    """Toffoli/X/CNOT of the classifier after lowering."""
    if m:
        return {"TOFFOLI": n * (n + 1), "X": n * (n + 1), "CNOT": 0}
    # base pair degrades to a CNOT and an X-sandwiched CNOT
    return {"TOFFOLI": n * (n + 1) - 2, "X": n * (n + 1), "CNOT": 2}


def oracle_counts(n: int, m: int) -> dict[str, int]:
    """One compute / kickback / uncompute pass."""
    cls = classifier_counts(n, m)
    return {
        "TOFFOLI": 2 * exclusion_toffoli(m) + 2 * cls["TOFFOLI"],
        "X": 2 * cls["X"],
        "CNOT": 1 + 2 * cls["CNOT"],
        "H": 0,
        "PSG": 0,
    }


def grover_counts(n: int, m: int, k: int) -> dict[str, int]:
    """Closed-form counts for a full run with ``k`` rounds."""
    o = oracle_counts(n, m)
    return {
        "H": n + 2 + 2 * n * k,
        "X": k * o["X"],
        "CNOT": k * o["CNOT"],
        "TOFFOLI": k * o["TOFFOLI"],
        "PSG": k,
    }


@dataclass(frozen=True)
class LeadingTerm:
    """``coefficient * 2**(n/2) + constant``."""

    coefficient: Fraction
    constant: Fraction = Fraction(0)

    def scaled(self, factor) -> LeadingTerm:
        factor = Fraction(factor)
        return LeadingTerm(self.coefficient * factor, self.constant * factor)

    def evaluate(self, n: int) -> float:
        return float(self.coefficient) * 2 ** (n / 2) + float(self.constant)


@dataclass(frozen=True)
class AsymptoticEstimate:
    n: int
    m: int
    case: str
    terms: dict

    def to_dict(self) -> dict:
        return {
            "n": self.n, "m": self.m, "case": self.case,
            "terms": {k: [str(t.coefficient), str(t.constant)] for k, t in self.terms.items()},
        }


CASES = ("single", "worst", "average")


def appendix_a_estimate(n: int, m: int, case: str = "single") -> AsymptoticEstimate:
    """Leading-order gate counts of the full search.

    ``single`` is one run at a fixed level with ``~2**(n/2)`` rounds; the
    worst case repeats it for all ``n`` levels and the average case for
    ``(n+1)/2`` of them.  Measurements are the constant term only.
    """
    qubit_count(n, m)  # argument validation
    if case not in CASES:
        raise DomainError(f"case must be one of {CASES}")
    single = {
        "H": LeadingTerm(Fraction(2 * n), Fraction(n + 1)),
        "X": LeadingTerm(Fraction(2 * (n * n + n))),
        "CNOT": LeadingTerm(Fraction(1)),
        "TOFFOLI": LeadingTerm(Fraction(4 * m + 2 * (n * n + n))),
        "PSG": LeadingTerm(Fraction(1)),
        "measurements": LeadingTerm(Fraction(0), Fraction(1)),
    }
    factor = {"single": 1, "worst": n, "average": Fraction(n + 1, 2)}[case]
    return AsymptoticEstimate(n, m, case, {k: t.scaled(factor) for k, t in single.items()})


def sat_reduction_size(nvars: int, nclauses: int) -> tuple[int, int]:
    """Vertex and edge counts of the clique instance a 3-SAT formula reduces to."""
    if nvars < 1 or nclauses < 1:
        raise DomainError("variable and clause counts must be positive")
    v = 2 * nvars + 3 * nclauses
    return v, v * (v - 1) // 2 - (nvars + 6 * nclauses)
