import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grover_clique import circuit as qc
from grover_clique.errors import DomainError, ParseError
from grover_clique.graph import Graph, complete_graph, is_legal_clique, iter_all_graphs, weight
from grover_clique.simulator import marginal, simulate


def tally(c):
    counts = {k: 0 for k in qc.GATE_KINDS}
    for g in qc.lower(c).gates:
        counts[g.kind] += 1
    return counts


def data_inputs(lay, idx):
    return {q: (idx >> (lay.n - 1 - k)) & 1 for k, q in enumerate(lay.x)}


class TestGate:
    def test_negated_only_on_toffoli(self):
        with pytest.raises(DomainError):
            qc.Gate("CNOT", (0, 1), (True,))

    def test_distinct_qubits(self):
        with pytest.raises(DomainError):
            qc.toffoli(0, 0, 1)

    def test_text(self):
        assert qc.toffoli(0, 2, 5, negated=(False, True)).to_text() == "TOFFOLI q0 !q2 q5"
        assert qc.psg((0, 1, 2)).to_text() == "PSG q0 q1 q2"

    def test_circuit_bounds(self):
        with pytest.raises(DomainError):
            qc.Circuit(2, (0, 0), (qc.cnot(0, 2),))


class TestLayout:
    # totals from n + 2m + 2 + n(n+3)/2, or n + 1 + n(n+3)/2 without complement edges
    @pytest.mark.parametrize(
        "g, total",
        [
            (Graph(3, {(1, 2), (2, 3)}), 16),
            (Graph(2, {(1, 2)}), 8),
            (Graph(1), 4),
        ],
    )
    def test_totals(self, g, total):
        assert qc.layout(g).total == total

    def test_order_and_injective(self, g32):
        lay = qc.layout(g32)
        assert lay.x == (0, 1, 2)
        assert lay.ebar == (3,)
        assert lay.c == (4, 5)
        assert lay.z[(1, 0)] == 6 and lay.z[(3, 3)] == 14
        assert lay.oracle == 15
        names = lay.register_map()
        assert len(set(names.values())) == len(names) == lay.total

    def test_initial_bits(self, g32):
        lay = qc.layout(g32)
        bits = lay.initial_bits()
        assert bits[lay.ebar[0]] == 1 and bits[lay.c[0]] == 1 and bits[lay.c[1]] == 0
        assert bits[lay.oracle] == 1
        assert all(bits[q] == 0 for q in lay.z.values())

    def test_empty_graph_rejected(self):
        with pytest.raises(DomainError):
            qc.layout(Graph(0))


class TestBuilders:
    def test_superposition(self, g21):
        c = qc.build_superposition(qc.layout(g21))
        assert [g.to_text() for g in c.gates] == ["H q0", "H q1"]

    def test_superposition_six(self, fig1):
        assert len(qc.build_superposition(qc.layout(fig1))) == 6

    def test_exclusion_g32(self, g32):
        lay = qc.layout(g32)
        gates = qc.build_exclusion(g32, lay).gates
        assert gates[0] == qc.toffoli(lay.x[0], lay.x[2], lay.ebar[0])
        assert gates[1] == qc.toffoli(lay.ebar[0], lay.c[0], lay.c[1])
        assert len(gates) == 2

    def test_exclusion_complete_graph_empty(self, k4):
        assert len(qc.build_exclusion(k4, qc.layout(k4))) == 0

    def test_exclusion_fig1(self, fig1):
        assert tally(qc.build_exclusion(fig1, qc.layout(fig1)))["TOFFOLI"] == 8

    def test_exclusion_layout_mismatch(self, g32, g21):
        with pytest.raises(DomainError):
            qc.build_exclusion(g32, qc.layout(g21))

    @pytest.mark.parametrize("n, expected", [(2, 6), (3, 12)])
    def test_classifier_counts(self, n, expected):
        g = Graph(n, set())  # edgeless: m >= 1
        counts = tally(qc.build_classifier(qc.layout(g)))
        assert counts["TOFFOLI"] == expected and counts["X"] == expected

    def test_classifier_row_110(self, g32):
        rows = qc.classification_table(g32)
        row = rows[0b110]
        assert row["z3_2"] == 1
        assert row["z3_0"] == row["z3_1"] == row["z3_3"] == 0

    def test_classifier_prefix_counts(self):
        for g in iter_all_graphs(4):
            for idx, row in enumerate(qc.classification_table(g)):
                x = format(idx, "04b")
                legal = is_legal_clique(g, x)
                for i in range(1, 5):
                    for j in range(i + 1):
                        assert row[f"z{i}_{j}"] == int(legal and weight(x[:i]) == j)

    def test_diffusion(self, g21):
        c = qc.build_diffusion(qc.layout(g21))
        assert [g.kind for g in c.gates] == ["H", "H", "PSG", "H", "H"]
        assert c.gates[2].qubits == (0, 1)

    def test_oracle_level_range(self, g32):
        with pytest.raises(DomainError):
            qc.build_oracle(g32, qc.layout(g32), 4)

    def test_oracle_toffoli_count(self, fig1):
        lay = qc.layout(fig1)
        n, m = 6, 4
        assert tally(qc.build_oracle(fig1, lay, 4))["TOFFOLI"] == 4 * m + 2 * n * (n + 1)


class TestOracleSemantics:
    """The oracle is a permutation; kickback through |-> is equivalent to the
    oracle qubit flipping exactly on targets while every ancilla returns."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_restoration_and_phase_exhaustive(self, n):
        for g in iter_all_graphs(n):
            lay = qc.layout(g)
            init = lay.initial_bits()
            for level in range(n + 1):
                oracle = qc.build_oracle(g, lay, level)
                for idx in range(1 << n):
                    ins = data_inputs(lay, idx)
                    out = qc.evaluate_classical(oracle, ins)
                    x = format(idx, f"0{n}b")
                    target = is_legal_clique(g, x) and weight(x) == level
                    expected = list(init)
                    for q, b in ins.items():
                        expected[q] = b
                    expected[lay.oracle] ^= int(target)
                    assert out == expected

    def test_dense_phase_flip_g32(self, g32):
        lay = qc.layout(g32)
        for level, targets in [(2, {"110", "011"}), (3, set())]:
            prep = qc.build_superposition(lay).with_gates(
                [*qc.build_superposition(lay).gates, qc.h(lay.oracle)])
            before = simulate(prep)
            after = simulate(prep + qc.build_oracle(g32, lay, level))
            amps_b = before.amplitudes.reshape(8, -1)
            amps_a = after.amplitudes.reshape(8, -1)
            for idx in range(8):
                sign = -1 if format(idx, "03b") in targets else 1
                np.testing.assert_allclose(amps_a[idx], sign * amps_b[idx], atol=1e-12)


class TestGroverCircuit:
    # exact values from sin(theta) = sqrt(M/2^n): k=1, M=2, N=8 gives 1/2 per target
    def test_g32_level2(self, g32):
        lay = qc.layout(g32)
        dist = marginal(simulate(qc.build_grover_circuit(g32, 2, 1)), lay.x)
        assert dist.max_abs_diff({"110": 0.5, "011": 0.5}) < 1e-9

    def test_g21_level2(self, g21):
        lay = qc.layout(g21)
        dist = marginal(simulate(qc.build_grover_circuit(g21, 2, 1)), lay.x)
        assert dist.max_abs_diff({"11": 1.0}) < 1e-9

    def test_k0_uniform(self, g32):
        lay = qc.layout(g32)
        dist = marginal(simulate(qc.build_grover_circuit(g32, 2, 0)), lay.x)
        assert dist.max_abs_diff({format(i, "03b"): 1 / 8 for i in range(8)}) < 1e-9

    def test_oracle_qubit_restored(self, g21):
        lay = qc.layout(g21)
        dist = marginal(simulate(qc.build_grover_circuit(g21, 2, 1)), [lay.oracle])
        assert dist.max_abs_diff({"1": 1.0}) < 1e-9

    def test_negative_iterations(self, g32):
        with pytest.raises(DomainError):
            qc.build_grover_circuit(g32, 2, -1)


class TestReverse:
    def test_list_reversal(self):
        a, b, c = qc.h(0), qc.x(1), qc.cnot(0, 1)
        circ = qc.Circuit(2, (0, 0), (a, b, c))
        assert qc.reverse(circ).gates == (c, b, a)
        assert qc.reverse(qc.reverse(circ)) == circ

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_classifier_then_reverse_is_identity(self, n):
        rng = np.random.default_rng(n)
        for g in (Graph(n), complete_graph(n)):
            lay = qc.layout(g)
            circ = qc.build_classifier(lay) + qc.reverse(qc.build_classifier(lay))
            for _ in range(300):
                bits = [int(b) for b in rng.integers(0, 2, lay.total)]
                assert qc.evaluate_classical(circ, bits) == bits

    def test_exclusion_uncompute(self, fig1):
        lay = qc.layout(fig1)
        circ = qc.build_exclusion(fig1, lay) + qc.reverse(qc.build_exclusion(fig1, lay))
        for idx in range(64):
            ins = data_inputs(lay, idx)
            out = qc.evaluate_classical(circ, ins)
            expected = list(lay.initial_bits())
            for q, b in ins.items():
                expected[q] = b
            assert out == expected


class TestLowering:
    def test_lowered_has_no_negations(self, g32):
        low = qc.lower(qc.build_classifier(qc.layout(g32)))
        assert not any(any(g.negated) for g in low.gates)

    def test_lowering_preserves_action(self, g32):
        lay = qc.layout(g32)
        c = qc.build_exclusion(g32, lay) + qc.build_classifier(lay)
        for idx in range(8):
            ins = data_inputs(lay, idx)
            assert qc.evaluate_classical(c, ins) == qc.evaluate_classical(qc.lower(c), ins)


class TestG21Reduced:
    def test_final_state(self):
        state = simulate(qc.build_g21_reduced())
        assert abs(state.probabilities()[0b1101] - 1.0) < 1e-9

    def test_matches_full_pipeline(self, g21):
        reduced = marginal(simulate(qc.build_g21_reduced()), [0, 1])
        lay = qc.layout(g21)
        full = marginal(simulate(qc.build_grover_circuit(g21, 2, 1)), lay.x)
        assert reduced.max_abs_diff(full) < 1e-9
        assert reduced.max_abs_diff({"11": 1.0}) < 1e-9


@st.composite
def circuits(draw):
    n = draw(st.integers(3, 7))
    init = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    gates = []
    for _ in range(draw(st.integers(0, 20))):
        kind = draw(st.sampled_from(qc.GATE_KINDS))
        if kind == "PSG":
            qs = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True))
            gates.append(qc.psg(qs))
            continue
        arity = {"H": 1, "X": 1, "CNOT": 2, "TOFFOLI": 3}[kind]
        qs = draw(st.lists(st.integers(0, n - 1), min_size=arity, max_size=arity, unique=True))
        neg = tuple(draw(st.lists(st.booleans(), min_size=2, max_size=2))) if kind == "TOFFOLI" else ()
        gates.append(qc.Gate(kind, tuple(qs), neg))
    return qc.Circuit(n, tuple(init), tuple(gates), {"a": 0, "b": n - 1})


class TestTextFormat:
    @given(circuits())
    def test_round_trip(self, c):
        text = qc.to_text(c)
        back = qc.parse_text(text)
        assert back == c
        assert qc.to_text(back) == text

    def test_round_trip_synthesized(self, g32):
        c = qc.build_grover_circuit(g32, 2, 1)
        assert qc.parse_text(qc.to_text(c)) == c

    def test_header(self, g32):
        text = qc.to_text(qc.build_grover_circuit(g32, 2, 1))
        lines = text.splitlines()
        assert lines[0] == "qubits 16"
        assert lines[1] == "init 0001100000000001"
        assert "reg e1 q3" in lines and "reg O q15" in lines
        assert "TOFFOLI q5 !q0 q6" in lines

    @pytest.mark.parametrize(
        "text",
        [
            "H q0\n",
            "qubits 2\nH q2\n",
            "qubits 2\nCNOT !q0 q1\n",
            "qubits 3\nTOFFOLI q0 q1 !q2\n",
            "qubits 2\nFOO q0\n",
            "qubits 2\nH x0\n",
            "qubits 2\ninit 012\n",
        ],
    )
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            qc.parse_text(text)

    def test_classical_rejects_h(self):
        with pytest.raises(DomainError):
            qc.evaluate_classical(qc.Circuit(1, (0,), (qc.h(0),)))
