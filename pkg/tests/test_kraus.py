import math

import numpy as np
import pytest

from pbtsim.analysis import depolarizing_choi, xi
from pbtsim.choi import choi_from_reduced
from pbtsim.kraus import (apply_kraus, apply_protocol, choi_from_kraus,
                          choi_to_kraus, protocol_gram, protocol_kraus,
                          sqrt_measurement_op, unreduced_multiplicity)
from pbtsim.linalg import max_abs
from pbtsim.oracle import build_povm
from pbtsim.resources import (AdChoi, Alternate, Bell, make_family,
                              reduce_full, reduced_port_state,
                              trace_to_first_port)
from pbtsim.spin import degeneracy

from conftest import random_choi, random_symmetric_resource

PAULIS = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


class TestChoiToKraus:
    def test_identity_channel_single_operator(self):
        v = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
        ks = choi_to_kraus(np.outer(v, v.conj()))
        assert len(ks.ops) == 1
        phase = ks.ops[0][0, 0]
        np.testing.assert_allclose(ks.ops[0], phase * np.eye(2), atol=1e-14)
        assert abs(abs(phase) - 1) < 1e-14

    def test_depolarizing_weights(self):
        # weights are fixed; the triply degenerate block is only determined up
        # to unitary mixing inside the Pauli (traceless) span
        x = 0.37
        ks = choi_to_kraus(depolarizing_choi(x))
        weights = sorted(np.linalg.norm(k) / math.sqrt(2) for k in ks.ops)
        expected = sorted([math.sqrt(1 - 3 * x / 4)] + [math.sqrt(x / 4)] * 3)
        np.testing.assert_allclose(weights, expected, atol=1e-12)
        top = max(ks.ops, key=np.linalg.norm)
        np.testing.assert_allclose(top, top[0, 0] * np.eye(2), atol=1e-12)
        for k in ks.ops:
            if k is not top:
                assert abs(np.trace(k)) <= 1e-12

    @pytest.mark.parametrize("trial", range(10))
    def test_completeness(self, trial, rng):
        ks = choi_to_kraus(random_choi(rng))
        acc = sum(k.conj().T @ k for k in ks.ops)
        np.testing.assert_allclose(acc, np.eye(2), atol=1e-10)

    def test_round_trip(self, rng):
        worst = 0.0
        for _ in range(100):
            c = random_choi(rng)
            worst = max(worst, max_abs(choi_from_kraus(choi_to_kraus(c)), c))
        assert worst <= 1e-12

    def test_rank_at_most_four(self, rng):
        for _ in range(10):
            assert len(choi_to_kraus(random_choi(rng)).ops) <= 4

    def test_rejects_non_psd(self):
        bad = np.diag([0.6, 0.5, -0.1, 0.0]).astype(complex)
        with pytest.raises(ValueError):
            choi_to_kraus(bad)


class TestApplyKraus:
    def test_identity(self):
        v = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
        ks = choi_to_kraus(np.outer(v, v.conj()))
        state = np.array([[0.7, 0.2j], [-0.2j, 0.3]], dtype=complex)
        np.testing.assert_allclose(apply_kraus(ks, state), state, atol=1e-14)

    def test_dimension_mismatch_rejected(self, rng):
        ks = choi_to_kraus(random_choi(rng))
        with pytest.raises(ValueError):
            apply_kraus(ks, np.eye(4))


class TestProtocolKraus:
    def test_operator_counts_two_ports(self):
        pk = protocol_kraus(2)
        assert len(pk.k1) == 2 and len(pk.k2) == 4
        assert all(k.shape == (4, 8) for k in pk.ops)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_operator_counts(self, n):
        pk = protocol_kraus(n)
        assert len(pk.k2) == n + 2
        expected_k1 = sum(
            degeneracy(n - 1, ss) * (ss + 1) for ss in range(1 if n % 2 == 0 else 0, n, 2)
        )
        assert len(pk.k1) == expected_k1

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    @pytest.mark.parametrize("family", [Bell(), AdChoi(0.3), Alternate(0.7)])
    def test_matches_component_assembly(self, n, family):
        pk = protocol_kraus(n)
        got = apply_protocol(pk, reduced_port_state(family, n))
        want = choi_from_reduced(make_family(family, n))
        assert max_abs(got, want) <= 1e-10
        assert abs(np.trace(got) - 1) <= 1e-10

    @pytest.mark.parametrize("n", [2, 3])
    def test_matches_on_random_symmetric(self, n, rng):
        full = random_symmetric_resource(n, rng)
        got = apply_protocol(protocol_kraus(n), trace_to_first_port(full))
        want = choi_from_reduced(reduce_full(full))
        assert max_abs(got, want) <= 1e-10

    def test_bell_resource_gives_depolarizing(self):
        n = 4
        got = apply_protocol(protocol_kraus(n), reduced_port_state(Bell(), n))
        assert max_abs(got, depolarizing_choi(xi(n))) <= 1e-10

    def test_gram_is_available_and_hermitian(self):
        g = protocol_gram(protocol_kraus(2))
        np.testing.assert_allclose(g, g.conj().T, atol=1e-13)

    def test_input_dimension_check(self):
        with pytest.raises(ValueError):
            apply_protocol(protocol_kraus(2), np.eye(4))

    def test_unreduced_multiplicity(self):
        assert unreduced_multiplicity(2) == 2
        assert unreduced_multiplicity(5) == 16


class TestSqrtMeasurement:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_square_equals_dense_element(self, n):
        s = sqrt_measurement_op(n)
        assert max_abs(s @ s, build_povm(n).pi_1) <= 1e-10
