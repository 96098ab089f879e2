"""CVPNC recognition: neuron activation, max-channel, sampled, multi-copy."""

import numpy as np
import pytest

from qamsim import (
    BankError,
    DimensionError,
    Field,
    FieldError,
    InsufficientCopiesError,
    OrthogonalityError,
    PatternBank,
    RecognitionMode,
    ZeroVectorError,
    classify_max_channel,
    multi_copy_recognize,
    neuron_activation,
    normalize,
    random_unitary,
    recognize_sampled,
    threshold_output,
)

RT2 = np.sqrt(2.0)


def _two_channel_bank():
    return PatternBank(["zero", "one"], np.eye(2), field=Field.REAL)


def _overlap_bank():
    """Two non-orthogonal patterns with pass probabilities 0.9 / 0.4 on e0."""
    w0 = np.array([np.sqrt(0.9), np.sqrt(0.1), 0.0])
    w1 = np.array([np.sqrt(0.4), 0.0, np.sqrt(0.6)])
    return PatternBank(["w0", "w1"], [w0, w1], field=Field.REAL)


class TestPatternBank:
    def test_basic_construction(self):
        bank = _two_channel_bank()
        assert bank.size == 2 and bank.dim == 2
        assert bank.orthogonal

    def test_non_orthogonal_flag(self):
        assert not _overlap_bank().orthogonal

    def test_duplicate_labels_rejected(self):
        with pytest.raises(BankError):
            PatternBank(["x", "x"], np.eye(2))

    def test_whitespace_label_rejected(self):
        with pytest.raises(BankError):
            PatternBank(["a b"], [[1.0, 0.0]])

    def test_empty_bank_rejected(self):
        with pytest.raises(BankError):
            PatternBank([], np.empty((0, 3)))

    def test_non_unit_pattern_rejected(self):
        with pytest.raises(BankError):
            PatternBank(["a"], [[0.5, 0.0]])

    def test_real_field_enforced(self):
        with pytest.raises(FieldError):
            PatternBank(["a"], [[1j, 0.0]], field=Field.REAL)

    def test_states_read_only(self):
        bank = _two_channel_bank()
        with pytest.raises(ValueError):
            bank.states[0, 0] = 2.0


class TestNeuronActivation:
    def test_identity(self):
        assert neuron_activation([1, 0, 0], [1, 0, 0]) == 1.0

    def test_orthogonal(self):
        assert neuron_activation([1 / RT2, 1 / RT2], [1 / RT2, -1 / RT2]) == pytest.approx(
            0.0, abs=1e-15
        )

    def test_direct_substitution(self):
        assert neuron_activation([0.6, 0.8], [1, 0]) == pytest.approx(0.6, abs=1e-15)

    def test_complex_rejected(self):
        with pytest.raises(FieldError):
            neuron_activation([1j, 0], [1, 0])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            neuron_activation([1, 0], [1, 0, 0])


class TestThresholdOutput:
    @pytest.mark.parametrize(
        "activation,threshold,expected",
        [(0.9, 0.5, 1), (0.1, 0.5, 0), (0.5, 0.5, 0)],
    )
    def test_threshold(self, activation, threshold, expected):
        assert threshold_output(activation, threshold) == expected


class TestClassifyMaxChannel:
    def test_exact_pattern(self, rng):
        u = random_unitary(5, rng)
        bank = PatternBank([f"p{i}" for i in range(5)], u)
        for j in range(5):
            res = classify_max_channel(bank, u[j])
            assert res.channel_index == j
            assert res.label == f"p{j}"
            assert res.score == pytest.approx(1.0, abs=1e-12)
            assert res.mode is RecognitionMode.DETERMINISTIC

    def test_scaled_pattern(self, rng):
        u = random_unitary(4, rng)
        bank = PatternBank([f"p{i}" for i in range(4)], u)
        res = classify_max_channel(bank, 7.0 * u[2])
        assert res.channel_index == 2
        assert res.score == pytest.approx(1.0, abs=1e-12)

    def test_direct_substitution(self):
        res = classify_max_channel(_two_channel_bank(), [0.6, 0.8])
        assert res.channel_index == 1
        assert res.score == pytest.approx(0.64, abs=1e-12)

    def test_scale_invariance(self, rng):
        bank = PatternBank([f"p{i}" for i in range(3)], random_unitary(3, rng))
        s = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        base = classify_max_channel(bank, s)
        for alpha in (0.001, 42.0, -3.0, 2.0 - 1.0j):
            res = classify_max_channel(bank, alpha * s)
            assert res.channel_index == base.channel_index
            assert res.score == pytest.approx(base.score, abs=1e-12)

    def test_tie_breaks_to_lowest_index(self):
        bank = _two_channel_bank()
        res = classify_max_channel(bank, [1 / RT2, 1 / RT2])
        assert res.channel_index == 0

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroVectorError):
            classify_max_channel(_two_channel_bank(), [0.0, 0.0])


class TestRecognizeSampled:
    def test_exact_pattern_certain(self, rng):
        bank = _two_channel_bank()
        for _ in range(50):
            res = recognize_sampled(bank, [0.0, 1.0], rng)
            assert res.channel_index == 1
            assert res.label == "one"
            assert res.mode is RecognitionMode.SAMPLED

    def test_superposition_frequency(self):
        # binomial oracle over 1e5 single-shot recognitions
        bank = _two_channel_bank()
        s = np.array([0.6, 0.8])
        g = np.random.default_rng(31)
        n = 100_000
        hits = sum(recognize_sampled(bank, s, g).channel_index == 0 for _ in range(n))
        sigma = np.sqrt(0.36 * 0.64 / n)
        assert abs(hits / n - 0.36) < 3 * sigma

    def test_non_orthogonal_bank_rejected(self, rng):
        with pytest.raises(OrthogonalityError):
            recognize_sampled(_overlap_bank(), [1.0, 0.0, 0.0], rng)

    def test_residual_channel(self, rng):
        # one stored pattern in dim 2, input orthogonal to it
        bank = PatternBank(["only"], [[1.0, 0.0]], field=Field.REAL)
        res = recognize_sampled(bank, [0.0, 1.0], rng)
        assert res.label == "RESIDUAL"
        assert res.channel_index == -1
        assert res.score == pytest.approx(1.0, abs=1e-12)


class TestMultiCopyRecognize:
    def test_exact_pattern(self, rng):
        u = random_unitary(4, rng, field=Field.REAL).real
        bank = PatternBank([f"p{i}" for i in range(4)], u, field=Field.REAL)
        res = multi_copy_recognize(bank, u[1], 400, rng)
        assert res.channel_index == 1
        assert res.score == 1.0
        assert res.mode is RecognitionMode.MULTI_COPY

    def test_non_orthogonal_bank(self):
        # pass probabilities 0.9 vs 0.4; channel 0 must win and both
        # rate estimates must sit inside 4 sigma binomial bounds
        bank = _overlap_bank()
        s = np.array([1.0, 0.0, 0.0])
        m = 2000
        res = multi_copy_recognize(bank, s, m, np.random.default_rng(41))
        assert res.channel_index == 0
        n_each = m // 2
        for rate, p in zip(res.pass_rates, (0.9, 0.4)):
            assert abs(rate - p) < 4 * np.sqrt(p * (1 - p) / n_each)

    def test_high_m_convergence(self):
        bank = _overlap_bank()
        s = np.array([1.0, 0.0, 0.0])
        m = 100_000
        res = multi_copy_recognize(bank, s, m, np.random.default_rng(43))
        n_each = m // 2
        for rate, p in zip(res.pass_rates, (0.9, 0.4)):
            assert abs(rate - p) < 4 * np.sqrt(p * (1 - p) / n_each)

    def test_minimum_copies_edge(self, rng):
        bank = _overlap_bank()
        res = multi_copy_recognize(bank, [1.0, 0.0, 0.0], 2, rng)
        assert res.channel_index in (0, 1)
        assert res.pass_rates.size == 2
        assert set(np.asarray(res.pass_rates).tolist()) <= {0.0, 1.0}

    def test_insufficient_copies(self, rng):
        with pytest.raises(InsufficientCopiesError):
            multi_copy_recognize(_overlap_bank(), [1.0, 0.0, 0.0], 1, rng)

    def test_round_robin_allocation_counts(self):
        # m = 5 over K = 2 filters: first channel gets 3 copies, second 2,
        # visible through the rate denominators
        bank = _overlap_bank()
        res = multi_copy_recognize(bank, normalize([1.0, 1.0, 1.0]), 5, np.random.default_rng(2))
        for rate, n_ch in zip(res.pass_rates, (3, 2)):
            assert abs(rate * n_ch - round(rate * n_ch)) < 1e-12

    def test_non_unit_input_rejected(self, rng):
        from qamsim import NormalizationError

        with pytest.raises(NormalizationError):
            multi_copy_recognize(_overlap_bank(), [2.0, 0.0, 0.0], 10, rng)
