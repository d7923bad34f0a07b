"""
Testes para o módulo de evidências.

Logits → evidência (Softplus + 1) → opinião (crenças + incerteza).
"""

import math

import numpy as np
import pytest

from src.evidence import (
    evidence_batch,
    evidence_from_logits,
    opinion_from_evidence,
    opinion_from_logits,
    opinion_from_parts,
    opinions_from_logits_batch,
    predicted_class,
    predicted_classes_batch,
    softplus,
    softplus_derivative,
)
from src.exceptions import InvalidEvidence, InvalidInput, InvalidOpinion, NotNormalized
from src.models import Evidence, Opinion


class TestSoftplus:
    """Testes da softplus por partes."""

    def test_zero(self):
        """softplus(0) = ln 2."""
        assert float(softplus(0.0)) == pytest.approx(math.log(2.0), abs=1e-15)

    def test_large_values_do_not_overflow(self):
        """Valores extremos não geram overflow nem NaN."""
        values = softplus(np.array([-1e4, -50.0, 50.0, 1e4]))

        assert np.all(np.isfinite(values))
        assert values[0] == 0.0
        assert values[3] == pytest.approx(1e4)

    def test_matches_reference_in_middle_range(self):
        """No trecho central coincide com log(1 + exp(x))."""
        x = np.linspace(-20, 20, 101)
        expected = [math.log1p(math.exp(v)) for v in x]

        np.testing.assert_allclose(softplus(x), expected, rtol=1e-14)

    def test_derivative_is_sigmoid(self):
        """Derivada no trecho central é a sigmoide."""
        x = np.linspace(-10, 10, 41)

        np.testing.assert_allclose(softplus_derivative(x), 1.0 / (1.0 + np.exp(-x)), rtol=1e-12)

    def test_derivative_matches_finite_differences(self):
        """Derivada bate com diferenças centrais, inclusive perto das emendas."""
        x = np.array([-35.0, -29.0, -1.0, 0.0, 2.5, 29.0, 35.0])
        h = 1e-6
        numeric = (softplus(x + h) - softplus(x - h)) / (2 * h)

        np.testing.assert_allclose(softplus_derivative(x), numeric, rtol=1e-6, atol=1e-12)


class TestEvidenceFromLogits:
    """Testes para evidence_from_logits."""

    def test_zero_logits(self):
        """(0, 0) → (1 + ln 2, 1 + ln 2)."""
        evidence = evidence_from_logits([0.0, 0.0])

        assert evidence.values == pytest.approx((1.693147, 1.693147), abs=1e-6)

    def test_large_logit_asymptote(self):
        """(100, 0) → (≈101, ≈1.693147)."""
        evidence = evidence_from_logits([100.0, 0.0])

        assert evidence.values[0] == pytest.approx(101.0, abs=1e-9)
        assert evidence.values[1] == pytest.approx(1.0 + math.log(2.0), abs=1e-9)

    def test_mixed_signs(self):
        """(1, −1) → (2.313262, 1.313262)."""
        evidence = evidence_from_logits([1.0, -1.0])

        assert evidence.values[0] == pytest.approx(1.0 + math.log1p(math.e), abs=1e-12)
        assert evidence.values == pytest.approx((2.313262, 1.313262), abs=1e-6)

    def test_non_finite_logits_rejected(self):
        """NaN ou infinito geram InvalidInput."""
        with pytest.raises(InvalidInput):
            evidence_from_logits([0.0, float("nan")])
        with pytest.raises(InvalidInput):
            evidence_from_logits([float("inf"), 0.0])

    def test_single_class_rejected(self):
        """Menos de 2 classes não é aceito."""
        with pytest.raises(InvalidInput):
            evidence_from_logits([1.0])

    def test_monotone_per_coordinate(self):
        """x ≤ y implica e(x) ≤ e(y)."""
        rng = np.random.default_rng(3)
        x = np.sort(rng.uniform(-60, 60, size=5000))

        evidence = evidence_batch(x.reshape(-1, 2))

        assert np.all(np.diff(evidence.reshape(-1)) >= 0.0)


class TestOpinionFromEvidence:
    """Testes para opinion_from_evidence."""

    def test_baseline_evidence_is_vacuous(self):
        """e = (1, 1) → b = (0, 0), u = 1."""
        opinion = opinion_from_evidence(Evidence(values=(1.0, 1.0)))

        assert opinion.beliefs == (0.0, 0.0)
        assert opinion.uncertainty == 1.0

    def test_two_classes(self):
        """e = (3, 1) → b = (0.5, 0), u = 0.5."""
        opinion = opinion_from_evidence(Evidence(values=(3.0, 1.0)))

        assert opinion.beliefs == pytest.approx((0.5, 0.0))
        assert opinion.uncertainty == pytest.approx(0.5)

    def test_three_classes(self):
        """e = (2, 2, 2) → b = (1/6, 1/6, 1/6), u = 0.5."""
        opinion = opinion_from_evidence(Evidence(values=(2.0, 2.0, 2.0)))

        assert opinion.beliefs == pytest.approx((1 / 6, 1 / 6, 1 / 6))
        assert opinion.uncertainty == pytest.approx(0.5)

    def test_evidence_below_one_rejected(self):
        """Evidência < 1 é inválida."""
        with pytest.raises(InvalidEvidence):
            opinion_from_evidence(Evidence(values=(0.5, 2.0)))

    def test_round_trip_recovers_evidence(self):
        """S = C/u e e_c = b_c·S + 1 reconstroem a evidência."""
        rng = np.random.default_rng(11)
        for _ in range(200):
            values = 1.0 + rng.exponential(3.0, size=rng.integers(2, 9))
            opinion = opinion_from_evidence(Evidence(values=tuple(values)))

            strength = opinion.num_classes / opinion.uncertainty
            rebuilt = np.array(opinion.beliefs) * strength + 1.0
            np.testing.assert_allclose(rebuilt, values, atol=1e-9)

    def test_logits_near_float_limit(self):
        """Logits finitos perto do maior float → opinião finita e normalizada."""
        opinion = opinion_from_logits([1e308, 1e308])

        assert opinion.beliefs == pytest.approx((0.5, 0.5))
        assert 0.0 < opinion.uncertainty < 1e-300
        assert math.fsum(opinion.beliefs) + opinion.uncertainty == pytest.approx(1.0, abs=1e-12)

    def test_batch_logits_near_float_limit(self):
        """A API em lote também não produz NaN perto do maior float."""
        beliefs, uncertainty = opinions_from_logits_batch(np.array([[1e308, 1e308], [1e308, -1e308]]))

        np.testing.assert_allclose(beliefs, [[0.5, 0.5], [1.0, 0.0]])
        assert np.all(np.isfinite(uncertainty)) and np.all(uncertainty > 0.0)


class TestNormalization:
    """Invariante Σ b + u = 1 em larga escala."""

    def test_random_logits_are_normalized(self):
        """10^5 vetores aleatórios, C entre 2 e 8, entradas em [−10, 10]."""
        rng = np.random.default_rng(2024)
        for num_classes in range(2, 9):
            logits = rng.uniform(-10, 10, size=(100_000 // 7, num_classes))
            beliefs, uncertainty = opinions_from_logits_batch(logits)

            residual = np.abs(beliefs.sum(axis=1) + uncertainty - 1.0)
            assert residual.max() <= 1e-12
            assert beliefs.min() >= 0.0
            assert np.all(uncertainty > 0.0) and np.all(uncertainty <= 1.0)

    def test_scalar_and_batch_agree(self):
        """A API escalar e a em lote produzem os mesmos valores."""
        rng = np.random.default_rng(5)
        logits = rng.uniform(-5, 5, size=(20, 4))
        beliefs, uncertainty = opinions_from_logits_batch(logits)

        for i, row in enumerate(logits):
            opinion = opinion_from_logits(row)
            np.testing.assert_allclose(opinion.beliefs, beliefs[i], rtol=1e-13)
            assert opinion.uncertainty == pytest.approx(uncertainty[i], rel=1e-13)


class TestOpinionFromParts:
    """Testes para opinion_from_parts."""

    def test_vacuous(self):
        """b = (0, 0), u = 1 → opinião vazia."""
        assert opinion_from_parts([0.0, 0.0], 1.0) == Opinion.vacuous(2)

    def test_certain(self):
        """b = (1, 0), u = 0 → certeza na classe 0."""
        opinion = opinion_from_parts([1.0, 0.0], 0.0)

        assert opinion.beliefs == (1.0, 0.0)
        assert opinion.uncertainty == 0.0

    def test_already_normalized_kept(self):
        """b = (0.6, 0.2), u = 0.2 é aceito como está."""
        opinion = opinion_from_parts([0.6, 0.2], 0.2)

        assert opinion.beliefs == pytest.approx((0.6, 0.2), abs=1e-15)
        assert opinion.uncertainty == pytest.approx(0.2, abs=1e-15)

    def test_rounding_residual_is_removed(self):
        """Resíduo decimal dentro da tolerância é renormalizado."""
        opinion = opinion_from_parts([0.3333333333, 0.3333333333], 0.3333333333 + 5e-10)

        assert opinion.residual <= 1e-15

    def test_negative_component_rejected(self):
        """Componente negativo gera InvalidOpinion."""
        with pytest.raises(InvalidOpinion):
            opinion_from_parts([1.1, -0.1], 0.0)

    def test_sum_deviation_rejected(self):
        """Soma longe de 1 gera NotNormalized."""
        with pytest.raises(NotNormalized):
            opinion_from_parts([0.5, 0.2], 0.2)


class TestPredictedClass:
    """Testes para predicted_class."""

    def test_unique_maximum(self):
        """b = (0.5, 0, 0), u = 0.5 → 0."""
        assert predicted_class(Opinion(beliefs=(0.5, 0.0, 0.0), uncertainty=0.5)) == 0

    def test_tie_goes_to_lowest_index(self):
        """b = (0.3, 0.3), u = 0.4 → 0."""
        assert predicted_class(Opinion(beliefs=(0.3, 0.3), uncertainty=0.4)) == 0

    def test_middle_class(self):
        """b = (0.1, 0.6, 0.1), u = 0.2 → 1."""
        assert predicted_class(Opinion(beliefs=(0.1, 0.6, 0.1), uncertainty=0.2)) == 1

    def test_invariant_under_evidence_scaling(self):
        """Escalar o excesso de evidência não muda a classe predita."""
        rng = np.random.default_rng(17)
        for _ in range(200):
            excess = rng.exponential(2.0, size=rng.integers(2, 7))
            scale = rng.uniform(0.1, 10.0)
            base = opinion_from_evidence(Evidence(values=tuple(1.0 + excess)))
            scaled = opinion_from_evidence(Evidence(values=tuple(1.0 + scale * excess)))

            assert predicted_class(base) == predicted_class(scaled)

    def test_batch_argmax(self):
        """predicted_classes_batch também desempata pelo menor índice."""
        beliefs = np.array([[0.3, 0.3, 0.1], [0.1, 0.2, 0.5]])

        assert predicted_classes_batch(beliefs).tolist() == [0, 2]
