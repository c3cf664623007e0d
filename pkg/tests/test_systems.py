import numpy as np
import pytest

from octo_cr.core.exceptions import PreconditionError, ValidationError
from octo_cr.octonion.fields import QuadraticField, random_quadratic_field
from octo_cr.octonion.operators import cauchy_riemann_left, cauchy_riemann_right
from octo_cr.octonion.solutions import fueter_field
from octo_cr.octonion.systems import (
    QuaternionicSplit,
    RealTerm,
    complex_system_residual,
    complex_to_real,
    corollary_special_case_residual,
    decomposition_deviation,
    diff_systems,
    equivalence_report,
    generated_complex_system,
    generated_real_system,
    quaternionic_system_residual,
    real_system_residual,
    riesz_system_residual,
    transcribed_systems,
)


def corollary_fixture() -> QuadraticField:
    """g = x0 x4，h = (x4^2 - x0^2) / 2"""
    q = np.zeros((8, 8, 8))
    q[0, 0, 4] = 1.0
    q[4, 4, 4] = 0.5
    q[4, 0, 0] = -0.5
    return QuadraticField(np.zeros(8), np.zeros((8, 8)), q, name="corollary-a")


class TestGeneratedSystems:
    def test_first_real_equation(self):
        eq = generated_real_system().equations[0]
        assert eq[0] == RealTerm(1, 0, 0)
        assert sorted(eq[1:], key=lambda t: t.derivative) == [RealTerm(-1, i, i) for i in range(1, 8)]

    def test_every_real_equation_has_eight_terms(self):
        for eq in generated_real_system().equations:
            assert len(eq) == 8
            assert sorted(t.derivative for t in eq) == list(range(8))

    def test_complex_shape(self):
        system = generated_complex_system()
        assert len(system.equations) == 4
        assert all(len(eq) == 4 for eq in system.equations)

    def test_only_the_acknowledged_typo_differs(self):
        mismatches = diff_systems()
        assert [m for m in mismatches if not m.acknowledged] == []
        acknowledged = [m for m in mismatches if m.acknowledged]
        assert len(acknowledged) == 1
        m = acknowledged[0]
        assert (m.system, m.equation, m.term, m.generated, m.transcribed) == ("real", 2, (7, 5), -1, 1)

    def test_transcribed_complex_system_matches(self):
        _, complex_t = transcribed_systems()
        assert complex_t == generated_complex_system()

    def test_render(self):
        lines = generated_real_system().render()
        assert len(lines) == 8
        assert lines[0].startswith("d0f0") and lines[0].endswith("= 0")


class TestResiduals:
    def test_real_residual_repacks_left_operator(self, rng, points):
        f = random_quadratic_field(rng)
        for x in points:
            assert np.allclose(real_system_residual(f, x).values, cauchy_riemann_left(f, x).c, atol=1e-12)

    def test_complex_residual_repacks_real_residual(self, rng, points):
        f = random_quadratic_field(rng)
        for x in points:
            real = real_system_residual(f, x).values
            assert np.allclose(complex_to_real(complex_system_residual(f, x)), real, atol=1e-12)

    def test_quaternionic_left_repacks_left_operator(self, rng, points):
        f = random_quadratic_field(rng)
        split = QuaternionicSplit.from_field(f)
        for x in points:
            q1, q2 = quaternionic_system_residual(split, x, "left").values
            assert np.allclose(np.concatenate([q1, q2]), cauchy_riemann_left(f, x).c, atol=1e-12)

    def test_quaternionic_right_repacks_right_operator(self, rng, points):
        f = random_quadratic_field(rng)
        split = QuaternionicSplit.from_field(f)
        for x in points:
            q1, q2 = quaternionic_system_residual(split, x, "right").values
            assert np.allclose(np.concatenate([q1, q2]), cauchy_riemann_right(f, x).c, atol=1e-12)

    def test_unknown_side(self, points):
        split = QuaternionicSplit.from_field(fueter_field(1))
        with pytest.raises(ValidationError):
            quaternionic_system_residual(split, points[0], "up")

    def test_split_reassembles(self, rng, points):
        f = random_quadratic_field(rng)
        assert QuaternionicSplit.from_field(f).reassembly_residual(f, points) < 1e-14

    def test_riesz_system_for_fueter_fields(self, points):
        for i in range(1, 8):
            assert riesz_system_residual(fueter_field(i), points[0]).max_norm < 1e-12


class TestSpecialCases:
    def test_real_valued_halves(self, points):
        split = QuaternionicSplit.from_field(corollary_fixture())
        for x in points:
            assert corollary_special_case_residual(split, x, "a").max_norm < 1e-12
            assert quaternionic_system_residual(split, x, "left").max_norm < 1e-12

    def test_precondition(self, rng, points):
        split = QuaternionicSplit.from_field(random_quadratic_field(rng))
        with pytest.raises(PreconditionError):
            corollary_special_case_residual(split, points[0], "a")
        with pytest.raises(PreconditionError):
            corollary_special_case_residual(split, points[0], "b")

    def test_unknown_part(self, points):
        split = QuaternionicSplit.from_field(corollary_fixture())
        with pytest.raises(ValidationError):
            corollary_special_case_residual(split, points[0], "c")


class TestEquivalence:
    def test_monogenic_field_agrees_everywhere(self, points):
        report = equivalence_report(fueter_field(5), points)
        assert report.disagreements == []
        assert report.max_abstract < 1e-12
        assert report.max_system < 1e-12
        assert report.max_repack < 1e-12

    def test_non_monogenic_field_fails_everywhere(self, rng, points):
        report = equivalence_report(random_quadratic_field(rng), points)
        assert report.disagreements == []
        assert report.max_abstract > 1e-3

    def test_second_order_decomposition(self, rng, points):
        f = random_quadratic_field(rng)
        for x in points:
            assert decomposition_deviation(f, x) < 1e-10
