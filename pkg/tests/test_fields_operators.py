import numpy as np
import pytest

from octo_cr.core.exceptions import SingularityError, ValidationError
from octo_cr.octonion.algebra import E, Octonion
from octo_cr.octonion.fields import (
    constant,
    coordinate,
    identity_field,
    random_quadratic_field,
    squared_norm_field,
)
from octo_cr.octonion.operators import (
    bracketing_gap,
    cauchy_riemann_left,
    cauchy_riemann_right,
    conjugate_cr,
    factorization_residual,
    finite_difference_deviation,
    jet_value_deviation,
    laplacian,
    recombination_residual,
    right_then_left_residual,
)
from octo_cr.octonion.solutions import KERNEL_POLE, biaxial_field, cauchy_kernel_field, fueter_field, get_seed


class TestFields:
    def test_batched_evaluation_matches_pointwise(self, points):
        f = fueter_field(2) * identity_field() + coordinate(3).exp()
        batched = f.evaluate(points)
        for k, x in enumerate(points):
            assert np.allclose(batched[k], f.at(x).c)

    def test_product_follows_bracketing(self, points):
        left = (constant(E[1]) * constant(E[2])) * constant(E[4])
        right = constant(E[1]) * (constant(E[2]) * constant(E[4]))
        assert left.at(points[0]) == -right.at(points[0])

    def test_translation(self, points):
        f = biaxial_field(get_seed("z"))
        offset = np.linspace(-0.2, 0.2, 8)
        assert np.allclose(f.translated(offset).at(points[1]).c, f.at(points[1] + offset).c)

    def test_conjugate_and_projection(self, points):
        x = points[0]
        f = identity_field()
        assert f.conjugate().at(x) == Octonion(x).conjugate()
        assert np.all(f.project("H").at(x).c[4:] == 0)

    def test_bad_point_shape(self):
        with pytest.raises(ValidationError):
            identity_field().evaluate(np.zeros((3, 7)))

    def test_bad_coordinate(self):
        with pytest.raises(ValidationError):
            coordinate(8)

    def test_kernel_pole(self):
        with pytest.raises(SingularityError):
            cauchy_kernel_field().at(KERNEL_POLE.c)
        with pytest.raises(SingularityError):
            cauchy_kernel_field().jet(KERNEL_POLE.c)


class TestFirstOrderOperators:
    def test_identity_field(self, points):
        x = points[0]
        assert cauchy_riemann_left(identity_field(), x).c == pytest.approx([-6.0] + [0.0] * 7)
        assert cauchy_riemann_right(identity_field(), x).c == pytest.approx([-6.0] + [0.0] * 7)
        assert conjugate_cr(identity_field(), x).c == pytest.approx([8.0] + [0.0] * 7)

    def test_conjugate_field_is_anti_monogenic(self, points):
        assert cauchy_riemann_left(identity_field().conjugate(), points[0]).c[0] == pytest.approx(8.0)

    @pytest.mark.parametrize("index", range(1, 8))
    def test_fueter_fields_are_two_sided_monogenic(self, points, index):
        f = fueter_field(index)
        for x in points:
            assert cauchy_riemann_left(f, x).norm() < 1e-12
            assert cauchy_riemann_right(f, x).norm() < 1e-12

    def test_cauchy_kernel_is_monogenic_away_from_pole(self, points):
        f = cauchy_kernel_field()
        for x in points:
            assert cauchy_riemann_left(f, x).norm() < 1e-10
            assert cauchy_riemann_right(f, x).norm() < 1e-10

    def test_recombination(self, rng, points):
        f = random_quadratic_field(rng)
        for x in points:
            assert recombination_residual(f, x) < 1e-12


class TestSecondOrderOperators:
    def test_laplacian_of_squared_norm(self, points):
        assert laplacian(squared_norm_field(), points[0]).c == pytest.approx([16.0] + [0.0] * 7)

    def test_factorization(self, rng, points):
        f = random_quadratic_field(rng)
        for x in points:
            assert factorization_residual(f, x).norm() < 1e-10

    def test_bracketing_order_does_not_matter(self, rng, points):
        f = random_quadratic_field(rng)
        for x in points:
            assert bracketing_gap(f, x) < 1e-10

    def test_right_then_left_of_squared_norm(self, points):
        # (d0^2 - sum_j dj^2) |x|^2 = 2 - 14
        assert right_then_left_residual(squared_norm_field(), points[0]).c == pytest.approx([-12.0] + [0.0] * 7)


class TestJetAgainstFiniteDifferences:
    @pytest.mark.parametrize("seed", ["const", "z", "z2", "exp"])
    def test_biaxial(self, points, seed):
        f = biaxial_field(get_seed(seed))
        first, second = finite_difference_deviation(f, points[2])
        assert first < 1e-6
        assert second < 1e-4
        assert jet_value_deviation(f, points[2]) < 1e-12

    def test_cauchy_kernel(self, points):
        first, second = finite_difference_deviation(cauchy_kernel_field(), points[3])
        assert first < 1e-6
        assert second < 1e-4
