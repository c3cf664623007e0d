import numpy as np
import pytest

from octo_cr.core.exceptions import DomainError, ValidationError
from octo_cr.octonion.algebra import Octonion, Quaternion, random_unit_quaternion
from octo_cr.octonion.forms import (
    FormKind,
    LinearMap8,
    bilinear_form,
    form_invariance_residual,
    left_multiplication,
    permutation_0_4,
    random_orthogonal,
    random_symplectic,
    random_unitary,
    rho_action,
    rho_map,
    standard_symplectic,
    symplectic_generator,
    symplectic_invariance_residual,
    symplectic_part_matrix,
)


class TestBilinearForms:
    def test_real_form_is_dot_product(self, rng):
        x, y = rng.standard_normal((2, 8))
        value = bilinear_form(Octonion(x), Octonion(y), FormKind.R)
        assert value.c[0] == pytest.approx(float(x @ y))
        assert np.all(value.c[1:] == 0)

    def test_complex_form_real_part_is_real_form(self, rng):
        x, y = (Octonion(v) for v in rng.standard_normal((2, 8)))
        assert bilinear_form(x, y, "C").c[0] == pytest.approx(bilinear_form(x, y, "R").c[0])

    def test_complex_form_imaginary_part(self, rng):
        x, y = rng.standard_normal((2, 8))
        value = bilinear_form(Octonion(x), Octonion(y), "C")
        assert value.c[4] == pytest.approx(float(x @ symplectic_part_matrix() @ y))

    def test_quaternionic_form_lives_in_h(self, rng):
        x, y = (Octonion(v) for v in rng.standard_normal((2, 8)))
        assert np.all(bilinear_form(x, y, "H").c[4:] == 0)


class TestLinearMaps:
    def test_composition_is_matrix_product(self, rng):
        a = LinearMap8(rng.standard_normal((8, 8)))
        b = LinearMap8(rng.standard_normal((8, 8)))
        x = Octonion(rng.standard_normal(8))
        assert np.allclose((a @ b)(x).c, a(b(x)).c)

    def test_permutation_swaps_0_and_4(self):
        x = Octonion(np.arange(8.0))
        assert permutation_0_4()(x).c.tolist() == [4.0, 1, 2, 3, 0, 5, 6, 7]

    def test_left_multiplication_matrix(self, rng):
        a, x = (Octonion(v) for v in rng.standard_normal((2, 8)))
        assert np.allclose(left_multiplication(a)(x).c, (a * x).c)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValidationError):
            LinearMap8(np.eye(4))


class TestInvariance:
    @pytest.mark.parametrize("name", ["orthogonal-0", "orthogonal-1", "orthogonal-2"])
    def test_orthogonal_maps_preserve_real_form(self, name):
        t = random_orthogonal(11, name)
        assert t.orthogonality_residual() < 1e-12
        assert t.det() == pytest.approx(1.0)
        assert form_invariance_residual(t, FormKind.R, 50, 11) < 1e-10

    def test_rho_preserves_quaternionic_form(self, rng):
        q, p = random_unit_quaternion(rng), random_unit_quaternion(rng)
        t = rho_map(q, p)
        assert form_invariance_residual(t, FormKind.H, 50, 3) < 1e-10
        assert t.orthogonality_residual() < 1e-12

    def test_rho_rejects_non_unit(self):
        with pytest.raises(DomainError) as exc:
            rho_action(Quaternion([2.0, 0, 0, 0]), Quaternion.real(1.0), Octonion.basis(1))
        assert exc.value.error_code == "non_unit"

    def test_symplectic_generator(self):
        j = standard_symplectic()
        assert np.array_equal(j.T @ j, np.eye(8))
        assert symplectic_invariance_residual(symplectic_generator(), 50, 5) < 1e-10

    def test_random_symplectic(self):
        assert symplectic_invariance_residual(random_symplectic(5), 50, 5) < 1e-9

    def test_unitary_preserves_complex_form(self):
        t = random_unitary(9)
        assert form_invariance_residual(t, FormKind.C, 50, 9) < 1e-10

    def test_scaling_breaks_invariance(self):
        t = LinearMap8(np.diag([2.0, 1, 1, 1, 1, 1, 1, 1]))
        assert form_invariance_residual(t, FormKind.R, 50, 1) > 0.1
        assert symplectic_invariance_residual(t, 50, 1) > 0.1
