import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octo_cr.core.exceptions import DomainError, ValidationError
from octo_cr.octonion.algebra import (
    E,
    E4_QUATERNION_RULES,
    E4_VECTOR_RULES,
    InvolutionKind,
    Octonion,
    Quaternion,
    Subalgebra,
    conjugate_via_norm,
    e4_basis_rules,
    from_quaternionic,
    involution,
    multiply_arrays,
    parse_basis_label,
    project,
    quaternionic_form,
    structure_table,
)
from octo_cr.octonion.fixtures import diff_table

coefficient = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
octonions = st.lists(coefficient, min_size=8, max_size=8).map(Octonion)
quaternions = st.lists(coefficient, min_size=4, max_size=4).map(Quaternion)


def close(x: Octonion, y: Octonion, scale: float = 1.0) -> bool:
    return bool(np.allclose(x.c, y.c, rtol=1e-9, atol=1e-9 * max(scale, 1.0)))


class TestStructureTable:
    def test_matches_transcription(self):
        assert diff_table() == []

    def test_known_products(self):
        table = structure_table()
        assert table.entry(1, 2) == (1, 3)
        assert table.entry(2, 1) == (-1, 3)
        assert table.entry(1, 4) == (1, 5)
        assert table.entry(4, 1) == (-1, 5)
        assert table.entry(7, 5) == (-1, 2)
        assert table.label(0, 6) == "e6"

    def test_imaginary_units_square_to_minus_one(self):
        table = structure_table()
        for i in range(1, 8):
            assert table.entry(i, i) == (-1, 0)

    def test_rows_are_signed_permutations(self):
        table = structure_table()
        for i in range(8):
            assert sorted(int(k) for k in table.indices[i]) == list(range(8))
            assert set(int(s) for s in table.signs[i]) <= {-1, 1}

    def test_tensor_agrees_with_products(self):
        m = structure_table().tensor()
        for i in range(8):
            for j in range(8):
                assert np.array_equal(m[i, j], (E[i] * E[j]).c)


class TestOctonion:
    @settings(max_examples=50, deadline=None)
    @given(octonions, octonions)
    def test_norm_is_multiplicative(self, x, y):
        assert math.isclose((x * y).norm(), x.norm() * y.norm(), rel_tol=1e-9, abs_tol=1e-9)

    @settings(max_examples=50, deadline=None)
    @given(octonions, octonions)
    def test_alternative_laws(self, x, y):
        scale = (x.norm() ** 2) * y.norm()
        assert close((x * x) * y, x * (x * y), scale)
        assert close((y * x) * x, y * (x * x), scale)
        assert close((x * y) * x, x * (y * x), scale)

    @settings(max_examples=50, deadline=None)
    @given(octonions, octonions)
    def test_conjugation_reverses_products(self, x, y):
        assert close((x * y).conjugate(), y.conjugate() * x.conjugate(), x.norm() * y.norm())

    @settings(max_examples=50, deadline=None)
    @given(octonions)
    def test_conjugate_via_norm(self, x):
        assert close(conjugate_via_norm(x), x.conjugate(), x.norm() ** 2 + 1.0)

    @settings(max_examples=50, deadline=None)
    @given(octonions, octonions)
    def test_hat_involution_is_multiplicative(self, x, y):
        lhs = involution(x * y, InvolutionKind.HAT)
        rhs = involution(x, "hat") * involution(y, "hat")
        assert close(lhs, rhs, x.norm() * y.norm())

    @settings(max_examples=50, deadline=None)
    @given(octonions)
    def test_quaternionic_form_round_trip(self, x):
        a, b = quaternionic_form(x)
        assert from_quaternionic(a, b) == x

    def test_associator_witness(self):
        assert (E[1] * E[2]) * E[4] == -(E[1] * (E[2] * E[4]))

    def test_commutator_witness(self):
        assert E[1] * E[2] == -(E[2] * E[1])

    def test_inverse(self):
        x = Octonion([1.0, 2.0, -1.0, 0.5, 0, 3.0, 0, -2.0])
        assert close(x * x.inverse(), E[0])
        assert close(x.inverse() * x, E[0])

    def test_zero_is_not_invertible(self):
        with pytest.raises(DomainError) as exc:
            Octonion().inverse()
        assert exc.value.error_code == "not_invertible"

    def test_wrong_number_of_coefficients(self):
        with pytest.raises(ValidationError):
            Octonion([1.0, 2.0])

    def test_batched_product_matches_scalar_product(self, rng):
        x, y = rng.standard_normal((2, 6, 8))
        batched = multiply_arrays(x, y)
        for k in range(6):
            assert np.allclose(batched[k], (Octonion(x[k]) * Octonion(y[k])).c, atol=1e-12)


class TestProjections:
    def test_projections_keep_their_subalgebra(self):
        x = Octonion(np.arange(1.0, 9.0))
        assert project(x, Subalgebra.R).c.tolist() == [1.0, 0, 0, 0, 0, 0, 0, 0]
        assert project(x, "C").c.tolist() == [1.0, 0, 0, 0, 5.0, 0, 0, 0]
        assert project(x, "H").c.tolist() == [1.0, 2.0, 3.0, 4.0, 0, 0, 0, 0]

    @settings(max_examples=30, deadline=None)
    @given(octonions)
    def test_projections_are_idempotent(self, x):
        for target in Subalgebra:
            once = project(x, target)
            assert project(once, target) == once

    def test_unknown_subalgebra(self):
        with pytest.raises(ValueError):
            project(E[1], "Z")


class TestE4Calculus:
    @settings(max_examples=30, deadline=None)
    @given(quaternions, quaternions)
    def test_quaternion_rules(self, a, b):
        scale = (a.norm() + 1.0) * (b.norm() + 1.0)
        for name, rule in E4_QUATERNION_RULES.items():
            lhs, rhs = rule(a, b)
            assert close(lhs, rhs, scale), name

    @settings(max_examples=30, deadline=None)
    @given(quaternions, quaternions)
    def test_vector_rules(self, a, b):
        scale = (a.norm() + 1.0) * (b.norm() + 1.0)
        for name, rule in E4_VECTOR_RULES.items():
            lhs, rhs = rule(a, b)
            assert close(lhs, rhs, scale), name

    def test_basis_rules_hold_exactly(self):
        rules = e4_basis_rules()
        assert len(rules) == 27
        for name, lhs, rhs in rules:
            assert lhs == rhs, name


class TestLabels:
    @pytest.mark.parametrize(
        "label, expected",
        [("1", (1, 0)), ("-1", (-1, 0)), ("e3", (1, 3)), ("-e7", (-1, 7)), ("−e_5", (-1, 5))],
    )
    def test_parse(self, label, expected):
        assert parse_basis_label(label) == expected

    @pytest.mark.parametrize("label", ["e8", "x", "", "e"])
    def test_rejects_garbage(self, label):
        with pytest.raises(ValidationError):
            parse_basis_label(label)
