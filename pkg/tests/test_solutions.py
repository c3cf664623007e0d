import numpy as np
import pytest

from octo_cr.core.exceptions import DomainError, ValidationError
from octo_cr.core.rng import ball_shell
from octo_cr.octonion.algebra import Octonion, Quaternion, random_unit_quaternion
from octo_cr.octonion.operators import cauchy_riemann_left, laplacian
from octo_cr.octonion.solutions import (
    SEEDS,
    BiaxialCoordinates,
    biaxial_field,
    biaxial_invariants,
    diagnose_display_signs,
    fueter_field,
    get_seed,
    monogenic_fixtures,
    pq_residual,
    reduced_system_residual,
    rotate_biaxial,
    seed_residual,
    transport_residual,
)


@pytest.fixture
def wide_points(rng):
    """半径 1.5 的球内的点"""
    return ball_shell(rng, 6, 8, 0.0, 1.5)


class TestFixtures:
    def test_fixture_order(self):
        names = [f.name for f in monogenic_fixtures()]
        assert names[1:8] == [f"fueter-{i}" for i in range(1, 8)]
        assert names[8:12] == ["biaxial-const", "biaxial-z", "biaxial-z2", "biaxial-exp"]
        assert len(names) == 13

    def test_fixtures_are_left_monogenic(self, wide_points):
        for f in monogenic_fixtures():
            for x in wide_points:
                assert cauchy_riemann_left(f, x).norm() < 1e-9, f.name

    def test_fixtures_are_harmonic(self, wide_points):
        for f in monogenic_fixtures():
            for x in wide_points:
                assert laplacian(f, x).norm() < 1e-7, f.name

    def test_bad_fueter_index(self):
        with pytest.raises(ValidationError):
            fueter_field(0)
        with pytest.raises(ValidationError):
            fueter_field(8)

    def test_unknown_seed(self):
        with pytest.raises(ValidationError):
            get_seed("sinh")


class TestHolomorphicSeeds:
    @pytest.mark.parametrize("name", sorted(SEEDS))
    def test_planar_cauchy_riemann(self, name, rng):
        assert seed_residual(SEEDS[name], rng.uniform(-1.0, 1.0, (10, 2))) < 1e-12


class TestBiaxial:
    def test_display_signs(self, wide_points):
        diagnosis = diagnose_display_signs(get_seed("z"), wide_points)
        assert diagnosis["printed"] < 1e-9
        assert min(v for k, v in diagnosis.items() if k != "printed") > 1e-6

    def test_unknown_variant(self):
        with pytest.raises(ValidationError):
            biaxial_field(get_seed("z"), "everything_negated")

    @pytest.mark.parametrize("name", sorted(SEEDS))
    def test_reduced_system(self, name, wide_points):
        seed = SEEDS[name]
        for x in wide_points:
            coords = BiaxialCoordinates.from_point(x)
            assert np.max(np.abs(reduced_system_residual(seed, coords))) < 1e-9
            assert np.max(np.abs(transport_residual(seed, coords))) < 1e-9

    @pytest.mark.parametrize("c, alpha, beta", [(0.0, 1.0, 0.0), (0.3, -0.5, 2.0), (1.2, 0.7, 0.7)])
    def test_pq_system(self, c, alpha, beta):
        assert np.max(np.abs(pq_residual(c, alpha, beta))) < 1e-12

    def test_infeasible_coordinates(self):
        with pytest.raises(DomainError):
            BiaxialCoordinates(0.0, 0.0, 1.0, 1.0, 2.0)
        with pytest.raises(DomainError):
            BiaxialCoordinates(0.0, 0.0, -1.0, 1.0, 0.0)

    def test_rotation_preserves_invariants_and_values(self, rng, wide_points):
        s = random_unit_quaternion(rng)
        f = biaxial_field(get_seed("exp"))
        for x in wide_points:
            rotated = rotate_biaxial(Octonion(x), s)
            assert np.allclose(biaxial_invariants(rotated), biaxial_invariants(x), atol=1e-12)
            assert np.allclose(f.at(rotated.c).c, f.at(x).c, rtol=1e-10, atol=1e-10)

    def test_rotation_needs_unit_quaternion(self):
        with pytest.raises(DomainError):
            rotate_biaxial(Octonion.basis(1), Quaternion([1.0, 1.0, 0, 0]))
