import math

import numpy as np
import pytest

from octo_cr.core.exceptions import PreconditionError, SingularityError, ValidationError
from octo_cr.octonion.algebra import Octonion
from octo_cr.octonion.fields import constant, identity_field
from octo_cr.octonion.integral import (
    SphereSpec,
    cauchy_integral,
    cauchy_kernel,
    estimate_omega8,
    omega8,
    sphere_sample,
)
from octo_cr.octonion.solutions import biaxial_field, fueter_field, get_seed

N = 20_000
CHUNK = 5_000
X = np.array([0.1, -0.15, 0.05, 0.1, 0.2, 0.0, -0.05, 0.1])


class TestSurfaceArea:
    def test_closed_form(self):
        assert omega8() == pytest.approx(math.pi**4 / 3.0, rel=1e-14)

    def test_hit_or_miss_estimate(self):
        estimate, stderr = estimate_omega8(200_000, seed=3)
        assert abs(estimate - omega8()) <= 3.0 * stderr

    def test_sphere_sample_lies_on_sphere(self):
        spec = SphereSpec(np.full(8, 0.5), 2.0)
        pts = sphere_sample(spec, 1_000, seed=1, chunk=300)
        assert pts.shape == (1_000, 8)
        assert np.allclose(np.linalg.norm(pts - 0.5, axis=1), 2.0)


class TestCauchyIntegral:
    @pytest.mark.parametrize(
        "f",
        [
            constant(Octonion([1.0, -2.0, 0.5, 0, 3.0, 0, -1.0, 0.25])),
            fueter_field(1),
            fueter_field(6),
            biaxial_field(get_seed("z")),
        ],
        ids=lambda f: f.name,
    )
    def test_reproduces_monogenic_fields(self, f):
        estimate = cauchy_integral(f, SphereSpec.unit(), X, N, seed=42, workers=1, chunk=CHUNK)
        assert estimate.samples == N
        assert estimate.reproduction_ratio(f.at(X)) <= 1.0

    def test_reproduces_fueter_field_on_real_axis(self):
        f = fueter_field(1)
        x = 0.3 * np.eye(8)[0]
        assert np.allclose(f.at(x).c, [0, -0.3, 0, 0, 0, 0, 0, 0])
        estimate = cauchy_integral(f, SphereSpec.unit(), x, N, seed=42, workers=1, chunk=CHUNK)
        assert estimate.reproduction_ratio(f.at(x)) <= 1.0

    def test_reproduces_biaxial_field_off_axis(self):
        f = biaxial_field(get_seed("z"))
        x = np.array([0, 0.2, 0, 0, 0.1, 0, 0, 0])
        assert np.allclose(f.at(x).c, [0.1 * math.exp(0.04), 0, 0, 0, 0, 0, 0, 0])
        estimate = cauchy_integral(f, SphereSpec.unit(), x, N, seed=42, workers=1, chunk=CHUNK)
        assert estimate.reproduction_ratio(f.at(x)) <= 1.0

    def test_result_does_not_depend_on_workers(self):
        f = fueter_field(3)
        one = cauchy_integral(f, SphereSpec.unit(), X, N, seed=5, workers=1, chunk=CHUNK)
        four = cauchy_integral(f, SphereSpec.unit(), X, N, seed=5, workers=4, chunk=CHUNK)
        assert one.value == four.value
        assert np.array_equal(one.component_stderr, four.component_stderr)

    def test_translated_sphere_matches_translated_field(self):
        f = fueter_field(2)
        offset = np.array([0.5, -0.25, 0.0, 0.125, 0.25, 0.0, -0.5, 0.0])
        moved = cauchy_integral(f, SphereSpec(offset, 1.0), X + offset, N, seed=8, workers=1, chunk=CHUNK)
        shifted = cauchy_integral(f.translated(offset), SphereSpec.unit(), X, N, seed=8, workers=1, chunk=CHUNK)
        assert np.max(np.abs(moved.value.c - shifted.value.c)) < 1e-10

    def test_non_monogenic_field_is_not_reproduced(self):
        f = identity_field()
        x = 0.3 * np.eye(8)[1]
        estimate = cauchy_integral(f, SphereSpec.unit(), x, 100_000, seed=42, workers=2)
        assert estimate.stderr_multiple(f.at(x)) > 5.0

    def test_point_too_close_to_boundary(self):
        with pytest.raises(PreconditionError) as exc:
            cauchy_integral(fueter_field(1), SphereSpec.unit(), 0.95 * np.eye(8)[0], 100, seed=1)
        assert exc.value.error_code == "interior_margin"


class TestValidation:
    def test_radius_must_be_positive(self):
        with pytest.raises(ValidationError):
            SphereSpec(np.zeros(8), 0.0)

    def test_sample_count(self):
        with pytest.raises(ValidationError):
            sphere_sample(SphereSpec.unit(), 0, seed=1)

    def test_kernel_singularity(self):
        x = Octonion.basis(2)
        with pytest.raises(SingularityError):
            cauchy_kernel(x, x)
