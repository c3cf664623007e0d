import math

import numpy as np
import pytest

from octo_cr.core.exceptions import DomainError
from octo_cr.octonion import jets
from octo_cr.octonion.jets import Jet2, OctonionJet2


def xy(x0: float, y0: float):
    return Jet2.variable(x0, 0, 2), Jet2.variable(y0, 1, 2)


class TestJet2:
    def test_product(self):
        x, y = xy(2.0, 3.0)
        f = x * y
        assert f.value == 6.0
        assert f.grad.tolist() == [3.0, 2.0]
        assert f.hess.tolist() == [[0.0, 1.0], [1.0, 0.0]]

    def test_exp_chain_rule(self):
        x, y = xy(0.5, -0.25)
        f = jets.exp(x * y)
        e = math.exp(-0.125)
        assert f.value == pytest.approx(e)
        assert f.grad == pytest.approx([-0.25 * e, 0.5 * e])
        expected = np.array([[0.0625 * e, e - 0.125 * e], [e - 0.125 * e, 0.25 * e]])
        assert np.allclose(f.hess, expected)

    def test_sin_cos(self):
        x, _ = xy(0.3, 0.0)
        assert jets.sin(x).grad[0] == pytest.approx(math.cos(0.3))
        assert jets.cos(x).hess[0, 0] == pytest.approx(-math.cos(0.3))

    def test_division_and_power(self):
        x, y = xy(2.0, 4.0)
        q = x / y
        assert q.value == 0.5
        assert q.grad == pytest.approx([0.25, -0.125])
        p = y**0.5
        assert p.value == pytest.approx(2.0)
        assert p.hess[1, 1] == pytest.approx(-0.25 * 4.0**-1.5)

    def test_hessian_is_symmetric(self):
        x, y = xy(0.7, -1.1)
        f = jets.exp(x) * jets.sin(y * x) + x * x * y / (1.0 + y * y)
        assert np.array_equal(f.hess, f.hess.T)

    def test_scalars_on_either_side(self):
        x, _ = xy(1.5, 0.0)
        f = 2.0 - x * 3.0 + 1.0
        assert f.value == pytest.approx(-1.5)
        assert f.grad.tolist() == [-3.0, 0.0]
        g = np.float64(2.0) * x
        assert isinstance(g, Jet2)

    def test_reciprocal_of_zero(self):
        x, _ = xy(0.0, 1.0)
        with pytest.raises(DomainError):
            1.0 / x

    def test_fractional_power_of_negative(self):
        x, _ = xy(-1.0, 1.0)
        with pytest.raises(DomainError):
            x**0.5


class TestOctonionJet2:
    def test_from_components_mixes_constants(self):
        xs = jets.variables([1.0, 2.0])
        jet = OctonionJet2.from_components([xs[0] * xs[1], 5.0], n=2)
        assert jet.value.tolist() == [2.0, 5.0]
        assert jet.grad.tolist() == [[2.0, 1.0], [0.0, 0.0]]
        assert jet.component(0).hess.tolist() == [[0.0, 1.0], [1.0, 0.0]]
