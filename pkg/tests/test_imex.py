import math

import numpy as np
import pytest

from lowmach.imex import DoubleTableau, ars111, ars222, get_scheme, validate_tableau


class TestArs111:
    def test_explicit_rows(self):
        t = ars111()
        np.testing.assert_allclose(t.a_exp, [[0, 0], [1, 0]])
        np.testing.assert_allclose(t.b_exp, [1, 0])

    def test_implicit_rows(self):
        t = ars111()
        np.testing.assert_allclose(t.a_imp, [[0, 0], [0, 1]])
        np.testing.assert_allclose(t.b_imp, [0, 1])

    def test_abscissae(self):
        t = ars111()
        np.testing.assert_allclose(t.c_exp, [0, 1])
        np.testing.assert_allclose(t.c_imp, [0, 1])

    def test_validates(self):
        assert validate_tableau(ars111()) == []


class TestArs222:
    def test_gamma_delta(self):
        t = ars222()
        g = 1.0 - 1.0 / math.sqrt(2.0)
        d = 1.0 - 1.0 / (2.0 * g)
        assert t.a_imp[1, 1] == pytest.approx(0.29289321881, abs=1e-11)
        assert t.a_exp[2, 0] == pytest.approx(-0.70710678, abs=1e-8)
        assert t.a_imp[1, 1] == pytest.approx(g, abs=1e-15)
        assert t.a_exp[2, 0] == pytest.approx(d, abs=1e-15)

    def test_gsa_rows(self):
        t = ars222()
        g = 1.0 - 1.0 / math.sqrt(2.0)
        np.testing.assert_allclose(t.a_imp[2], [0.0, 1.0 - g, g], atol=1e-15)
        np.testing.assert_allclose(t.a_imp[2], t.b_imp, atol=0)
        np.testing.assert_allclose(t.a_exp[2], t.b_exp, atol=0)

    def test_validates(self):
        assert validate_tableau(ars222()) == []

    def test_weights_sum_to_one(self):
        for t in (ars111(), ars222()):
            assert abs(t.b_exp.sum() - 1.0) <= 1e-15
            assert abs(t.b_imp.sum() - 1.0) <= 1e-15


class TestValidation:
    def test_broken_gsa_detected(self):
        t = ars222()
        broken = DoubleTableau(
            name="broken", a_exp=t.a_exp, a_imp=t.a_imp, b_exp=t.b_exp, b_imp=[0.0, 1.0, 0.0]
        )
        problems = validate_tableau(broken)
        assert any("GSA" in p for p in problems)

    def test_non_lower_triangular_detected(self):
        t = ars111()
        broken = DoubleTableau(
            name="broken",
            a_exp=[[0.0, 0.5], [1.0, 0.0]],
            a_imp=t.a_imp,
            b_exp=t.b_exp,
            b_imp=t.b_imp,
        )
        assert any("strictly lower" in p for p in validate_tableau(broken))

    def test_get_scheme(self):
        assert get_scheme("ars111").s == 2
        assert get_scheme("ars222").s == 3
        with pytest.raises(KeyError):
            get_scheme("rk4")
