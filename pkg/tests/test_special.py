"""Special-function accuracy against scipy as an independent oracle."""

import math

import pytest
import scipy.special as sp
from hypothesis import given, strategies as st

from losskit.special import (
    betainc,
    erf,
    gammainc_lower,
    gammainc_upper,
    lgamma,
    norm_cdf,
    norm_ppf,
)


@given(st.floats(0.05, 200.0))
def test_lgamma_matches_scipy(x):
    assert lgamma(x) == pytest.approx(sp.gammaln(x), rel=1e-13, abs=1e-13)


@given(st.floats(0.05, 100.0), st.floats(0.0, 300.0))
def test_gammainc_matches_scipy(a, x):
    assert gammainc_lower(a, x) == pytest.approx(sp.gammainc(a, x), rel=1e-11, abs=1e-13)
    assert gammainc_upper(a, x) == pytest.approx(sp.gammaincc(a, x), rel=1e-11, abs=1e-13)


@given(st.floats(0.05, 60.0), st.floats(0.05, 60.0), st.floats(0.0, 1.0))
def test_betainc_matches_scipy(a, b, x):
    assert betainc(a, b, x) == pytest.approx(sp.betainc(a, b, x), rel=1e-10, abs=1e-12)


@given(st.floats(-6.0, 6.0))
def test_erf_matches_scipy(x):
    assert erf(x) == pytest.approx(sp.erf(x), rel=1e-12, abs=1e-14)


@given(st.floats(1e-9, 1.0 - 1e-9))
def test_norm_ppf_inverts_cdf(p):
    assert norm_cdf(norm_ppf(p)) == pytest.approx(p, abs=1e-12)


def test_norm_ppf_known_values():
    assert norm_ppf(0.975) == pytest.approx(1.959963984540054, abs=1e-9)
    assert norm_ppf(0.5) == 0.0
    assert norm_ppf(0.05) == pytest.approx(-1.6448536269514722, abs=1e-9)


def test_domain_errors():
    with pytest.raises(ValueError):
        norm_ppf(0.0)
    with pytest.raises(ValueError):
        gammainc_lower(-1.0, 2.0)
