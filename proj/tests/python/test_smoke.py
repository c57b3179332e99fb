import cmath
import math

import pytest

import czeta

mpmath = pytest.importorskip("mpmath")
mpmath.mp.dps = 40


def close(value, ref, tol):
    return abs(complex(value) - complex(ref)) <= tol


def test_value_object():
    v = czeta.li(2, "0/1")
    assert v.prec_bits == czeta.default_precision() == 192
    assert v.err < 1e-30
    assert close(v, math.pi**2 / 6, 1e-15)
    assert mpmath.mpf(v.re_str) - mpmath.zeta(2) < mpmath.mpf("1e-38")
    d = v.to_dict()
    assert set(d) == {"re", "im", "err", "prec_bits"}
    assert abs(v) == pytest.approx(math.pi**2 / 6)


def test_roots_as_strings_or_pairs():
    a = czeta.cmzv([1, 2], ["0/1", "1/2"])
    b = czeta.cmzv([1, 2], [(0, 1), (1, 2)])
    assert a.re_str == b.re_str
    assert mpmath.mpf(a.re_str) - mpmath.zeta(3) / 8 < mpmath.mpf("1e-38")


def test_hurwitz_polylog_against_mpmath():
    # sum_n x^n / (n + c - 1)^k = x * lerchphi(x, k, c)
    x = cmath.exp(2j * math.pi / 3)
    c = 0.3 + 0.2j
    v = czeta.li(3, "1/3", c)
    ref = mpmath.mpc(x) * mpmath.lerchphi(mpmath.mpc(x), 3, mpmath.mpc(c))
    assert close(v, complex(ref), 1e-14)


def test_phi_and_t_values():
    assert close(czeta.phi(1, "1/2"), math.log(2), 1e-15)
    assert close(czeta.phi_general(1, 0.5), 2 * math.log(2), 1e-15)
    assert close(czeta.phi_ext(0.5, "1/2"), math.pi, 1e-15)
    assert close(czeta.mtv([2], ["0/1"]), math.pi**2 / 2, 1e-14)
    assert close(czeta.mtv_T([2]), math.pi**2 / 4, 1e-14)
    assert close(czeta.mhs(3, [1], ["1/2"]), -5 / 6, 1e-15)
    assert close(czeta.mhs_hurwitz(3, [1], ["0/1"], [0.5]), 1 / 1.5 + 1 / 2.5 + 1 / 3.5, 1e-15)


def test_brackets():
    assert close(czeta.sym_li_bracket(0, "1/3"), -1, 0)
    assert close(czeta.hat_li(1, "0/1", "1/3"), -math.pi / math.tan(math.pi / 3), 1e-14)
    assert close(czeta.hat_ti(2, "1/4"), czeta.hat_li(2, "1/4", 0.5), 1e-30)
    assert close(czeta.jet_rhs_closed_form(0, "1/2", 0.5), -math.pi, 1e-14)


def test_errors():
    with pytest.raises(czeta.DivergenceError):
        czeta.li(1, "0/1")
    with pytest.raises(czeta.PoleError):
        czeta.phi(0, "1/2")
    with pytest.raises(czeta.ParseError):
        czeta.cmzv([2], ["1/0"])
    with pytest.raises(czeta.ConfigError):
        czeta.cmzv([2], ["0/1"], method="magic")
    with pytest.raises(czeta.PreconditionError):
        czeta.check("thm2_1", q=1, x0="0/1", k=[2], x=["0/1"])
    assert issubclass(czeta.PoleError, czeta.Error)


def test_check_and_identities():
    assert "thm2_1" in czeta.identities()
    r = czeta.check("thm2_2", q=2, x0="0/1", k=[2], x=["0/1"], a0="1/3", a=["0.2+0.142857i"])
    assert r["passed"]
    assert abs(float(r["residual"]["re"])) < 1e-30
    bad = czeta.check("cor4_2_alt_sign", q=2, k=[1], x0="1/3", x=["1/4"])
    assert not bad["passed"]


def test_expansion_scaling():
    r = czeta.expansion_scaling("L3_2", 3, 0.01, n=2, x="1/4")
    assert r["expected"] == 16.0
    assert r["passed"]


SUITE = """
seed = 3
[[case]]
id = "zhao_family"
l = 1
[[generate]]
id = "cor4_1"
count = 4
"""


def test_suite_round_trip():
    cases = czeta.generate_cases(SUITE)
    assert len(cases) == 5
    assert cases == czeta.generate_cases(SUITE)
    report = czeta.run_suite(SUITE)
    assert report["schema"] == 1
    assert report["summary"]["total"] == 5
    assert report["summary"]["failed"] == 0


def test_precision_control():
    before = czeta.working_precision()
    try:
        czeta.set_working_precision(128)
        assert czeta.li(2, "0/1").prec_bits == 128
    finally:
        czeta.set_working_precision(before)
    with pytest.raises(czeta.ConfigError):
        czeta.set_working_precision(4)
