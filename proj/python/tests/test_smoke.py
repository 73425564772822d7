import math

import pytest

import focklab


def test_norm_of_constant():
    r = focklab.norm(focklab.EntireFn("poly: 1"), p=2, alpha=1)
    assert r["value"] == pytest.approx(1.0, abs=1e-9)
    assert r["finite"]


def test_monomial_moment():
    r = focklab.norm(focklab.EntireFn("poly: z^3"), p=2, alpha=1)
    assert r["value"] == pytest.approx(math.sqrt(6), rel=1e-9)


def test_witness_diverges():
    r = focklab.norm(focklab.EntireFn("expsq: gamma=0.5"), p=2, alpha=1)
    assert not r["finite"]
    assert focklab.supnorm(focklab.EntireFn("expsq: gamma=0.5"))["value"] == pytest.approx(1.0, rel=1e-8)


def test_eval_and_calculus():
    f = focklab.EntireFn("poly: z^2")
    assert f(1 + 1j) == pytest.approx(2j)
    assert str(f.partial(0)) == str(focklab.EntireFn("poly: 2*z"))
    k = focklab.kernel(1.0, [1.0], normalized=True)
    assert abs(k(1.0)) == pytest.approx(math.exp(0.5))
    assert f.radial()(0.5) == pytest.approx(0.5)


def test_parse_error():
    with pytest.raises(ValueError, match="position"):
        focklab.EntireFn("poly: 1 + * z")


def test_distance_sandwich():
    d = focklab.distance([2.0], [0.0], alpha=1.0, beta=1.0)["value"]
    assert math.e - 1 <= d <= math.e + 1
    mc = focklab.distance([1.0], [0.0], integrator="mc", samples=20000, seed=3)
    assert mc["stderr"] > 0


def test_gamma():
    assert focklab.incomplete_gamma(1, 1.0) == pytest.approx(math.exp(-1))


def test_suite_report_shape():
    assert "lemma4" in focklab.suite_ids()
    rep = focklab.run_suite("lemma4", alpha=2.0)
    assert rep["verdict"] == "pass"
    assert {"suite", "config", "checks", "envelopes", "verdict", "seed", "version"} <= set(rep)
    again = focklab.run_suite("lemma4", alpha=2.0)
    assert rep == again


def test_unknown_suite():
    with pytest.raises(ValueError):
        focklab.run_suite("nope")
