import json
import math

import numpy as np
import pytest
from scipy import integrate, stats

from graphcons import distributions as d
from graphcons.distributions import DistributionSpec
from graphcons.errors import InvalidArgument

from oracles import fourth_central_moment

BASE_SPECS = [
    d.uniform(-1, 1), d.normal(0, 1), d.poisson(4), d.binomial(20, 0.5), d.exponential(1),
    d.chi_square(3),
]
EXTRA_SPECS = [
    d.uniform(2, 25), d.normal(10, 2), d.normal(7.5, 2), d.poisson(2), d.poisson(50),
    d.binomial(100, 0.3), d.binomial(1, 0.25), d.exponential(2.5), d.chi_square(1), d.chi_square(7),
]


def scipy_dist(spec):
    p = spec.params
    return {
        "uniform": lambda: stats.uniform(p.get("a"), p.get("b", 0) - p.get("a", 0)),
        "normal": lambda: stats.norm(p.get("mu"), p.get("sigma")),
        "poisson": lambda: stats.poisson(p.get("lam")),
        "binomial": lambda: stats.binom(p.get("n"), p.get("p")),
        "exponential": lambda: stats.expon(scale=p.get("beta")),
        "chi_square": lambda: stats.chi2(p.get("v")),
    }[spec.kind]()


# -- spec ---------------------------------------------------------------------


@pytest.mark.parametrize("data", [
    {"kind": "uniform", "a": 1, "b": 1},
    {"kind": "normal", "mu": 0, "sigma": 0},
    {"kind": "poisson", "lam": 0},
    {"kind": "binomial", "n": 0, "p": 0.5},
    {"kind": "binomial", "n": 5, "p": 1.5},
    {"kind": "binomial", "n": 2.5, "p": 0.5},
    {"kind": "exponential", "beta": -1},
    {"kind": "chi_square", "v": 0},
    {"kind": "gamma", "k": 1},
    {"kind": "normal", "mu": 0},
    {"kind": "normal", "mu": 0, "sigma": 1, "extra": 2},
])
def test_invalid_specs(data):
    with pytest.raises(InvalidArgument):
        DistributionSpec.from_dict(data)


@pytest.mark.parametrize("spec", BASE_SPECS + EXTRA_SPECS, ids=str)
def test_json_round_trip(spec):
    text = json.dumps(spec.to_dict())
    assert DistributionSpec.from_dict(json.loads(text)) == spec


def test_parameterless_defaults():
    assert DistributionSpec.from_dict({"kind": "poisson"}) == d.poisson(4)
    assert DistributionSpec.from_dict({"kind": "binomial"}) == d.binomial(20, 0.5)
    assert DistributionSpec.from_dict({"kind": "binomial"}).to_dict() == {"kind": "binomial", "n": 20, "p": 0.5}


def test_specs_are_hashable():
    assert len({d.normal(0, 1), d.normal(0.0, 1.0), d.normal(0, 2)}) == 2


# -- analytic -----------------------------------------------------------------


def test_moment_examples():
    assert d.analytic_moments(d.exponential(1)) == (1, 1)
    assert d.analytic_moments(d.binomial(10, 0)) == (0, 0)
    assert d.analytic_moments(d.poisson(2)) == (2, 2)


@pytest.mark.parametrize("spec", BASE_SPECS + EXTRA_SPECS, ids=str)
def test_moments_match_scipy(spec):
    mean, var = d.analytic_moments(spec)
    ref = scipy_dist(spec)
    assert mean == pytest.approx(ref.mean(), rel=1e-12, abs=1e-12)
    assert var == pytest.approx(ref.var(), rel=1e-12)


def test_density_examples():
    u = d.uniform(-1, 1)
    assert d.density(u, 0) == 0.5 and d.density(u, 2) == 0
    assert d.density(d.normal(0, 1), 0) == pytest.approx(1 / math.sqrt(2 * math.pi), abs=1e-15)
    assert d.density(d.normal(0, 1), 0) == pytest.approx(0.3989423, abs=1e-7)
    assert d.density(d.poisson(1), 0) == pytest.approx(math.exp(-1), abs=1e-15)
    assert d.density(d.poisson(1), 0.5) == 0
    assert d.density(d.binomial(3, 0.5), 4) == 0


@pytest.mark.parametrize("spec", BASE_SPECS + EXTRA_SPECS, ids=str)
def test_density_matches_scipy(spec):
    ref = scipy_dist(spec)
    mean, var = d.analytic_moments(spec)
    sd = math.sqrt(var)
    if spec.kind in ("poisson", "binomial"):
        xs = range(0, int(mean + 8 * sd) + 2)
        for x in xs:
            assert d.density(spec, x) == pytest.approx(ref.pmf(x), rel=1e-9, abs=1e-300)
    else:
        for x in np.linspace(mean - 4 * sd, mean + 4 * sd, 41):
            if spec.kind in ("exponential", "chi_square") and x <= 0:
                assert d.density(spec, x) == 0
                continue
            if spec.kind == "uniform" and x in (spec["a"], spec["b"]):
                continue
            assert d.density(spec, x) == pytest.approx(ref.pdf(x), rel=1e-9)


@pytest.mark.parametrize("spec", [s for s in BASE_SPECS + EXTRA_SPECS
                                  if s.kind in ("uniform", "normal", "exponential", "chi_square")], ids=str)
def test_continuous_density_integrates_to_one(spec):
    mean, var = d.analytic_moments(spec)
    sd = math.sqrt(var)
    # Right-skewed laws keep > 1e-6 of mass beyond 10 sd, so they get 20.
    width = 20 if spec.kind in ("exponential", "chi_square") else 10
    lo, hi = mean - width * sd, mean + width * sd
    if spec.kind == "uniform":
        lo, hi = max(lo, spec["a"]), min(hi, spec["b"])
    if spec.kind in ("exponential", "chi_square"):
        lo = max(lo, 0.0)
    total, _ = integrate.quad(lambda x: d.density(spec, x), lo, hi, limit=200, epsabs=1e-12,
                              points=[mean] if lo < mean < hi else None)
    assert abs(total - 1) < 1e-6


@pytest.mark.parametrize("spec", [s for s in BASE_SPECS + EXTRA_SPECS
                                  if s.kind in ("poisson", "binomial")], ids=str)
def test_discrete_mass_sums_to_one(spec):
    total, x = 0.0, 0
    while total < 1 - 1e-12:
        total += d.density(spec, x)
        x += 1
        if spec.kind == "binomial" and x > spec["n"]:
            break
    assert abs(total - 1) < 1e-9


# -- sampling -----------------------------------------------------------------


def test_uniform_sample_moments():
    x = d.sample(d.uniform(-1, 1), 10**5, seed=0)
    assert abs(x.mean()) < 0.02
    assert abs(x.var() - 1 / 3) < 0.02
    assert x.min() >= -1 and x.max() < 1


def test_degenerate_bernoulli():
    assert np.all(d.sample(d.binomial(1, 1.0), 500, seed=3) == 1)
    assert np.all(d.sample(d.binomial(200, 0.0), 50, seed=3) == 0)
    assert np.all(d.sample(d.binomial(200, 1.0), 50, seed=3) == 200)


def test_chi_square_three():
    n = 10**5
    x = d.sample(d.chi_square(3), n, seed=1)
    se_mean = math.sqrt(6 / n)
    se_var = math.sqrt((fourth_central_moment(d.chi_square(3)) - 36) / n)
    assert abs(x.mean() - 3) < 5 * se_mean
    assert abs(x.var(ddof=1) - 6) < 5 * se_var


@pytest.mark.parametrize("spec", EXTRA_SPECS, ids=str)
def test_sample_moments_within_six_standard_errors(spec):
    n = 10**6
    x = d.sample(spec, n, seed=2024)
    mean, var = d.analytic_moments(spec)
    se_mean = math.sqrt(var / n)
    se_var = math.sqrt((fourth_central_moment(spec) - var**2) / n)
    assert abs(x.mean() - mean) < 6 * se_mean
    assert abs(x.var(ddof=1) - var) < 6 * se_var


@pytest.mark.parametrize("spec", BASE_SPECS + EXTRA_SPECS, ids=str)
def test_sampler_is_pure(spec):
    a = d.sample(spec, 1000, seed=17)
    b = d.sample(spec, 1000, seed=17)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, d.sample(spec, 1000, seed=18))


@pytest.mark.parametrize("spec", [s for s in BASE_SPECS + EXTRA_SPECS
                                  if s.kind in ("poisson", "binomial")], ids=str)
def test_discrete_samples_are_integers(spec):
    x = d.sample(spec, 5000, seed=5)
    assert np.array_equal(x, np.round(x)) and x.min() >= 0


@pytest.mark.parametrize("spec", BASE_SPECS + EXTRA_SPECS, ids=str)
def test_sample_distribution_ks(spec):
    # One-sample KS against the scipy law at alpha = 0.001 (continuous laws only).
    if spec.kind in ("poisson", "binomial"):
        x = d.sample(spec, 20000, seed=8)
        ref = scipy_dist(spec)
        ks = np.arange(int(x.max()) + 1)
        emp = np.bincount(x.astype(int), minlength=ks.size) / x.size
        chi2 = 0.0
        dof = 0
        for k, pk in zip(ks, ref.pmf(ks)):
            if pk * x.size >= 5:
                chi2 += (emp[k] - pk) ** 2 * x.size / pk
                dof += 1
        assert chi2 < stats.chi2(max(dof - 1, 1)).ppf(0.999)
        return
    x = d.sample(spec, 20000, seed=8)
    assert stats.kstest(x, scipy_dist(spec).cdf).pvalue > 0.001


@pytest.mark.parametrize("v", [1, 3, 6])
def test_chi_square_matches_sum_of_squared_normals(v):
    n = 10**4
    ours = d.sample(d.chi_square(v), n, seed=99)
    z = np.random.default_rng(12345).standard_normal((n, v))
    reference = (z * z).sum(axis=1)
    critical = 1.949 * math.sqrt(2 / n)  # two-sample KS, alpha = 0.001
    assert stats.ks_2samp(ours, reference).statistic < critical


def test_draw_continues_stream():
    rng = np.random.default_rng(4)
    first = d.draw(d.normal(0, 1), 10, rng)
    second = d.draw(d.normal(0, 1), 10, rng)
    assert not np.array_equal(first, second)


def test_sample_rejects_zero_count():
    with pytest.raises(InvalidArgument):
        d.sample(d.normal(0, 1), 0, seed=0)
