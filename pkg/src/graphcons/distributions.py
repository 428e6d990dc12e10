"""The six sampling distributions: parameters, densities, moments and samplers.

Every sampler consumes uniforms (and nothing else) from a
``numpy.random.Generator`` backed by PCG64. ``sample(spec, count, seed)``
seeds a fresh ``default_rng(seed)``, so a draw is a pure function of its
arguments; ``draw(spec, count, rng)`` continues an existing stream.

Algorithms:

* uniform, exponential: inverse CDF
* normal: Marsaglia polar method
* poisson: Knuth's product-of-uniforms for ``lam <= 30``, inverse CDF above
* binomial: sum of Bernoulli trials for ``n <= 64``, inverse CDF above
* chi-square: sum of ``v`` squared standard normals
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, NamedTuple

import numpy as np

from .errors import InvalidArgument

KINDS = ("uniform", "normal", "poisson", "binomial", "exponential", "chi_square")

PARAMS = {
    "uniform": ("a", "b"),
    "normal": ("mu", "sigma"),
    "poisson": ("lam",),
    "binomial": ("n", "p"),
    "exponential": ("beta",),
    "chi_square": ("v",),
}

# Used when a run config names a distribution without parameters. The
# resolved values are always written back out with the run.
DEFAULTS = {
    "uniform": {"a": -1.0, "b": 1.0},
    "normal": {"mu": 0.0, "sigma": 1.0},
    "poisson": {"lam": 4.0},
    "binomial": {"n": 20, "p": 0.5},
    "exponential": {"beta": 1.0},
    "chi_square": {"v": 3},
}

KNUTH_POISSON_MAX = 30.0
BERNOULLI_SUM_MAX = 64


@dataclass(frozen=True)
class DistributionSpec:
    kind: str
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in PARAMS:
            raise InvalidArgument(f"unknown distribution {self.kind!r}; expected one of {KINDS}")
        names = PARAMS[self.kind]
        extra = set(self.params) - set(names)
        missing = set(names) - set(self.params)
        if extra or missing:
            raise InvalidArgument(f"{self.kind} takes parameters {names}; "
                                  f"missing {sorted(missing)}, unexpected {sorted(extra)}")
        params = {}
        for name in names:
            value = self.params[name]
            if name in ("n", "v"):
                if isinstance(value, bool) or float(value) != int(value):
                    raise InvalidArgument(f"{self.kind}.{name} must be an integer, got {value!r}")
                params[name] = int(value)
            else:
                params[name] = float(value)
                if not math.isfinite(params[name]):
                    raise InvalidArgument(f"{self.kind}.{name} must be finite")
        object.__setattr__(self, "params", params)
        _validate(self.kind, params)

    def __getitem__(self, name: str):
        return self.params[name]

    def __hash__(self):
        return hash((self.kind, tuple(sorted(self.params.items()))))

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, **self.params}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> DistributionSpec:
        if "kind" not in data:
            raise InvalidArgument("distribution object needs a 'kind' field")
        kind = data["kind"]
        if kind not in PARAMS:
            raise InvalidArgument(f"unknown distribution {kind!r}; expected one of {KINDS}")
        params = {k: v for k, v in data.items() if k != "kind"}
        if not params:
            params = dict(DEFAULTS[kind])
        return cls(kind, params)

    def __str__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.kind}({inner})"


def _validate(kind: str, p: dict):
    ok = {
        "uniform": lambda: p["a"] < p["b"],
        "normal": lambda: p["sigma"] > 0,
        "poisson": lambda: p["lam"] > 0,
        "binomial": lambda: p["n"] >= 1 and 0.0 <= p["p"] <= 1.0,
        "exponential": lambda: p["beta"] > 0,
        "chi_square": lambda: p["v"] >= 1,
    }[kind]()
    if not ok:
        raise InvalidArgument(f"invalid parameters for {kind}: {p}")


def uniform(a: float, b: float) -> DistributionSpec:
    return DistributionSpec("uniform", {"a": a, "b": b})


def normal(mu: float, sigma: float) -> DistributionSpec:
    return DistributionSpec("normal", {"mu": mu, "sigma": sigma})


def poisson(lam: float) -> DistributionSpec:
    return DistributionSpec("poisson", {"lam": lam})


def binomial(n: int, p: float) -> DistributionSpec:
    return DistributionSpec("binomial", {"n": n, "p": p})


def exponential(beta: float) -> DistributionSpec:
    return DistributionSpec("exponential", {"beta": beta})


def chi_square(v: int) -> DistributionSpec:
    return DistributionSpec("chi_square", {"v": v})


# -- analytic side ----------------------------------------------------------


class Moments(NamedTuple):
    mean: float
    variance: float


def analytic_moments(spec: DistributionSpec) -> Moments:
    return Moments(*_moments(spec))


def _moments(spec: DistributionSpec) -> tuple[float, float]:
    p = spec.params
    if spec.kind == "uniform":
        return (p["a"] + p["b"]) / 2, (p["b"] - p["a"]) ** 2 / 12
    if spec.kind == "normal":
        return p["mu"], p["sigma"] ** 2
    if spec.kind == "poisson":
        return p["lam"], p["lam"]
    if spec.kind == "binomial":
        return p["n"] * p["p"], p["n"] * p["p"] * (1 - p["p"])
    if spec.kind == "exponential":
        return p["beta"], p["beta"] ** 2
    return float(p["v"]), 2.0 * p["v"]


def density(spec: DistributionSpec, x: float) -> float:
    """Density, or probability mass for poisson/binomial (zero off the integers)."""
    p = spec.params
    x = float(x)
    if spec.kind == "uniform":
        return 1.0 / (p["b"] - p["a"]) if p["a"] <= x <= p["b"] else 0.0
    if spec.kind == "normal":
        z = (x - p["mu"]) / p["sigma"]
        return math.exp(-0.5 * z * z) / (math.sqrt(2 * math.pi) * p["sigma"])
    if spec.kind == "exponential":
        return math.exp(-x / p["beta"]) / p["beta"] if x > 0 else 0.0
    if spec.kind == "chi_square":
        if x <= 0:
            return 0.0
        h = p["v"] / 2
        return math.exp((h - 1) * math.log(x) - x / 2 - h * math.log(2) - math.lgamma(h))
    if x != math.floor(x) or x < 0:
        return 0.0
    k = int(x)
    if spec.kind == "poisson":
        lam = p["lam"]
        return math.exp(k * math.log(lam) - lam - math.lgamma(k + 1))
    n, q = p["n"], p["p"]
    if k > n:
        return 0.0
    return math.comb(n, k) * q ** k * (1 - q) ** (n - k)


# -- samplers ---------------------------------------------------------------


def _standard_normal(count: int, rng: np.random.Generator) -> np.ndarray:
    out = np.empty(0)
    while out.size < count:
        pairs = int((count - out.size) / 2 / (math.pi / 4)) + 16
        u = 2.0 * rng.random(pairs) - 1.0
        v = 2.0 * rng.random(pairs) - 1.0
        s = u * u + v * v
        ok = (s > 0) & (s < 1)
        u, v, s = u[ok], v[ok], s[ok]
        factor = np.sqrt(-2.0 * np.log(s) / s)
        out = np.concatenate([out, np.column_stack([u * factor, v * factor]).ravel()])
    return out[:count]


def _inverse_cdf(logpmf: np.ndarray, offset: int, count: int, rng: np.random.Generator) -> np.ndarray:
    cdf = np.cumsum(np.exp(logpmf - logpmf.max()))
    idx = np.searchsorted(cdf, rng.random(count) * cdf[-1], side="right")
    return (offset + np.minimum(idx, cdf.size - 1)).astype(float)


def _poisson(lam: float, count: int, rng: np.random.Generator) -> np.ndarray:
    if lam > KNUTH_POISSON_MAX:
        # Table covers lam +- 12 sd; the mass left out is below 1e-30.
        half = int(12 * math.sqrt(lam)) + 10
        lo = max(0, int(lam) - half)
        ks = np.arange(lo, int(lam) + half + 1)
        logpmf = ks * math.log(lam) - lam - np.array([math.lgamma(k + 1) for k in ks])
        return _inverse_cdf(logpmf, lo, count, rng)
    limit = math.exp(-lam)
    k = np.zeros(count)
    prod = rng.random(count)
    active = np.flatnonzero(prod > limit)
    while active.size:
        k[active] += 1
        prod[active] *= rng.random(active.size)
        active = active[prod[active] > limit]
    return k


def _binomial(n: int, p: float, count: int, rng: np.random.Generator) -> np.ndarray:
    if n <= BERNOULLI_SUM_MAX:
        return (rng.random((count, n)) < p).sum(axis=1).astype(float)
    if p in (0.0, 1.0):
        return np.full(count, float(n) if p == 1.0 else 0.0)
    ks = np.arange(n + 1)
    logpmf = np.array([math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
                       for k in ks]) + ks * math.log(p) + (n - ks) * math.log1p(-p)
    return _inverse_cdf(logpmf, 0, count, rng)


def draw(spec: DistributionSpec, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` i.i.d. draws continuing the stream of ``rng``."""
    if count < 0:
        raise InvalidArgument(f"count must be non-negative, got {count}")
    p = spec.params
    if spec.kind == "uniform":
        return p["a"] + (p["b"] - p["a"]) * rng.random(count)
    if spec.kind == "exponential":
        return -p["beta"] * np.log1p(-rng.random(count))
    if spec.kind == "normal":
        return p["mu"] + p["sigma"] * _standard_normal(count, rng)
    if spec.kind == "poisson":
        return _poisson(p["lam"], count, rng)
    if spec.kind == "binomial":
        return _binomial(p["n"], p["p"], count, rng)
    z = _standard_normal(count * p["v"], rng).reshape(count, p["v"])
    return (z * z).sum(axis=1)


def sample(spec: DistributionSpec, count: int, seed: int) -> np.ndarray:
    if count < 1:
        raise InvalidArgument(f"count must be positive, got {count}")
    return draw(spec, count, np.random.default_rng(seed))
