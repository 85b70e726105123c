"""Index sampling, simulated one-bit predictors, and prediction-error accounting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np


class TruthUnavailableError(RuntimeError):
    """Raised when error accounting is requested on a live (truth-free) bundle."""


@dataclass(frozen=True)
class SampleSet:
    """Multiset of variable indices drawn uniformly with replacement from [0, n)."""

    n: int
    indices: tuple[int, ...]
    seed: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("universe must be nonempty")
        if not self.indices:
            raise ValueError("empty sample")
        if any(not 0 <= i < self.n for i in self.indices):
            raise ValueError("sampled index out of range")

    @property
    def size(self) -> int:
        return len(self.indices)

    def multiplicities(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for i in self.indices:
            counts[i] = counts.get(i, 0) + 1
        return counts


@dataclass(frozen=True)
class PredictionBundle:
    """Predicted bits for the distinct sampled indices, plus the simulation truth."""

    sample: SampleSet
    bits: Mapping[int, int]
    truth: tuple[int, ...] | None = None

    def __post_init__(self):
        distinct = set(self.sample.indices)
        if set(self.bits) != distinct:
            raise ValueError("predicted bits must cover exactly the distinct sampled indices")
        if any(b not in (0, 1) for b in self.bits.values()):
            raise ValueError("predictions must be binary")
        if self.truth is not None and len(self.truth) != self.sample.n:
            raise ValueError("truth vector length mismatch")

    def to_dict(self) -> dict:
        out = {
            "sample": list(self.sample.indices),
            "n": self.sample.n,
            "bits": {str(i): int(b) for i, b in sorted(self.bits.items())},
        }
        if self.sample.seed is not None:
            out["seed"] = self.sample.seed
        if self.truth is not None:
            out["truth"] = list(self.truth)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "PredictionBundle":
        seed = data.get("seed")
        sample = SampleSet(
            n=int(data["n"]),
            indices=tuple(int(i) for i in data["sample"]),
            seed=None if seed is None else int(seed),
        )
        truth = data.get("truth")
        return cls(
            sample=sample,
            bits={int(i): int(b) for i, b in data["bits"].items()},
            truth=None if truth is None else tuple(int(b) for b in truth),
        )


def draw_sample(n: int, size: int, seed: int) -> SampleSet:
    if size < 1:
        raise ValueError("sample size must be >= 1")
    rng = np.random.default_rng(seed)
    indices = tuple(int(i) for i in rng.integers(0, n, size=size))
    return SampleSet(n=n, indices=indices, seed=seed)


def sample_size_maxcut(n: int, epsilon: float, delta: float, c0: float = 1.0) -> int:
    """Sample size ceil(c0 * ln n / (eps'^3 * delta)) with eps' = eps*delta/16.

    The leading constant is configurable because the guarantee only fixes the
    size up to Theta(.); c0=1 reproduces the bare formula.
    """
    if not 0 < epsilon < 1:
        raise ValueError("need 0 < epsilon < 1")
    if not 0 < delta <= 1:
        raise ValueError("need 0 < delta <= 1")
    if n < 2:
        raise ValueError("need n >= 2")
    eps_prime = epsilon * delta / 16.0
    return max(1, math.ceil(c0 * math.log(n) / (eps_prime**3 * delta)))


def perfect_predictor(truth: Sequence[int], sample: SampleSet) -> PredictionBundle:
    truth_t = tuple(int(b) for b in truth)
    bits = {i: truth_t[i] for i in set(sample.indices)}
    return PredictionBundle(sample=sample, bits=bits, truth=truth_t)


def noisy_predictor(
    truth: Sequence[int], sample: SampleSet, flip_rate: float, seed: int
) -> PredictionBundle:
    """Flip each distinct index's true bit independently with the given rate.

    For a fixed seed the flip sets are nested across rates (a bit flipped at
    rate p stays flipped at any p' > p), which keeps sweeps over the rate
    comparable trial by trial.
    """
    if not 0 <= flip_rate <= 1:
        raise ValueError("flip rate must be in [0, 1]")
    truth_t = tuple(int(b) for b in truth)
    distinct = sorted(set(sample.indices))
    rng = np.random.default_rng(seed)
    u = rng.random(len(distinct))
    bits = {
        i: (1 - truth_t[i]) if u[pos] < flip_rate else truth_t[i]
        for pos, i in enumerate(distinct)
    }
    return PredictionBundle(sample=sample, bits=bits, truth=truth_t)


def prediction_error(bundle: PredictionBundle) -> int:
    """Sum of |predicted - true| over the sample multiset (with multiplicity)."""
    if bundle.truth is None:
        raise TruthUnavailableError("bundle carries no truth vector (live mode)")
    return sum(abs(bundle.bits[i] - bundle.truth[i]) for i in bundle.sample.indices)
