"""Random two-generator words and the two bad events for C'(lambda) families.

A cyclically reduced word ``w`` of length ``n`` gives a C'(lambda) family as
soon as neither event occurs:

* overlap: some subword of length ``ceil(lambda*n)`` sits at two distinct
  positions of the symmetrized closure of ``{w}``;
* syllable: the cyclic word has a run of one letter of length ``ceil(lambda*n)``.

The union-bound estimate for the success probability is
``1 - n**2 / 2**(lambda*n) - 4*n / 2**(lambda*n)``, clamped at 0.

Trial ``t`` of a run seeded with ``seed`` draws from
``SeedSequence(seed, spawn_key=(t,))``, so outcomes do not depend on how
trials are scheduled.
"""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .cancellation import PrefixIndex, piece_report
from .constructions import build_independence_family
from .presentation import Origin, symmetrize
from .words import XY, Word, cyclic_syllables, is_cyclically_reduced, is_proper_power

LETTERS = (1, -1, 2, -2)


def ceil_fraction(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


@dataclass(frozen=True)
class RandConfig:
    n: int
    lam: Fraction
    trials: int
    seed: int
    family_n: int = 2

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.n < 2:
            raise ValueError(f"word length must be >= 2, got {self.n}")
        if not 0 < self.lam < 1:
            raise ValueError(f"lambda must lie strictly between 0 and 1, got {self.lam}")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.family_n < 1:
            raise ValueError("family_n must be positive")


def trial_rng(seed: int, t: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(t,)))


def random_cyclically_reduced_word(n: int, rng: np.random.Generator) -> Word:
    """Uniform over cyclically reduced words of length ``n`` in x, y and inverses.

    Freely reduced words are drawn uniformly (4 choices, then 3 each step)
    and rejected when the last letter cancels the first.
    """
    if n < 2:
        raise ValueError(f"word length must be >= 2, got {n}")
    while True:
        first = LETTERS[rng.integers(4)]
        w = [first]
        steps = rng.integers(3, size=n - 1)
        for k in steps:
            choices = [a for a in LETTERS if a != -w[-1]]
            w.append(choices[k])
        if w[-1] != -first:
            return tuple(w)


@dataclass
class OverlapWitness:
    subword: Word
    first: Origin
    second: Origin


def overlap_bad_event(w: Word, lam: Fraction) -> tuple[bool, Optional[OverlapWitness]]:
    if not is_cyclically_reduced(w):
        raise ValueError("overlap_bad_event needs a cyclically reduced word")
    k = ceil_fraction(Fraction(lam) * len(w))
    s = symmetrize([w])
    # a piece of length >= k has a length-k prefix repeated at two positions
    index = PrefixIndex(s)
    for i, length in enumerate(index.lengths):
        if length >= k:
            m = s.members[i]
            return True, OverlapWitness(m[:k], s.origin(m), index.piece(i).partner_origin)
    return False, None


def syllable_bad_event(w: Word, lam: Fraction) -> tuple[bool, Optional[tuple[int, int]]]:
    """True with ``(letter, run)`` when a cyclic run reaches ``ceil(lam*|w|)``."""
    if not is_cyclically_reduced(w):
        raise ValueError("syllable_bad_event needs a cyclically reduced word")
    k = ceil_fraction(Fraction(lam) * len(w))
    for a, run in cyclic_syllables(w):
        if run >= k:
            return True, (a, run)
    return False, None


def direct_family_check(w: Word, lam: Fraction, family_n: int) -> bool:
    """C'(lam), conciseness and primitivity of the family ``S`` built from ``w``."""
    if is_proper_power(w):
        return False
    fam = build_independence_family(family_n, word=w, allow_large=True)
    if any(len(r) != len(w) for r in fam.S.relators):
        return False
    s = symmetrize(fam.S)
    # concise: no symmetrized word comes from two different relators
    if any(len({o[0] for o in origins}) > 1 for origins in s.origins.values() if len(origins) > 1):
        return False
    return piece_report(s, Fraction(lam)).holds


@dataclass
class TrialOutcome:
    index: int
    word: Word
    overlap_bad: bool
    syllable_bad: bool
    direct_c_prime_ok: bool

    @property
    def success(self) -> bool:
        return not self.overlap_bad and not self.syllable_bad


def run_trial(cfg: RandConfig, t: int) -> TrialOutcome:
    w = random_cyclically_reduced_word(cfg.n, trial_rng(cfg.seed, t))
    return TrialOutcome(
        index=t,
        word=w,
        overlap_bad=overlap_bad_event(w, cfg.lam)[0],
        syllable_bad=syllable_bad_event(w, cfg.lam)[0],
        direct_c_prime_ok=direct_family_check(w, cfg.lam, cfg.family_n),
    )


def iter_trials(cfg: RandConfig) -> Iterator[TrialOutcome]:
    for t in range(cfg.trials):
        yield run_trial(cfg, t)


def paper_bound(n: int, lam: Fraction) -> float:
    """``max(0, 1 - n^2/2^(lam n) - 4n/2^(lam n))``."""
    denom = 2.0 ** (float(lam) * n)
    return max(0.0, 1.0 - n * n / denom - 4 * n / denom)


@dataclass
class Estimate:
    config: RandConfig
    outcomes: list[TrialOutcome]

    @property
    def trials(self) -> int:
        return len(self.outcomes)

    @property
    def successes(self) -> int:
        return sum(o.success for o in self.outcomes)

    @property
    def empirical_success_rate(self) -> float:
        return self.successes / self.trials

    @property
    def paper_bound(self) -> float:
        return paper_bound(self.config.n, self.config.lam)

    @property
    def per_event_rates(self) -> dict[str, float]:
        t = self.trials
        return {
            "overlap": sum(o.overlap_bad for o in self.outcomes) / t,
            "syllable": sum(o.syllable_bad for o in self.outcomes) / t,
            "direct_c_prime_ok": sum(o.direct_c_prime_ok for o in self.outcomes) / t,
        }

    @property
    def implication_failures(self) -> list[int]:
        """Trials with neither bad event whose family still fails the direct check."""
        return [o.index for o in self.outcomes if o.success and not o.direct_c_prime_ok]

    @property
    def meets_bound(self) -> bool:
        return self.empirical_success_rate >= self.paper_bound

    def to_json(self) -> dict:
        cfg = self.config
        return {
            "n": cfg.n,
            "lambda": f"{cfg.lam.numerator}/{cfg.lam.denominator}",
            "trials": self.trials,
            "seed": cfg.seed,
            "family_n": cfg.family_n,
            "threshold": ceil_fraction(cfg.lam * cfg.n),
            "successes": self.successes,
            "empirical_success_rate": self.empirical_success_rate,
            "paper_bound": self.paper_bound,
            "meets_bound": self.meets_bound,
            "per_event_rates": self.per_event_rates,
            "implication_failures": self.implication_failures,
        }

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["index", "word", "overlap_bad", "syllable_bad", "direct_ok", "success"])
            for o in self.outcomes:
                writer.writerow(
                    [o.index, XY.format(o.word), int(o.overlap_bad), int(o.syllable_bad),
                     int(o.direct_c_prime_ok), int(o.success)]
                )


def estimate_probability(cfg: RandConfig) -> Estimate:
    return Estimate(cfg, list(iter_trials(cfg)))


@dataclass
class ExactCount:
    total: int
    bad: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.bad, self.total)

    @property
    def within_bound(self) -> bool:
        return self.ratio <= Fraction(1, 54)

    def to_json(self) -> dict:
        r = self.ratio
        return {
            "total": self.total,
            "bad": self.bad,
            "ratio": f"{r.numerator}/{r.denominator}",
            "bound": "1/54",
            "within_bound": self.within_bound,
        }


def exhaustive_length6_overlap_count() -> ExactCount:
    """Count length-6 cyclically reduced words whose 4-letter windows at 1 and 3 agree."""
    total = bad = 0
    for w in itertools.product(LETTERS, repeat=6):
        if not is_cyclically_reduced(w):
            continue
        total += 1
        if w[0:4] == w[2:6]:
            bad += 1
    out = ExactCount(total, bad)
    assert out.within_bound, out
    return out


def binomial_sigma(p: float, trials: int) -> float:
    return math.sqrt(max(p * (1 - p), 0.0) / trials)


__all__ = [
    "Estimate",
    "ExactCount",
    "RandConfig",
    "TrialOutcome",
    "direct_family_check",
    "estimate_probability",
    "exhaustive_length6_overlap_count",
    "overlap_bad_event",
    "paper_bound",
    "random_cyclically_reduced_word",
    "syllable_bad_event",
]
