"""Cremona-move reduction deciding ball packings of the projective plane.

A candidate packing (mu; lambda_1..lambda_n) of P^2(mu) is reduced by the
standard move: with the three largest entries l1 >= l2 >= l3 and defect
delta = mu - l1 - l2 - l3, replace (mu; l1, l2, l3, ...) by
(mu + delta; l1 + delta, l2 + delta, l3 + delta, ...) while delta < 0.
The vector is accepted when the defect becomes non-negative with all
entries non-negative and the volume obstruction holds; open balls make the
volume comparison non-strict (equality is a very full filling).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

REASON_NEGATIVE = "negative entry"
REASON_MU_EXHAUSTED = "mu exhausted"
REASON_VOLUME = "volume"


@dataclass(frozen=True)
class PackingVector:
    mu: Fraction
    lambdas: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "mu", Fraction(self.mu))
        object.__setattr__(self, "lambdas",
                           tuple(Fraction(l) for l in self.lambdas))

    def sorted_padded(self) -> "PackingVector":
        lams = sorted(self.lambdas, reverse=True)
        while len(lams) < 3:
            lams.append(Fraction(0))
        return PackingVector(self.mu, tuple(lams))

    @property
    def defect(self) -> Fraction:
        l = self.sorted_padded().lambdas
        return self.mu - l[0] - l[1] - l[2]

    @property
    def volume_ok(self) -> bool:
        return sum((l * l for l in self.lambdas), Fraction(0)) <= self.mu ** 2

    def __str__(self):
        return f"({self.mu}; {', '.join(str(l) for l in self.lambdas)})"


@dataclass(frozen=True)
class ReductionStep:
    before: PackingVector
    defect: Fraction
    after: PackingVector


@dataclass
class ReductionTrace:
    steps: list[ReductionStep] = field(default_factory=list)
    verdict: str = "rejected"            # "accepted" | "rejected"
    reason: str | None = None
    volume_ok: bool = False

    @property
    def accepted(self) -> bool:
        return self.verdict == "accepted"

    @property
    def terminal(self) -> PackingVector:
        return self.steps[-1].after if self.steps else None


def cremona_step(v: PackingVector) -> PackingVector:
    """One move on the sorted vector; identity when the defect is >= 0."""
    v = v.sorted_padded()
    delta = v.defect
    if delta >= 0:
        return v
    l = v.lambdas
    new = (l[0] + delta, l[1] + delta, l[2] + delta) + l[3:]
    return PackingVector(v.mu + delta, new)


def reduce_vector(v: PackingVector, strict_volume: bool = False) -> ReductionTrace:
    """Iterate Cremona moves to a verdict; total and always terminating.

    Termination: over the fixed common denominator of the input, mu drops
    by at least one grid step per negative-defect move.
    """
    trace = ReductionTrace()
    # volume is invariant under the moves, checked once up front
    vol_ok = (sum((l * l for l in v.lambdas), Fraction(0)) < v.mu ** 2
              if strict_volume else v.volume_ok)
    trace.volume_ok = vol_ok
    current = v.sorted_padded()
    if any(l < 0 for l in current.lambdas):
        trace.reason = REASON_NEGATIVE
        return trace
    while True:
        delta = current.defect
        if delta >= 0:
            trace.steps.append(ReductionStep(current, delta, current))
            if not vol_ok:
                trace.reason = REASON_VOLUME
            else:
                trace.verdict = "accepted"
            return trace
        after = cremona_step(current)
        trace.steps.append(ReductionStep(current, delta, after))
        if any(l < 0 for l in after.lambdas):
            trace.reason = REASON_NEGATIVE
            return trace
        if after.mu <= 0 and any(l > 0 for l in after.lambdas):
            trace.reason = REASON_MU_EXHAUSTED
            return trace
        current = after.sorted_padded()


def decide_ball_packing(mu, lambdas, strict_volume: bool = False) -> bool:
    """True iff open balls of the given capacities pack P^2(mu).

    Scale-invariant: decide(c*mu, c*lambdas) = decide(mu, lambdas).
    """
    mu = Fraction(mu)
    if mu <= 0:
        raise ValueError(f"mu = {mu} must be > 0")
    lams = tuple(Fraction(l) for l in lambdas)
    if any(l < 0 for l in lams):
        raise ValueError("ball capacities must be >= 0")
    v = PackingVector(mu, tuple(l for l in lams if l > 0))
    return reduce_vector(v, strict_volume=strict_volume).accepted


def max_equal_ball(n: int, tol) -> Fraction:
    """Largest capacity (within tol) of n equal balls packing P^2(1).

    Binary search over the accepted/rejected threshold; the returned value
    is accepted and the value plus tol is rejected.
    """
    if n < 1:
        raise ValueError("need at least one ball")
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be > 0")
    lo, hi = Fraction(0), Fraction(2)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if decide_ball_packing(1, (mid,) * n):
            lo = mid
        else:
            hi = mid
    return lo
