"""Shared generators and geometry helpers for the test suite."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from sympack import planner, toric


def rand_fraction(rng: random.Random, lo: Fraction, hi: Fraction,
                  max_den: int = 60) -> Fraction:
    """Uniform-ish rational strictly inside (lo, hi) with bounded denominator."""
    lo, hi = Fraction(lo), Fraction(hi)
    den = rng.randint(2, max_den)
    lo_num = int(lo * den) + 1
    hi_num = -int(-hi * den) - 1          # ceil - 1
    if hi_num < lo_num:
        return (lo + hi) / 2
    return Fraction(rng.randint(lo_num, hi_num), den)


def rand_pseudo_ball(rng: random.Random) -> toric.PseudoBall:
    alpha = rand_fraction(rng, Fraction(1, 100), Fraction(2))
    beta = rand_fraction(rng, Fraction(1, 100), Fraction(2))
    a = rand_fraction(rng, alpha, alpha + beta, max_den=200)
    b = rand_fraction(rng, beta, alpha + beta, max_den=200)
    return toric.PseudoBall(a, b, alpha, beta)


def rand_polarization(rng: random.Random, min_curves: int = 2,
                      max_curves: int = 5) -> planner.Polarization:
    l = rng.randint(min_curves, max_curves)
    residues = [Fraction(rng.randint(1, 8), 40) for _ in range(l)]
    top = max(residues)
    curves = []
    for i in range(l):
        area = 10 * top + Fraction(rng.randint(1, 80), 8)
        curves.append(planner.Curve(area, residues[i]))
    return planner.Polarization(tuple(curves))


def point_polygon_distance(pt, vertices) -> float:
    """Euclidean distance from pt to the boundary of the polygon."""
    px, py = float(pt[0]), float(pt[1])
    best = math.inf
    n = len(vertices)
    for i in range(n):
        ax, ay = map(float, vertices[i])
        bx, by = map(float, vertices[(i + 1) % n])
        dx, dy = bx - ax, by - ay
        denom = dx * dx + dy * dy
        t = 0.0 if denom == 0 else max(0.0, min(1.0, ((px - ax) * dx + (py - ay) * dy) / denom))
        qx, qy = ax + t * dx, ay + t * dy
        best = min(best, math.hypot(px - qx, py - qy))
    return best


def classify_by_flow(fixed, point, disc_r1, disc_r2, tol: float = 1e-9) -> bool:
    """Backward-iterate the contracting flow from ``point`` until an axis exit.

    ``disc_r1`` is the extent of the target disc on the R2 = 0 axis (None if
    no disc lies there), ``disc_r2`` likewise on R1 = 0.  Returns True when
    the backward ray leaves the quadrant through one of the discs, i.e. the
    point lies in the basin.
    """
    f1, f2 = float(fixed[0]), float(fixed[1])
    r1, r2 = float(point[0]), float(point[1])
    scale = max(1.0, abs(r1), abs(r2), f1, f2)
    t = 0.0
    step = 0.05
    limit = 1e6
    for _ in range(10000):
        nt = t + step
        n1 = f1 + (r1 - f1) * math.exp(nt)
        n2 = f2 + (r2 - f2) * math.exp(nt)
        if n1 < 0 or n2 < 0:
            # bisect the crossing time of whichever axis is hit first
            lo, hi = t, nt
            while hi - lo > 1e-15:
                mid = (lo + hi) / 2
                m1 = f1 + (r1 - f1) * math.exp(mid)
                m2 = f2 + (r2 - f2) * math.exp(mid)
                if m1 < 0 or m2 < 0:
                    hi = mid
                else:
                    lo = mid
            e1 = f1 + (r1 - f1) * math.exp(lo)
            e2 = f2 + (r2 - f2) * math.exp(lo)
            if e1 <= tol * scale:
                return disc_r2 is not None and e2 < disc_r2
            if e2 <= tol * scale:
                return disc_r1 is not None and e1 < disc_r1
            return False
        if abs(n1) > limit or abs(n2) > limit:
            return False
        t = nt
    return False
