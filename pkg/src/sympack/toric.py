"""Toric domains of the first quadrant: balls, ellipsoids, pseudo-balls,
scaled projective planes, and their moment polytopes and exact volumes.

A domain here is identified with its moment-polytope image under
(pi|z|^2, pi|w|^2); symplectic volume equals Euclidean area of that image,
computed exactly by the shoelace formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .rationals import format_rational, parse_rational


class DomainError(ValueError):
    """Base class for invalid toric-domain input."""


class InvalidParameterError(DomainError):
    """A domain parameter is non-positive (or otherwise nonsensical)."""


class PseudoBallViolation(DomainError):
    """Positive parameters that fail the strict pseudo-ball inequalities."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid pseudo-ball: " + "; ".join(violations))


Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class MomentPolytope:
    """Ordered vertex list in the closed first quadrant, counter-clockwise."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        for (x, y) in self.vertices:
            if x < 0 or y < 0:
                raise DomainError(f"vertex ({x}, {y}) outside first quadrant")

    def contains(self, x, y) -> bool:
        """Point-in-convex-polygon test (boundary counts as inside)."""
        x, y = Fraction(x), Fraction(y)
        n = len(self.vertices)
        if n < 3:
            return False
        for i in range(n):
            ax, ay = self.vertices[i]
            bx, by = self.vertices[(i + 1) % n]
            if (bx - ax) * (y - ay) - (by - ay) * (x - ax) < 0:
                return False
        return True


def polytope_area(p: MomentPolytope) -> Fraction:
    """Signed shoelace area; positive for counter-clockwise vertex order.

    Degenerate input (fewer than 3 non-collinear vertices) gives 0.
    """
    verts = p.vertices
    n = len(verts)
    if n < 3:
        return Fraction(0)
    twice = Fraction(0)
    for i in range(n):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % n]
        twice += x0 * y1 - x1 * y0
    return twice / 2


def _require_positive(**params):
    for name, value in params.items():
        if value <= 0:
            raise InvalidParameterError(f"parameter {name} = {value} must be > 0")


def validate_pseudo_ball(a, b, alpha, beta) -> list[str]:
    """Return the list of violated strict inequalities (empty means valid).

    Non-positive parameters are an input error, raised separately, since
    they are outside the constraint system rather than a boundary case.
    """
    a, b, alpha, beta = map(Fraction, (a, b, alpha, beta))
    _require_positive(a=a, b=b, alpha=alpha, beta=beta)
    violations = []
    if not a > alpha:
        violations.append(f"a > alpha fails ({a} <= {alpha})")
    if not b > beta:
        violations.append(f"b > beta fails ({b} <= {beta})")
    if not a < alpha + beta:
        violations.append(f"a < alpha+beta fails ({a} >= {alpha + beta})")
    if not b < alpha + beta:
        violations.append(f"b < alpha+beta fails ({b} >= {alpha + beta})")
    return violations


@dataclass(frozen=True)
class Ball:
    capacity: Fraction

    def __post_init__(self):
        object.__setattr__(self, "capacity", Fraction(self.capacity))
        _require_positive(capacity=self.capacity)

    def __str__(self):
        return f"B({format_rational(self.capacity)})"


@dataclass(frozen=True)
class Ellipsoid:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        _require_positive(a=self.a, b=self.b)

    def __str__(self):
        return f"E({format_rational(self.a)},{format_rational(self.b)})"


@dataclass(frozen=True)
class PseudoBall:
    a: Fraction
    b: Fraction
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        for name in ("a", "b", "alpha", "beta"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        violations = validate_pseudo_ball(self.a, self.b, self.alpha, self.beta)
        if violations:
            raise PseudoBallViolation(violations)

    def __str__(self):
        return "T({},{},{},{})".format(*map(format_rational,
                                            (self.a, self.b, self.alpha, self.beta)))


@dataclass(frozen=True)
class ProjectivePlane:
    scale: Fraction

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        _require_positive(scale=self.scale)

    def __str__(self):
        return f"P2({format_rational(self.scale)})"


ToricDomain = Ball | Ellipsoid | PseudoBall | ProjectivePlane


def moment_polytope(d: ToricDomain) -> MomentPolytope:
    zero = Fraction(0)
    if isinstance(d, Ball):
        c = d.capacity
        return MomentPolytope(((zero, zero), (c, zero), (zero, c)))
    if isinstance(d, Ellipsoid):
        return MomentPolytope(((zero, zero), (d.a, zero), (zero, d.b)))
    if isinstance(d, ProjectivePlane):
        mu = d.scale
        return MomentPolytope(((zero, zero), (mu, zero), (zero, mu)))
    if isinstance(d, PseudoBall):
        # Conv<(0,0),(b,0),(alpha,beta),(0,a)>, counter-clockwise
        return MomentPolytope(((zero, zero), (d.b, zero),
                               (d.alpha, d.beta), (zero, d.a)))
    raise DomainError(f"not a toric domain: {d!r}")


def volume(d: ToricDomain) -> Fraction:
    if isinstance(d, Ball):
        return d.capacity * d.capacity / 2
    if isinstance(d, Ellipsoid):
        return d.a * d.b / 2
    if isinstance(d, ProjectivePlane):
        return d.scale * d.scale / 2
    if isinstance(d, PseudoBall):
        return (d.a * d.alpha + d.b * d.beta) / 2
    raise DomainError(f"not a toric domain: {d!r}")


def pseudo_ball_complement(a, b, alpha, beta):
    """Split P^2(alpha+beta) as T(a,b,alpha,beta) plus two toric ellipsoids.

    Returns (scale, E, E') with scale = alpha+beta, E = E(alpha+beta-a, alpha)
    and E' = E(alpha+beta-b, beta).  The volume identity
    vol(P^2) - vol(E) - vol(E') = vol(T) holds exactly.
    """
    t = PseudoBall(a, b, alpha, beta)
    mu = t.alpha + t.beta
    e = Ellipsoid(mu - t.a, t.alpha)
    e_prime = Ellipsoid(mu - t.b, t.beta)
    return mu, e, e_prime


_DOMAIN_RE = re.compile(r"^\s*(B|E|T|P2)\s*\(([^()]*)\)\s*$")


def parse_domain(text: str) -> ToricDomain:
    """Parse the CLI domain grammar: B(3/2), E(1,5/2), T(3/2,3/2,1,1), P2(2)."""
    m = _DOMAIN_RE.match(text)
    if not m:
        raise DomainError(f"cannot parse domain spec {text!r}")
    tag, body = m.group(1), m.group(2)
    args = [parse_rational(part) for part in body.split(",")] if body.strip() else []
    arity = {"B": 1, "E": 2, "T": 4, "P2": 1}[tag]
    if len(args) != arity:
        raise DomainError(f"{tag}(...) takes {arity} parameters, got {len(args)}")
    if tag == "B":
        return Ball(args[0])
    if tag == "E":
        return Ellipsoid(args[0], args[1])
    if tag == "T":
        return PseudoBall(*args)
    return ProjectivePlane(args[0])
