"""Projective points, heights, archimedean distances, and the numerical
machinery for estimating approximation exponents from enumerated points.

Points are primitive integer tuples; heights and distances are exact
(ints / Fractions).  Floats appear only in the final log-log statistics.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import gcd_normalize


class TooFewPoints(ValueError):
    pass


class NotOnCurve(ValueError):
    pass


@dataclass(frozen=True)
class P1Point:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", gcd_normalize(self.coords))
        if len(self.coords) != 2:
            raise ValueError("P1 point needs 2 coordinates")

    @property
    def a(self):
        return self.coords[0]

    @property
    def b(self):
        return self.coords[1]

    def __repr__(self):
        return f"[{self.a}:{self.b}]"


@dataclass(frozen=True)
class PnPoint:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", gcd_normalize(self.coords))

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class P1xP1Point:
    s: P1Point
    t: P1Point

    @classmethod
    def make(cls, s_pair, t_pair):
        return cls(P1Point(tuple(s_pair)), P1Point(tuple(t_pair)))

    @property
    def quadruple(self):
        return self.s.coords + self.t.coords

    def __repr__(self):
        return f"({self.s},{self.t})"


def p1_height(p: P1Point):
    return max(abs(p.a), abs(p.b))


def pn_height(p: PnPoint, d=1):
    """Height relative to O(d) on primitive representatives: (max |x_i|)^d."""
    return max(abs(c) for c in p.coords) ** d


def dp6_height(p: P1xP1Point):
    """Anticanonical-degree-relevant height on the blowup model: equals
    max |s_i t_j| = max|s| * max|t| on primitive pairs."""
    return p1_height(p.s) * p1_height(p.t)


def p1_distance(p: P1Point, q: P1Point):
    """|ad - bc| / (max(|a|,|b|) max(|c|,|d|)) as an exact Fraction,
    capped at 1 (the sup-norm cross product can reach 2 for far-apart
    points; capping keeps the metric equivalent near any target)."""
    num = abs(p.a * q.b - p.b * q.a)
    return min(Fraction(1), Fraction(num, p1_height(p) * p1_height(q)))


def dp6_distance(p: P1xP1Point, q: P1xP1Point):
    """max of the two factor distances (equivalent, up to bounded factors,
    to any metric induced by a projective embedding of the surface)."""
    return max(p1_distance(p.s, q.s), p1_distance(p.t, q.t))


class CurveKind(enum.Enum):
    LOG_RATIONAL = "LogRational"
    TOROIDAL_NON_NODAL = "ToroidalNonNodal"
    TOROIDAL_NODAL = "ToroidalNodal"


@dataclass(frozen=True)
class CurveMeta:
    """Data controlling the predicted approximation exponent of a curve
    through the approximated point."""

    kind: CurveKind
    degree: int
    mult: int  # multiplicity of the curve at the target point
    branch_mults: tuple = None  # per-branch multiplicities (nodal case)
    splitting_disc: int = None  # squarefree disc of the node field, if any

    @property
    def r_value(self):
        """Unit-rank factor: 1 for a rational node field, 2 for a real
        quadratic one, 0 for an imaginary quadratic one."""
        if self.splitting_disc is None:
            return 1
        return 2 if self.splitting_disc > 0 else 0


INFINITE = math.inf


def predicted_alpha(meta: CurveMeta):
    """Predicted approximation constant along the curve."""
    if meta.kind in (CurveKind.LOG_RATIONAL, CurveKind.TOROIDAL_NON_NODAL):
        return Fraction(meta.degree, meta.mult)
    r = meta.r_value
    if r == 0:
        return INFINITE
    bm = max(meta.branch_mults) if meta.branch_mults else meta.mult
    return Fraction(meta.degree, r * bm)


@dataclass
class AlphaEstimate:
    """Pareto-frontier summary of (height, distance) data.

    records: list of (height, distance, ratio) along the frontier, with
    strictly increasing height and strictly decreasing distance;
    ratio = log(height) / -log(distance).
    """

    records: list
    ratio_sup: float
    frontier_slope: float
    point_count: int


def estimate_alpha(x, points, noise_floor=10):
    """Estimate the approximation exponent toward x from point data.

    points: iterable of (point, height, distance) triples or plain
    (height, distance) pairs; distances are exact rationals relative to x
    (precomputed; x itself, at distance 0, is not allowed).  Distances
    >= 1 are discarded; the point entry only breaks sorting ties.
    """

    rows = []
    for rec in points:
        if len(rec) == 2:
            h, d = rec
            key = ()
        else:
            p, h, d = rec
            key = getattr(p, "quadruple", tuple())
        if not isinstance(d, Fraction):
            d = Fraction(d)
        if d.numerator <= 0:
            raise ValueError("distances must be positive")
        if d.numerator >= d.denominator:
            continue
        rows.append((int(h), d, key))
    if len(rows) < 3:
        raise TooFewPoints(f"only {len(rows)} usable points")
    # sort by height, then distance (as floats first: exact Fraction
    # comparison only breaks the rare float ties), then point key
    rows.sort(key=lambda r: (r[0], float(r[1]), r[1], r[2]))

    frontier = []
    best = None
    for h, d, _ in rows:
        if best is None or d < best:
            best = d
            frontier.append((h, d))

    out = []
    for h, d in frontier:
        ratio = math.log(h) / -_log_fraction(d) if h > 1 else 0.0
        out.append((h, d, ratio))

    tail = [r for r in out if r[0] >= noise_floor] or out
    ratio_sup = max(r[2] for r in tail)

    xs = [-_log_fraction(d) for h, d, _ in tail]
    ys = [math.log(h) for h, d, _ in tail]
    slope = _lsq_slope(xs, ys) if len(tail) >= 2 else ratio_sup
    return AlphaEstimate(out, ratio_sup, slope, len(rows))


def _log_fraction(d):
    """log of a positive Fraction without float under/overflow (the
    integer log works for arbitrarily large numerators/denominators)."""
    return math.log(d.numerator) - math.log(d.denominator)


def _lsq_slope(xs, ys):
    n = len(xs)
    xbar = sum(xs) / n
    ybar = sum(ys) / n
    den = sum((x - xbar) ** 2 for x in xs)
    if den == 0:
        return float("nan")
    return sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / den


def liouville_scan(records, exponent):
    """Per-dyadic-window minima of distance^exponent * height.

    exponent: Fraction with denominator 1 or 2 (half-integers compared by
    squaring, exactly).  Returns a sorted list of (k, value) with window
    [2^k, 2^(k+1)); value is an exact Fraction for integer exponents and a
    float otherwise.
    """
    e = Fraction(exponent)
    if e.denominator not in (1, 2):
        raise ValueError("exponent must be an integer or half-integer")
    mins = {}  # k -> (squared value as Fraction, raw pair)
    for rec in records:
        h, d = int(rec[-2]), Fraction(rec[-1])
        k = h.bit_length() - 1
        # exact squared comparison value: (d^e * h)^2 = d^(2e) h^2
        sq = d ** int(2 * e) * h * h
        cur = mins.get(k)
        if cur is None or sq < cur:
            mins[k] = sq
    out = []
    for k in sorted(mins):
        sq = mins[k]
        if e.denominator == 1:
            # sq is a perfect square of a rational
            val = Fraction(
                _frac_isqrt(sq.numerator), _frac_isqrt(sq.denominator)
            )
        else:
            val = math.sqrt(float(sq))
        out.append((k, val))
    return out


def _frac_isqrt(n):
    r = math.isqrt(n)
    if r * r != n:
        raise ValueError("not a perfect square")
    return r


def multiplicity_at(poly, point, variables=None):
    """Multiplicity of an affine plane curve poly(vars)=0 at a point,
    i.e. the lowest total degree after translating the point to the
    origin.  Raises NotOnCurve if the point is off the curve."""
    import sympy

    if variables is None:
        variables = sorted(poly.free_symbols, key=lambda s: s.name)
    subs = {v: v + c for v, c in zip(variables, point)}
    shifted = sympy.expand(poly.subs(subs, simultaneous=True))
    p = sympy.Poly(shifted, *variables)
    degs = [sum(mono) for mono in p.monoms()]
    if not degs:
        raise ValueError("zero polynomial")
    m = min(degs)
    if m == 0:
        raise NotOnCurve(f"{point} not on the curve")
    return m
