"""Split smooth complete toric varieties over the rationals: fan
validation, (central) primitive collections, the simplicial-effective-cone
test, Cartier data, curve degrees delta_P, Cox heights, integral-point
enumeration on the complement of one boundary divisor, and the
alpha-experiment comparing measured approximation exponents with delta_P.

Cox coordinates of a rational point are primitive integer tuples up to the
sign action (the integral points of the Neron-Severi torus); integrality
off D_rho* means x_rho* is a unit.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import sympy

from .metrics import estimate_alpha, liouville_scan


class NotSimplicial(ValueError):
    pass


class NotCentral(ValueError):
    pass


class NotNef(ValueError):
    pass


class OutsideChart(ValueError):
    pass


class UnsupportedFan(ValueError):
    pass


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple  # tuple of integer tuples
    max_cones: tuple  # tuple of sorted index tuples

    def __post_init__(self):
        object.__setattr__(
            self, "rays", tuple(tuple(int(c) for c in r) for r in self.rays)
        )
        object.__setattr__(
            self, "max_cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones)
        )

    @property
    def n_rays(self):
        return len(self.rays)

    @property
    def rank(self):
        """r = #rays - dim (the Picard rank for smooth complete fans)."""
        return self.n_rays - self.dim

    def is_cone(self, ray_set):
        s = set(ray_set)
        return any(s <= set(c) for c in self.max_cones)

    @classmethod
    def from_dict(cls, data):
        return cls(int(data["dim"]), tuple(data["rays"]), tuple(data["max_cones"]))


def load_fan(path):
    """Read a fan file (JSON: dim, rays, max_cones, optional ample
    coefficients, optional boundary_rays).  Returns (fan, ample, boundary_rays)."""
    with open(path) as fh:
        data = json.load(fh)
    fan = Fan.from_dict(data)
    ample = tuple(data["ample"]) if "ample" in data else None
    boundary = tuple(data["boundary_rays"]) if "boundary_rays" in data else None
    return fan, ample, boundary


# ---------------------------------------------------------------------------
# exact linear algebra helpers (small matrices)


def _mat_inv(rows):
    """Exact inverse of a square integer/rational matrix, as Fractions."""
    m = sympy.Matrix(rows)
    inv = m.inv()
    return [
        [Fraction(sympy.Rational(inv[i, j]).p, sympy.Rational(inv[i, j]).q) for j in range(inv.cols)]
        for i in range(inv.rows)
    ]


def _det(rows):
    return int(sympy.Matrix(rows).det())


def validate_fan(fan: Fan):
    """Check primitivity of rays, smoothness (unimodular maximal cones),
    and completeness (facet pairing).  Returns a list of violations
    (empty means the fan is valid)."""
    out = []
    for i, r in enumerate(fan.rays):
        if len(r) != fan.dim:
            out.append(f"ray {i} has wrong dimension")
            continue
        g = 0
        for c in r:
            g = gcd(g, c)
        if g != 1:
            out.append(f"ray {i} = {r} is not primitive")
    for c in fan.max_cones:
        if len(set(c)) != fan.dim:
            out.append(f"cone {c} does not have {fan.dim} distinct rays")
            continue
        if any(i >= fan.n_rays for i in c):
            out.append(f"cone {c} references a missing ray")
            continue
        d = _det([fan.rays[i] for i in c])
        if abs(d) != 1:
            out.append(f"cone {c} is not unimodular (det {d})")
    facets = {}
    for c in fan.max_cones:
        for facet in itertools.combinations(c, fan.dim - 1):
            facets[facet] = facets.get(facet, 0) + 1
    for facet, count in facets.items():
        if count != 2:
            out.append(f"facet {facet} belongs to {count} maximal cones (want 2)")
    return out


# ---------------------------------------------------------------------------
# primitive collections and the effective-cone test


def central_primitive_collections(fan: Fan):
    """(central, non_central) primitive collections: minimal ray sets not
    spanning a cone; central when the ray generators sum to zero."""
    central, non_central = [], []
    idx = range(fan.n_rays)
    for size in range(2, fan.n_rays + 1):
        for sub in itertools.combinations(idx, size):
            if fan.is_cone(sub):
                continue
            if any(
                not fan.is_cone(s)
                for s in itertools.combinations(sub, size - 1)
            ):
                continue  # a proper subset already fails: not minimal
            total = tuple(sum(fan.rays[i][k] for i in sub) for k in range(fan.dim))
            (central if all(c == 0 for c in total) else non_central).append(sub)
    return central, non_central


def simplicial_effective_cone(fan: Fan):
    """A maximal cone sigma0 whose rays express every outside ray
    generator with nonpositive integer coefficients, or None."""
    for cone in fan.max_cones:
        inv = _mat_inv([fan.rays[i] for i in cone])
        ok = True
        for j in range(fan.n_rays):
            if j in cone:
                continue
            # coefficients c with n_j = sum c_i n_{cone_i}:  c = n_j * M^-1
            c = [
                sum(Fraction(fan.rays[j][k]) * inv[k][i] for k in range(fan.dim))
                for i in range(fan.dim)
            ]
            if not all(x.denominator == 1 and x <= 0 for x in c):
                ok = False
                break
        if ok:
            return cone
    return None


def relations_b(fan: Fan, sigma0):
    """Nonnegative matrix b with n_outside_j + sum_i b[i][j] * n_inside_i = 0.
    Returns (inside_order, outside_order, b) with b indexed [i][j]."""
    sigma0 = tuple(sorted(sigma0))
    inv = _mat_inv([fan.rays[i] for i in sigma0])
    outside = [j for j in range(fan.n_rays) if j not in sigma0]
    cols = []
    for j in outside:
        c = [
            sum(Fraction(fan.rays[j][k]) * inv[k][i] for k in range(fan.dim))
            for i in range(fan.dim)
        ]
        if not all(x.denominator == 1 and x <= 0 for x in c):
            raise NotSimplicial(f"{sigma0} does not dominate ray {j}")
        cols.append([int(-x) for x in c])
    b = [[cols[j][i] for j in range(len(outside))] for i in range(fan.dim)]
    return sigma0, tuple(outside), b


# ---------------------------------------------------------------------------
# line bundles, Cartier data, heights


@dataclass(frozen=True)
class LineBundleData:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))


@dataclass(frozen=True)
class CartierData:
    m: dict  # max cone -> integer vector m_sigma
    d: dict  # max cone -> D(sigma) coefficient tuple
    nef: bool
    ample: bool


def cartier_data(fan: Fan, L: LineBundleData):
    """Per maximal cone, the support function vector m_sigma with
    <m_sigma, n_rho> = a_rho on sigma(1) and the divisor
    D(sigma) = a - <m_sigma, .> supported off sigma(1); nef/ample flags."""
    a = L.coeffs
    if len(a) != fan.n_rays:
        raise ValueError("coefficient count mismatch")
    ms, ds = {}, {}
    nef = ample = True
    for cone in fan.max_cones:
        inv = _mat_inv([fan.rays[i] for i in cone])
        # m = M^-1 a_cone so that <m, n_rho> = a_rho for rho in cone
        m = [
            sum(inv[row][k] * Fraction(a[cone[k]]) for k in range(fan.dim))
            for row in range(fan.dim)
        ]
        assert all(x.denominator == 1 for x in m)
        m = tuple(int(x) for x in m)
        coeffs = []
        for j in range(fan.n_rays):
            val = a[j] - sum(m[k] * fan.rays[j][k] for k in range(fan.dim))
            coeffs.append(val)
            if j not in cone:
                if val < 0:
                    nef = ample = False
                elif val == 0:
                    ample = False
        ms[cone] = m
        ds[cone] = tuple(coeffs)
    return CartierData(ms, ds, nef, ample)


def delta_P(fan: Fan, L: LineBundleData, P):
    """Degree of the minimal rational curve of a central primitive
    collection: the sum of the bundle coefficients over the collection."""
    total = tuple(sum(fan.rays[i][k] for i in P) for k in range(fan.dim))
    if any(c != 0 for c in total):
        raise NotCentral(f"rays of {P} sum to {total}, not zero")
    return sum(L.coeffs[i] for i in P)


@dataclass(frozen=True)
class CoxPoint:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))


def is_primitive_cox(fan: Fan, coords):
    """Primitivity of a Cox tuple: for every prime p the set
    {rho : p | x_rho} (zeros included) spans a cone.  Equivalently, the
    zero set lies in a maximal cone and the gcd over such cones of the
    products of the outside coordinates is 1 (p fails exactly when it
    divides every such product)."""
    zero = {i for i, c in enumerate(coords) if c == 0}
    g = 0
    found = False
    for cone in fan.max_cones:
        if not zero <= set(cone):
            continue
        found = True
        prod = 1
        for j in range(fan.n_rays):
            if j not in cone:
                prod *= coords[j]
        g = gcd(g, prod)
        if abs(g) == 1:
            return True
    return found and abs(g) == 1


def cox_height(fan: Fan, L: LineBundleData, X, cd=None):
    """max over maximal cones of |prod_rho x_rho^{D(sigma)_rho}| (requires
    L nef so the exponents are nonnegative)."""
    if cd is None:
        cd = cartier_data(fan, L)
    if not cd.nef:
        raise NotNef("height monomials need nef coefficients")
    coords = X.coords if isinstance(X, CoxPoint) else tuple(X)
    best = 0
    for cone, dcoef in cd.d.items():
        val = 1
        for j, e in enumerate(dcoef):
            if e:
                val *= abs(coords[j]) ** e
        best = max(best, val)
    return best


# ---------------------------------------------------------------------------
# sign action and canonical representatives


def sign_vectors(fan: Fan):
    """The subgroup of {+-1}^rays acting trivially on the underlying
    variety: sign patterns s with sum s_rho * n_rho = 0 mod 2."""
    out = []
    for bits in itertools.product((0, 1), repeat=fan.n_rays):
        if all(
            sum(bits[i] * fan.rays[i][k] for i in range(fan.n_rays)) % 2 == 0
            for k in range(fan.dim)
        ):
            out.append(tuple(-1 if b else 1 for b in bits))
    return out


def canonical_cox(coords, signs):
    return min(
        tuple(s * c for s, c in zip(sv, coords)) for sv in signs
    )


# ---------------------------------------------------------------------------
# enumeration


def _fan_shape(fan: Fan):
    """Crude structural fingerprint for the registered coordinate-bound
    rules: projective space, product of projective lines, or a Hirzebruch
    surface."""
    n, N = fan.dim, fan.n_rays
    if N == n + 1 and all(
        sum(r[k] for r in fan.rays) == 0 for k in range(n)
    ):
        return "projective_space"
    ray_set = {tuple(r) for r in fan.rays}
    if N == 2 * n and all(
        tuple(-c for c in r) in ray_set for r in fan.rays
    ):
        return "product_of_lines"
    if n == 2 and N == 4:
        return "hirzebruch"
    return None


def enumerate_toric(fan: Fan, L: LineBundleData, A, B, allow_conservative=False):
    """Integral points of the complement of D_rho* (A = {rho*}) with
    cox_height <= B, as canonical Cox representatives sorted by
    (height, coordinates).

    The coordinate search box |x_rho| <= B is registered as complete for
    projective spaces, products of lines, and Hirzebruch surfaces with
    ample L; other fans require allow_conservative=True (the same box,
    completeness not guaranteed)."""
    (rho_star,) = tuple(A)
    central, _nc = central_primitive_collections(fan)
    if not any(rho_star in P for P in central):
        raise NotCentral(f"ray {rho_star} is in no central primitive collection")
    cd = cartier_data(fan, L)
    if not cd.ample:
        raise NotNef("enumeration bounds need an ample class")
    if _fan_shape(fan) is None and not allow_conservative:
        raise UnsupportedFan(
            "no registered coordinate bound; pass allow_conservative=True"
        )
    signs = sign_vectors(fan)
    free = [j for j in range(fan.n_rays) if j != rho_star]
    out = set()
    for vals in itertools.product(range(-B, B + 1), repeat=len(free)):
        for unit in (1, -1):
            coords = [0] * fan.n_rays
            coords[rho_star] = unit
            for j, v in zip(free, vals):
                coords[j] = v
            coords = tuple(coords)
            if not is_primitive_cox(fan, coords):
                continue
            if cox_height(fan, L, coords, cd) > B:
                continue
            out.add(canonical_cox(coords, signs))
    ordered = sorted(out, key=lambda c: (cox_height(fan, L, c, cd), c))
    return [CoxPoint(c) for c in ordered]


def chart_coords(fan: Fan, sigma, X):
    """Affine coordinates on the chart of a maximal cone: y_k is the
    monomial prod_rho x_rho^{<m_k, n_rho>} for the dual basis m_k of
    sigma's ray basis (all coordinates off sigma must be nonzero)."""
    sigma = tuple(sorted(sigma))
    coords = X.coords if isinstance(X, CoxPoint) else tuple(X)
    for j in range(fan.n_rays):
        if j not in sigma and coords[j] == 0:
            raise OutsideChart(f"coordinate {j} vanishes")
    inv = _mat_inv([fan.rays[i] for i in sigma])
    # dual basis m_k = k-th column of M^-1
    ys = []
    for k in range(fan.dim):
        y = Fraction(1)
        for j in range(fan.n_rays):
            e = sum(inv[t][k] * fan.rays[j][t] for t in range(fan.dim))
            assert e.denominator == 1
            e = int(e)
            if e:
                y *= Fraction(coords[j]) ** e
        ys.append(y)
    return tuple(ys)


# ---------------------------------------------------------------------------
# the alpha experiment


def min_delta_over(fan: Fan, L: LineBundleData, A):
    """Experimental: the minimum delta_P over central primitive collections
    meeting the boundary ray set A (at most one ray per collection)."""
    central, _nc = central_primitive_collections(fan)
    hit = [P for P in central if any(r in P for r in A)]
    if not hit:
        raise NotCentral(f"no central primitive collection meets {A}")
    for P in hit:
        if sum(1 for r in A if r in P) > 1:
            raise ValueError(f"more than one ray of {A} in collection {P}")
    return min(delta_P(fan, L, P) for P in hit)


@dataclass
class ToricAlphaResult:
    delta: int
    estimate: object  # AlphaEstimate
    scan: list  # dyadic minima of d^delta * H
    points_used: int


def toric_alpha_experiment(
    fan, L, A, x, B, tube_constant=64, noise_floor=30, simplicial_required=False
):
    """Measure the approximation exponent toward a boundary point
    x in D_rho* from integral points of the complement of D_rho*, and
    report it alongside the predicted degree delta_P.

    Enumerates integral points inside the dyadic tube
    d <= min(1/2, (C/H0)^(1/delta)) of a chart containing x, which is
    guaranteed to contain every Pareto-frontier tail point and every
    dyadic-window minimizer of d^delta * H as long as those quantities
    stay below the generous constant C = tube_constant."""
    (rho_star,) = tuple(A)
    central, _nc = central_primitive_collections(fan)
    P = next((p for p in central if rho_star in p), None)
    if P is None:
        raise NotCentral(f"ray {rho_star} is in no central primitive collection")
    delta = delta_P(fan, L, P)
    cd = cartier_data(fan, L)
    if not cd.ample:
        raise NotNef("the experiment needs an ample class")
    if simplicial_required and simplicial_effective_cone(fan) is None:
        raise NotSimplicial("effective cone is not simplicial")

    xc = x.coords if isinstance(x, CoxPoint) else tuple(x)
    if xc[rho_star] != 0 or any(
        c == 0 for j, c in enumerate(xc) if j != rho_star
    ):
        raise ValueError("x must vanish exactly at rho*")

    sigma = next(c for c in fan.max_cones if rho_star in c)
    inner = tuple(sorted(sigma))
    outer = [j for j in range(fan.n_rays) if j not in inner]
    k_star = inner.index(rho_star)
    inv = _mat_inv([fan.rays[i] for i in inner])
    # exponent table e[k][j] = <m_k, n_j>
    expo = [
        [
            int(sum(inv[t][k] * fan.rays[j][t] for t in range(fan.dim)))
            for j in range(fan.n_rays)
        ]
        for k in range(fan.dim)
    ]
    y0 = []
    for k in range(fan.dim):
        if k == k_star:
            y0.append(Fraction(0))
            continue
        y = Fraction(1)
        for j in range(fan.n_rays):
            if expo[k][j]:
                y *= Fraction(xc[j]) ** expo[k][j]
        y0.append(y)

    d_out = [cd.d[sigma][j] for j in outer]  # positive (ample)
    assert all(e > 0 for e in d_out)
    C = Fraction(tube_constant)

    # per-cone height monomials split into outer and inner parts
    cone_outer = []  # list of (cone, [(outer_pos, exp)], [(inner_k, exp)])
    for cone, dcoef in cd.d.items():
        op = [(p, dcoef[j]) for p, j in enumerate(outer) if dcoef[j]]
        ip = [(k, dcoef[inner[k]]) for k in range(fan.dim) if dcoef[inner[k]]]
        cone_outer.append((op, ip))

    records = []
    signs = sign_vectors(fan)
    seen = set()
    inner_other = [k for k in range(fan.dim) if k != k_star]

    def rec_outer(pos, partial_h, assign):
        if pos == len(outer):
            _finish(partial_h, assign)
            return
        e = d_out[pos]
        v = 1
        while partial_h * v**e <= B:
            for sv in (v, -v):
                rec_outer(pos + 1, partial_h * v**e, assign + [sv])
            v += 1

    def _finish(h0, assign):
        # tube width from the Liouville-style bound d^delta * H <= C
        w = min(Fraction(1, 2), _root_bound(C, h0, delta))
        # inverse chart monomials: y_k = X_{inner_k} * q[k]
        q = []
        for k in range(fan.dim):
            v = Fraction(1)
            for p, j in enumerate(outer):
                if expo[k][j]:
                    v *= Fraction(assign[p]) ** expo[k][j]
            q.append(v)
        if abs(q[k_star]) > w:  # |y_{k*}| with X_{rho*} = +-1
            return
        # integer ranges for the remaining inner coordinates
        ranges = []
        for k in inner_other:
            lo = (y0[k] - w) / q[k]
            hi = (y0[k] + w) / q[k]
            if q[k] < 0:
                lo, hi = hi, lo
            ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
        h_out = [
            math.prod(abs(assign[p]) ** e for p, e in op) for op, _ip in cone_outer
        ]
        for combo in itertools.product(*ranges):
            for unit in (1, -1):
                xin = [0] * fan.dim
                xin[k_star] = unit
                for k, v in zip(inner_other, combo):
                    xin[k] = v
                d = abs(q[k_star])
                for k in inner_other:
                    d = max(d, abs(xin[k] * q[k] - y0[k]))
                if d > w or d == 0:
                    continue
                h = 0
                for base, (_op, ip) in zip(h_out, cone_outer):
                    for k, e in ip:
                        base *= abs(xin[k]) ** e
                    if base > h:
                        h = base
                if h > B:
                    continue
                coords = [0] * fan.n_rays
                for p, j in enumerate(outer):
                    coords[j] = assign[p]
                for k in range(fan.dim):
                    coords[inner[k]] = xin[k]
                coords = tuple(coords)
                if not is_primitive_cox(fan, coords):
                    continue
                key = canonical_cox(coords, signs)
                if key in seen:
                    continue
                seen.add(key)
                records.append((key, h, d))

    rec_outer(0, 1, [])
    est = estimate_alpha(None, records, noise_floor=noise_floor)
    scan = liouville_scan([(h, d) for _k, h, d in records], Fraction(delta))
    return ToricAlphaResult(delta, est, scan, len(records))


def _root_bound(C, h0, delta):
    """A Fraction upper bound for (C/h0)^(1/delta)."""
    if h0 <= C:
        return Fraction(1)
    val = (float(C) / float(h0)) ** (1.0 / delta)
    # dyadic upper bound with a little slack
    return Fraction(int(val * (1 << 40)) + 2, 1 << 40)
