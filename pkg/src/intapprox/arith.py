"""Exact integer/rational helpers: gcd normalization, continued fractions,
Pell equations, fundamental-unit powers, and lattice slab search.

Everything here is exact; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt


class ZeroPair(ValueError):
    """All coordinates of a would-be projective point are zero."""


class ZeroVector(ValueError):
    pass


class SquareInput(ValueError):
    """d was a perfect square where a nonsquare was required."""


class SearchExhausted(RuntimeError):
    """A bounded search ran out of budget before finding a witness."""


def gcd_normalize(coords):
    """Reduce an integer tuple to primitive form with the first nonzero
    entry positive.  Raises ZeroPair if all entries are zero."""
    coords = tuple(int(c) for c in coords)
    g = 0
    for c in coords:
        g = gcd(g, c)
    if g == 0:
        raise ZeroPair(f"zero tuple {coords}")
    for c in coords:
        if c != 0:
            if c < 0:
                g = -g
            break
    return tuple(c // g for c in coords)


def _is_prime(p):
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def padic_sup(coords, p):
    """sup-norm of an integer tuple at the prime p, as an exact Fraction:
    p^(-min_i v_p(coords_i)), ignoring zero entries."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    coords = tuple(int(c) for c in coords)
    if all(c == 0 for c in coords):
        raise ZeroPair(f"zero tuple {coords}")
    vmin = None
    for c in coords:
        if c == 0:
            continue
        v = 0
        while c % p == 0:
            c //= p
            v += 1
        if vmin is None or v < vmin:
            vmin = v
        if vmin == 0:
            break
    return Fraction(1, p**vmin) if vmin >= 0 else Fraction(p ** (-vmin))


def continued_fraction_sqrt(d):
    """Continued fraction of sqrt(d) for nonsquare d >= 2.

    Returns (a0, period) where period is the full periodic block
    (ending in 2*a0)."""
    d = int(d)
    if d < 2:
        raise ValueError("need d >= 2")
    a0 = isqrt(d)
    if a0 * a0 == d:
        raise SquareInput(f"{d} is a perfect square")
    period = []
    m, den, a = 0, 1, a0
    while True:
        m = den * a - m
        den = (d - m * m) // den
        a = (a0 + m) // den
        period.append(a)
        if a == 2 * a0:
            return a0, tuple(period)


@dataclass(frozen=True)
class PellSolution:
    d: int
    m: int
    n: int

    def __iter__(self):
        return iter((self.m, self.n))


def pell_fundamental(d):
    """Least solution (m, n) with m, n > 0 of m^2 - d*n^2 = 1,
    via the continued fraction of sqrt(d)."""
    a0, period = continued_fraction_sqrt(d)
    # convergent just before the period closes
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    for a in period[:-1]:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    if h * h - d * k * k == 1:
        m, n = h, k
    else:
        # odd period: (h, k) solves m^2 - d n^2 = -1; square it
        m, n = h * h + d * k * k, 2 * h * k
    assert m * m - d * n * n == 1
    return PellSolution(d, m, n)


def unit_powers(sol: PellSolution, count):
    """Powers (m_k, n_k) with m_k + n_k*sqrt(d) = (m + n*sqrt(d))^k for
    k = 1..count, via the integer recurrence."""
    d, m1, n1 = sol.d, sol.m, sol.n
    # (m + n sqrt d)(m1 + n1 sqrt d) = (m m1 + d n n1) + (m n1 + n m1) sqrt d
    m, n = 1, 0
    out = []
    for _ in range(count):
        m, n = m * m1 + d * n * n1, m * n1 + n * m1
        out.append(PellSolution(d, m, n))
    return out


def norm_one_small_unit(d, delta):
    """Smallest power k of the fundamental unit with conjugate embedding
    0 < m_k - n_k*sqrt(d) < delta.  Returns (m_k, n_k, k); the comparison
    is exact ((m - delta)^2 vs d n^2, delta rational)."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    fund = pell_fundamental(d)
    m, n = fund.m, fund.n
    for k in range(1, 10_000):
        # m - n sqrt d < delta  <=>  m - delta < n sqrt d
        lhs = Fraction(m) - delta
        if lhs <= 0 or lhs * lhs < Fraction(d * n * n):
            return m, n, k
        m, n = m * fund.m + d * n * fund.n, m * fund.n + n * fund.m
    raise SearchExhausted("unit powers did not reach the slab")


@dataclass(frozen=True)
class LatticeBasis:
    """Basis of a full-rank sublattice of Z^n (rows are basis vectors,
    entries rational)."""

    vectors: tuple

    def __post_init__(self):
        vecs = tuple(tuple(Fraction(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        n = len(vecs)
        if n == 0 or any(len(v) != n for v in vecs):
            raise ValueError("need n vectors of length n")
        if _det([list(v) for v in vecs]) == 0:
            raise ZeroVector("basis vectors are linearly dependent")

    @property
    def dim(self):
        return len(self.vectors)

    def combine(self, coeffs):
        """Integer combination sum_i coeffs[i] * vectors[i]."""
        n = self.dim
        return tuple(
            sum(coeffs[i] * self.vectors[i][j] for i in range(n)) for j in range(n)
        )


def _det(rows):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    rows = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = rows[col][col]
        for r in range(col + 1, n):
            f = rows[r][col] / inv
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return det


def _rational_kernel(rows, ncols):
    """One nonzero rational kernel vector of the given row system, or None."""
    import sympy

    M = sympy.Matrix(len(rows), ncols, lambda i, j: sympy.Rational(rows[i][j]))
    ns = M.nullspace()
    if not ns:
        return None
    v = ns[0]
    fracs = [Fraction(sympy.Rational(x).p, sympy.Rational(x).q) for x in v]
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return tuple(c // g for c in ints)


def slab_lattice_point(basis, delta, max_rounds=20):
    """Integer coefficients c such that x = sum c_i v_i has x_0 >= 1/delta
    and |x_j| <= delta for j >= 1.

    Existence: any full-rank lattice meets the slab ("large first
    coordinate, small remaining coordinates") in infinitely many points.
    Strategy: if the projection to the last n-1 coordinates has a lattice
    kernel vector, scale it; otherwise search growing coefficient boxes for
    a point with tiny tail and scale that."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    n = basis.dim
    inv_delta = 1 / delta

    def _scaled(coeffs):
        x = basis.combine(coeffs)
        if x[0] == 0:
            return None
        k = 1
        need = inv_delta / abs(x[0])
        k = max(1, -(-need.numerator // need.denominator))  # ceil
        tail = max((abs(t) for t in x[1:]), default=Fraction(0))
        if k * tail <= delta:
            sgn = 1 if x[0] > 0 else -1
            return tuple(sgn * k * c for c in coeffs)
        return None

    if n == 1:
        got = _scaled((1,))
        if got:
            return got
        raise SearchExhausted("degenerate 1-d basis")

    rows = [[basis.vectors[i][j] for i in range(n)] for j in range(1, n)]
    ker = _rational_kernel(rows, n)
    if ker is not None:
        got = _scaled(ker)
        if got:
            return got

    # projection injective: hunt for a lattice point with small tail
    budget = 2_000_000
    seen = 0
    for r in range(max_rounds):
        R = 1 << r
        if (2 * R + 1) ** n > budget:
            break
        best = None
        for coeffs in product(range(-R, R + 1), repeat=n):
            if all(c == 0 for c in coeffs):
                continue
            seen += 1
            x = basis.combine(coeffs)
            if x[0] == 0:
                continue
            tail = max(abs(t) for t in x[1:])
            if best is None or tail < best[0]:
                best = (tail, coeffs)
        if best is not None:
            got = _scaled(best[1])
            if got:
                return got
    raise SearchExhausted(f"no slab point within budget ({seen} candidates)")
