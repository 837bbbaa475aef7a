"""Exact arithmetic substrate: rationals, quadratic surds, integer/rational matrix kernels.

Everything here is decision-grade: no floating point anywhere. Matrices are
tuples of tuples (rows); vectors are plain tuples. Entries are Python ints or
``fractions.Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]
RatVec = tuple[Fraction, ...]
RatMat = tuple[RatVec, ...]


class ExactError(ValueError):
    """Contract violation in an exact-arithmetic operation."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (x, y, g) with x*a + y*b == g = gcd(a, b), g >= 0
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def squarefree_part(n: int) -> tuple[int, int]:
    """Split n > 0 as s*k^2 with s squarefree; returns (s, k). Trial division."""
    if n <= 0:
        raise ExactError("squarefree_part needs a positive integer")
    s, k, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1 if p == 2 else 2
    return s * n, k


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number a + b*sqrt(d) with a, b rational and d squarefree > 1.

    Comparisons and sign are exact (decided by rational comparisons and
    squaring, never by rounding). Values over different radicals cannot be
    mixed unless one side is rational.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        b = Fraction(self.b)
        s, k = squarefree_part(int(self.d))
        if s <= 1:
            if s == 1:  # perfect-square radicand collapses to a rational
                object.__setattr__(self, "a", self.a + b * k)
                object.__setattr__(self, "b", Fraction(0))
                object.__setattr__(self, "d", 2)
                return
            raise ExactError("radicand must be > 1")
        object.__setattr__(self, "b", b * k)
        object.__setattr__(self, "d", s)

    @staticmethod
    def of(x) -> "QuadraticSurd":
        if isinstance(x, QuadraticSurd):
            return x
        return QuadraticSurd(Fraction(x), Fraction(0), 2)

    def _join(self, other: "QuadraticSurd") -> int:
        # common radicand; a purely rational side adopts the other's d
        if self.b == 0:
            return other.d
        if other.b == 0 or self.d == other.d:
            return self.d
        raise ExactError(f"mixed radicals sqrt({self.d}) and sqrt({other.d})")

    def __add__(self, other):
        o = QuadraticSurd.of(other)
        return QuadraticSurd(self.a + o.a, self.b + o.b, self._join(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-QuadraticSurd.of(other))

    def __rsub__(self, other):
        return QuadraticSurd.of(other) - self

    def __mul__(self, other):
        o = QuadraticSurd.of(other)
        d = self._join(o)
        return QuadraticSurd(self.a * o.a + self.b * o.b * d,
                             self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticSurd":
        n = self.a * self.a - self.b * self.b * self.d
        if self.a == 0 and self.b == 0:
            raise ZeroDivisionError("surd is zero")
        return QuadraticSurd(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        return self * QuadraticSurd.of(other).inverse()

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d, the larger magnitude wins
        lhs, rhs = a * a, b * b * self.d
        if lhs == rhs:
            return 0
        bigger_is_a = lhs > rhs
        return (1 if a > 0 else -1) if bigger_is_a else (1 if b > 0 else -1)

    def __eq__(self, other):
        try:
            o = QuadraticSurd.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self - o).sign() == 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return (self - QuadraticSurd.of(other)).sign() < 0

    def __le__(self, other):
        return (self - QuadraticSurd.of(other)).sign() <= 0

    def __gt__(self, other):
        return (self - QuadraticSurd.of(other)).sign() > 0

    def __ge__(self, other):
        return (self - QuadraticSurd.of(other)).sign() >= 0

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.d})"


def surd_sign(x: QuadraticSurd) -> int:
    """Exact sign of a + b*sqrt(d): one of -1, 0, +1."""
    return QuadraticSurd.of(x).sign()


# ---------------------------------------------------------------------------
# matrices


def mat(rows) -> tuple:
    rows = tuple(tuple(r) for r in rows)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ExactError("ragged matrix")
    return rows


def identity(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> IntMat:
    return tuple((0,) * n for _ in range(m))


def transpose(m) -> tuple:
    return tuple(zip(*m)) if m else ()


def mat_mul(a, b) -> tuple:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a, v) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def vec_add(u, v) -> tuple:
    return tuple(x + y for x, y in zip(u, v))

def vec_sub(u, v) -> tuple:
    return tuple(x - y for x, y in zip(u, v))

def vec_scale(c, v) -> tuple:
    return tuple(c * x for x in v)


def vec_content(v) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, int(x))
    return g


def vec_primitive(v: IntVec) -> IntVec:
    """Divide by the content and normalize the first nonzero entry positive."""
    g = vec_content(v)
    if g == 0:
        raise ExactError("zero vector has no primitive representative")
    w = tuple(int(x) // g for x in v)
    for x in w:
        if x:
            return w if x > 0 else tuple(-y for y in w)
    raise ExactError("unreachable")


def clear_denominators(v) -> tuple[IntVec, int]:
    """Return (integer vector, l) with v = vector / l."""
    l = 1
    for x in v:
        l = l * Fraction(x).denominator // math.gcd(l, Fraction(x).denominator)
    return tuple(int(Fraction(x) * l) for x in v), l


def det_int(m: IntMat) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ExactError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def hnf(m: IntMat) -> IntMat:
    """Canonical row Hermite normal form (pivots positive, entries above
    pivots reduced into [0, pivot), zero rows dropped)."""
    rows = [list(map(int, r)) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        # pick the remaining row with the smallest nonzero |entry| in column c
        best = None
        for i in range(r, nrows):
            if rows[i][c] and (best is None or abs(rows[i][c]) < abs(rows[best][c])):
                best = i
        if best is None:
            continue
        _swap_rows(rows, r, best)
        # euclidean elimination below the pivot
        while True:
            done = True
            for i in range(r + 1, nrows):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        _swap_rows(rows, r, i)
                        done = False
            if done:
                break
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    # reduce entries above each pivot
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        p = rows[k][c]
        for i in range(k):
            q = rows[i][c] // p
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[k])]
    return tuple(tuple(row) for row in rows[: len(pivots)])


def snf(m: IntMat) -> tuple[tuple[int, ...], IntMat, IntMat]:
    """Smith normal form: returns (divisors, U, V) with U*m*V diagonal,
    U and V unimodular, and each divisor dividing the next."""
    a = [list(map(int, r)) for r in mat(m)]
    nr = len(a)
    nc = len(a[0]) if a else 0
    u = [list(r) for r in identity(nr)]
    v = [list(r) for r in identity(nc)]

    def row_op(i, j, q):  # row_i -= q*row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q*col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(nr, nc):
        # Markowitz-style: bring the smallest nonzero |entry| to the pivot
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # pivot must divide every remaining entry for the divisor chain
        p = a[t][t]
        fixed = False
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % p:
                    row_op(t, i, -1)  # fold row i into the pivot row
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if p < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    divisors = tuple(a[i][i] for i in range(min(nr, nc)))
    return divisors, tuple(tuple(r) for r in u), tuple(tuple(r) for r in v)


def kernel_int(m: IntMat) -> tuple[IntVec, ...]:
    """Basis of the saturated right kernel {x in Z^n : m x = 0}, rows in HNF."""
    a = mat(m)
    nc = len(a[0]) if a else 0
    if not a:
        return identity(nc)
    divisors, _, v = snf(a)
    rank = sum(1 for d in divisors if d)
    basis = [tuple(row[j] for row in v) for j in range(rank, nc)]
    if not basis:
        return ()
    return hnf(basis)


def solve_diophantine(a: IntMat, b: IntVec) -> IntVec | None:
    """One integer solution x of a x = b, or None if there is none."""
    divisors, u, v = snf(a)
    c = mat_vec(u, b)
    nr, nc = len(a), len(a[0]) if a else 0
    y = [0] * nc
    for i in range(nr):
        d = divisors[i] if i < len(divisors) else 0
        if d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i]:
            return None
    return mat_vec(v, tuple(y))


def solve_rational(a, b) -> RatVec:
    """Unique rational solution of a x = b for square invertible a."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ExactError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(aug[r][n] for r in range(n))


def inverse_rational(a) -> RatMat:
    n = len(a)
    cols = [solve_rational(a, tuple(1 if i == j else 0 for i in range(n)))
            for j in range(n)]
    return transpose(cols)


def rank_rational(m) -> int:
    rows = [[Fraction(x) for x in row] for row in m]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        rows[rank] = [x / p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def symmetric_diagonalize(g) -> tuple[RatVec, RatMat]:
    """Congruence-diagonalize a symmetric rational matrix.

    Returns (d, t) with t invertible over Q and t^T g t = diag(d). Zero
    diagonal pivots are repaired by the rank-2 hyperbolic move (add a column
    with a nonzero pairing into the pivot column).
    """
    n = len(g)
    a = [[Fraction(x) for x in row] for row in mat(g)]
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ExactError("symmetric_diagonalize needs a symmetric matrix")
    t = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]

    def add_col(dst, src, f):  # col_dst += f*col_src, congruently
        for row in a:
            row[dst] += f * row[src]
        for k in range(n):
            a[dst][k] += f * a[src][k]
        for row in t:
            row[dst] += f * row[src]

    def swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        a[i], a[j] = a[j], a[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    for i in range(n):
        if a[i][i] == 0:
            j = next((k for k in range(i + 1, n) if a[k][k]), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((k for k in range(i + 1, n) if a[i][k]), None)
                if j is None:
                    continue  # row is zero from i on: degenerate direction
                add_col(i, j, Fraction(1))  # hyperbolic pair: makes a[i][i] = 2*a[i][j]
        for j in range(i + 1, n):
            if a[i][j]:
                add_col(j, i, -a[i][j] / a[i][i])
    return tuple(a[k][k] for k in range(n)), tuple(tuple(row) for row in t)


# ---------------------------------------------------------------------------
# exact integer square-root helpers used by the short-vector enumerator


def floor_sqrt(r: Fraction) -> int:
    """floor(sqrt(r)) for a nonnegative rational r."""
    if r < 0:
        raise ExactError("negative radicand")
    p, q = r.numerator, r.denominator
    return math.isqrt(p * q) // q


def floor_sqrt_plus(r: Fraction, c: Fraction) -> int:
    """floor(sqrt(r) + c), exactly, for rational r >= 0 and rational c."""
    if r < 0:
        raise ExactError("negative radicand")
    p, q = r.numerator, r.denominator
    a, b = c.numerator, c.denominator
    # floor((b*sqrt(pq) + a q) / (b q)); floor(b*sqrt(pq)) = isqrt(b^2 p q)
    return (math.isqrt(b * b * p * q) + a * q) // (b * q)
