"""Independent brute-force oracles used to fix expected values.

Nothing here may import the enumeration/normal-form code paths it checks:
determinants are cofactor expansions, root searches are plain coefficient
boxes, ranks are a local Gaussian elimination, group orders come from matrix
closure.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def cofactor_det(m) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def quad(gram, v):
    n = len(gram)
    return sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))


def box_vectors_of_norm(gram, target, radius):
    """All vectors with coordinates in [-radius, radius] of the given norm."""
    n = len(gram)
    out = []
    for v in itertools.product(range(-radius, radius + 1), repeat=n):
        if quad(gram, v) == target:
            out.append(v)
    return sorted(out)


def gauss_rank(rows) -> int:
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][c] != 0:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pivval = rows[rank][c]
        rows[rank] = [x / pivval for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def e8_standard_model_root_count() -> int:
    """Root count of E8 in its classical coordinates: +-e_i +- e_j pairs plus
    half-integer vectors with an even number of minus signs (norm 2 for the
    standard dot product, doubled here to avoid fractions)."""
    count = 0
    for i in range(8):
        for j in range(i + 1, 8):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * 8
                    v[i], v[j] = 2 * si, 2 * sj  # doubled coordinates
                    assert sum(x * x for x in v) == 8
                    count += 1
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            assert sum(x * x for x in signs) == 8
            count += 1
    return count


def reflection_matrix(gram, beta):
    """Matrix of v -> v + (v.beta) beta acting on column vectors."""
    n = len(gram)
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        pair = sum(e[i] * gram[i][k] * beta[k] for i in range(n) for k in range(n))
        cols.append([e[i] + pair * beta[i] for i in range(n)])
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def matrix_group_order(generators, cap=100000) -> int:
    """Order of the group generated by integer matrices, by closure."""
    def mul(a, b):
        n = len(a)
        return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                           for j in range(n)) for i in range(n))

    gens = [tuple(tuple(r) for r in g) for g in generators]
    n = len(gens[0])
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = mul(m, g)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
                    if len(seen) > cap:
                        raise RuntimeError("group closure exceeded the cap")
        frontier = nxt
    return len(seen)


def un_span_det(n, a, b) -> int:
    """Determinant of the span Gram of U(n) with a norm -2 vector pairing
    (a, -b) against the isotropic basis."""
    return cofactor_det([[0, n, a], [n, 0, -b], [a, -b, -2]])


def un_wall_rays_oracle(n) -> set:
    """Expected wall trace rays of U(n) over the full cone: primitive (b, a)
    with the 3x3 span of determinant > 0 (hyperbolic), plus the internal root
    walls found by a box search."""
    from math import gcd

    rays = set()
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if gcd(a, b) != 1:
                continue
            if un_span_det(n, a, b) > 0:
                rays.add((b, a))
    # internal roots: 2 n x y = -2 has integer solutions only for n = 1
    for x in range(-2, 3):
        for y in range(-2, 3):
            if 2 * n * x * y == -2:
                # hyperplane of (x, y): trace ray (x, -y) normalized into the
                # first quadrant
                rx, ry = (x, -y) if x > 0 else (-x, y)
                g = gcd(abs(rx), abs(ry))
                rays.add((rx // g, ry // g))
    return rays


def pell_fundamental_brute(d, cap=10**7):
    y = 1
    while y < cap:
        x2 = 1 + d * y * y
        x = int(x2 ** 0.5)
        for xx in (x - 1, x, x + 1, x + 2):
            if xx > 0 and xx * xx == x2:
                return xx, y
        y += 1
    raise RuntimeError("no Pell solution below the cap")


def pell_wall_traces_oracle(n, d, lo, hi, box=400) -> set:
    """Wall trace rays of the diag(2n, -2nd) lattice inside the closed-open
    interval [lo, hi), by brute force over pairing functionals (a, b):
    0 < b^2 - d a^2 <= 4 n d, trace on the positive-x side of the cone."""
    from math import gcd

    def cross(u, v):
        return u[0] * v[1] - u[1] * v[0]

    rays = set()
    for a in range(-box, box + 1):
        for b in range(1, box + 1):
            if gcd(abs(a), b) != 1:
                continue
            k = b * b - d * a * a
            if not (0 < k <= 4 * n * d):
                continue
            if k == 4 * n * d:
                # dual norm exactly -2: a wall only for an integral vector,
                # which is never primitive as a functional here
                continue
            w = (b, -a)  # positive-x trace of the hyperplane of (a, b)
            if cross(lo, w) >= 0 and cross(w, hi) > 0:
                rays.add(w)
    return rays
