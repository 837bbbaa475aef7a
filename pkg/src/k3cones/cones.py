"""Very irrational vectors, wall enumeration, and rank-2 small-cone fans.

Walls are hyperplanes cut on the positive cone by dual vectors of admissible
negative norm. A wall is identified by its primitive trace ray inside the
closed positive cone; the stored normal data is the dual-basis (functional)
coordinate vector ``lam`` and a distinguished representative ``beta_lambda``
on the normal ray.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from math import isqrt

from .lattices import Lattice, LatticeError, is_hyperbolic
from .numeric import (
    IntVec,
    QuadraticSurd,
    RatVec,
    clear_denominators,
    floor_sqrt,
    inverse_rational,
    mat_vec,
    rank_rational,
    symmetric_diagonalize,
    vec_dot,
    vec_primitive,
)
from .roots import ade_type, enumerate_roots, weyl_order


class ConeError(LatticeError):
    """Violated small-cone-machinery contract."""


class OnWallError(ConeError):
    """The queried vector lies exactly on a wall."""

    def __init__(self, wall: "Wall"):
        super().__init__(f"vector lies on wall lambda={wall.lam}")
        self.wall = wall


class RegionError(ConeError):
    """Bad wall-search region (touching an irrational boundary, too large...)."""


class InfiniteWallsError(ConeError):
    """Full-cone search requested where the wall set is infinite."""


def exact_sign(x) -> int:
    if isinstance(x, QuadraticSurd):
        return x.sign()
    return (x > 0) - (x < 0)


def cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


# ---------------------------------------------------------------------------
# very irrational vectors


@dataclass(frozen=True)
class IrrationalVector:
    """A vector of the real span of a lattice, written over a declared
    Q-linearly independent real basis omega_0 = 1, omega_1, ...

    ``columns[j]`` is the rational coordinate vector multiplying omega_j.
    ``omega_values`` optionally gives exact surd values for omega_j (j >= 1),
    all over a single radical, which makes sign evaluation exact.
    """

    lattice: Lattice
    columns: tuple[RatVec, ...]
    omega_tags: tuple[str, ...] = ()
    omega_values: tuple[QuadraticSurd, ...] | None = None

    def __post_init__(self):
        cols = tuple(tuple(Fraction(x) for x in c) for c in self.columns)
        if not cols:
            raise ConeError("need at least the rational column")
        r = self.lattice.rank
        if any(len(c) != r for c in cols):
            raise ConeError(f"every column must have length {r}")
        tags = self.omega_tags or tuple(
            "1" if j == 0 else f"w{j}" for j in range(len(cols)))
        if len(tags) != len(cols) or len(set(tags)) != len(tags):
            raise ConeError("omega tags must be distinct and match the columns")
        if tags[0] != "1":
            raise ConeError("omega_0 must be the rational unit, tagged '1'")
        vals = self.omega_values
        if vals is not None:
            vals = tuple(vals)
            if len(vals) != len(cols) - 1:
                raise ConeError("omega_values must cover the columns past the first")
            if len(vals) > 1:
                raise ConeError(
                    "several values over one radical are Q-dependent with 1")
            for v in vals:
                if not isinstance(v, QuadraticSurd) or v.b == 0:
                    raise ConeError("omega values must be irrational surds")
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "omega_tags", tags)
        object.__setattr__(self, "omega_values", vals)

    def coefficient_rows(self) -> tuple[RatVec, ...]:
        """The rank-test matrix: r rows, one per lattice coordinate."""
        return tuple(tuple(c[i] for c in self.columns)
                     for i in range(self.lattice.rank))

    def evaluable(self) -> bool:
        return len(self.columns) == 1 or self.omega_values is not None

    def eval_coords(self) -> tuple:
        """Exact coordinate values (rationals or surds over one radical)."""
        if not self.evaluable():
            raise ConeError("no numeric values declared for the omega basis")
        coords = list(self.columns[0])
        for j, v in enumerate(self.omega_values or ()):
            coords = [c + self.columns[j + 1][i] * v for i, c in enumerate(coords)]
        return tuple(coords)


def rational_h(lattice: Lattice, coords) -> IrrationalVector:
    return IrrationalVector(lattice, (tuple(Fraction(x) for x in coords),))


def surd_h(lattice: Lattice, rational_part, surd_part, d: int) -> IrrationalVector:
    """The vector rational_part + sqrt(d) * surd_part."""
    return IrrationalVector(
        lattice,
        (tuple(Fraction(x) for x in rational_part),
         tuple(Fraction(x) for x in surd_part)),
        ("1", f"sqrt({d})"),
        (QuadraticSurd(0, 1, d),),
    )


def very_irrational(h: IrrationalVector) -> bool:
    """True iff no nonzero rational functional annihilates h, i.e. the
    coefficient matrix has full rank over Q."""
    if h.lattice.rank == 0:
        return False
    return rank_rational(h.coefficient_rows()) == h.lattice.rank


# ---------------------------------------------------------------------------
# walls


@dataclass(frozen=True)
class Wall:
    """A wall hyperplane on the positive cone.

    ``lam``: primitive dual-basis (functional) coordinates of the normal,
    first nonzero entry positive. ``beta_lambda``: the distinguished dual
    vector on the ray (the lattice root itself for internal walls).
    """

    lattice: Lattice
    lam: IntVec
    lambda_norm: Fraction
    beta_lambda: RatVec
    source: str
    realizability: str = "assumed"
    witness: IntVec | None = None
    trace_ray: IntVec | None = None

    def __post_init__(self):
        lam = vec_primitive(self.lam)
        if lam != tuple(self.lam):
            raise ConeError("lam must be primitive with first nonzero entry positive")
        nrm = Fraction(self.lambda_norm)
        if not (-2 <= nrm < 0):
            raise ConeError("wall norm must lie in [-2, 0)")
        if self.source not in ("internal-root", "external"):
            raise ConeError(f"unknown wall source {self.source!r}")
        beta = tuple(Fraction(x) for x in self.beta_lambda)
        if self.source == "internal-root":
            if nrm != -2 or any(x.denominator != 1 for x in beta):
                raise ConeError("internal-root walls carry an integral norm -2 vector")
        if self.realizability not in ("assumed", "certified", "refuted"):
            raise ConeError(f"unknown realizability {self.realizability!r}")
        object.__setattr__(self, "lambda_norm", nrm)
        object.__setattr__(self, "beta_lambda", beta)

    def key(self):
        return self.lam


def positive_cone_vector(l: Lattice) -> IntVec:
    """Deterministic rational point of the chosen positive cone: the positive
    column of the exact diagonalizer, first nonzero coordinate positive."""
    d, t = symmetric_diagonalize(l.gram)
    pos = [i for i, x in enumerate(d) if x > 0]
    if len(pos) != 1:
        raise ConeError("positive cone needs a hyperbolic lattice")
    col = tuple(row[pos[0]] for row in t)
    ints, _ = clear_denominators(col)
    return vec_primitive(ints)


def _dual_norm(l: Lattice, m) -> Fraction:
    """Norm of the dual vector with functional coordinates m."""
    ginv = inverse_rational(l.gram)
    return sum(Fraction(m[i]) * ginv[i][j] * Fraction(m[j])
               for i in range(l.rank) for j in range(l.rank))


def _dual_vector(l: Lattice, m) -> RatVec:
    ginv = inverse_rational(l.gram)
    return mat_vec(ginv, tuple(Fraction(x) for x in m))


def classify_normal(l: Lattice, m) -> Wall | None:
    """Build the Wall for a primitive functional m, or None if no dual vector
    on the ray has an admissible norm.

    Admissible: some k*mu (mu the primitive dual vector, k >= 1) with norm in
    [-2, 0), where norm -2 requires integrality (the vector is then a root of
    the lattice and the wall is internal).
    """
    m = vec_primitive(m)
    mu = _dual_vector(l, m)
    mu_norm = _dual_norm(l, m)
    if mu_norm >= 0 or mu_norm < -2:
        return None
    # internal root: k^2 mu_norm = -2 with k mu integral
    ratio = Fraction(-2) / mu_norm  # = k^2 if it is a perfect square
    k = None
    if ratio.denominator == 1:
        r = isqrt(ratio.numerator)
        if r * r == ratio.numerator:
            k = r
    if k is not None:
        root = tuple(k * x for x in mu)
        if all(x.denominator == 1 for x in root):
            return Wall(l, m, Fraction(-2), root, "internal-root")
    if mu_norm == -2:
        return None  # norm exactly -2 but not integral: degenerate span, no wall
    return Wall(l, m, mu_norm, mu, "external")


def trace_ray_of_normal(l: Lattice, m, w0=None) -> IntVec:
    """Rank 2 only: the primitive ray where the hyperplane of the functional
    m meets the closed positive cone."""
    if l.rank != 2:
        raise ConeError("trace rays are a rank-2 notion")
    w0 = w0 or positive_cone_vector(l)
    ray = (-m[1], m[0])
    if vec_dot(mat_vec(l.gram, ray), w0) < 0:
        ray = (m[1], -m[0])
    return vec_primitive(ray)


def _with_trace(l: Lattice, wall: Wall, w0) -> Wall:
    return replace(wall, trace_ray=trace_ray_of_normal(l, wall.lam, w0))


def null_boundary_rays(l: Lattice):
    """The two boundary rays of the closed positive cone of a rank-2
    hyperbolic lattice, ordered so the cone sweeps counterclockwise.

    Coordinates are integers for isotropic forms and quadratic surds
    otherwise.
    """
    if l.rank != 2 or not is_hyperbolic(l):
        raise ConeError("boundary rays need a rank-2 hyperbolic lattice")
    w0 = positive_cone_vector(l)
    a, b, c = l.gram[0][0], l.gram[0][1], l.gram[1][1]
    rays = []
    if a == 0:
        rays = [(1, 0), vec_primitive((-c, 2 * b))]
    else:
        disc = b * b - a * c
        s = isqrt(disc)
        if s * s == disc:
            rays = [vec_primitive((-b + s, a)), vec_primitive((-b - s, a))]
        else:
            sq = QuadraticSurd(0, 1, disc)
            rays = [((Fraction(-b) + sq) / a, QuadraticSurd.of(1)),
                    ((Fraction(-b) - sq) / a, QuadraticSurd.of(1))]
    fixed = []
    for r in rays:
        pairing = sum((l.gram[i][0] * w0[0] + l.gram[i][1] * w0[1]) * r[i]
                      for i in range(2))
        sgn = exact_sign(pairing)
        if sgn == 0:
            raise ConeError("degenerate boundary pairing")
        fixed.append(r if sgn > 0 else tuple(-x for x in r))
    lo, hi = fixed
    if exact_sign(cross2(lo, hi)) < 0:
        lo, hi = hi, lo
    return lo, hi


def is_isotropic(l: Lattice) -> bool:
    """Rank-2: whether the form has rational null directions."""
    if l.rank != 2:
        raise ConeError("isotropy test implemented for rank 2")
    a, b, c = l.gram[0][0], l.gram[0][1], l.gram[1][1]
    if a == 0 or c == 0:
        return True
    disc = b * b - a * c
    if disc < 0:
        return False
    s = isqrt(disc)
    return s * s == disc


def _validate_region(l: Lattice, region, w0):
    v1 = vec_primitive(clear_denominators(region[0])[0])
    v2 = vec_primitive(clear_denominators(region[1])[0])
    if v1 == v2:
        raise RegionError("region rays must be distinct")
    for v in (v1, v2):
        sign_v = vec_dot(mat_vec(l.gram, v), w0)
        nrm = l.norm(v)
        if nrm < 0 or sign_v <= 0:
            raise RegionError(f"ray {v} is not in the closed positive cone")
        if nrm == 0 and not is_isotropic(l):
            raise RegionError(
                "region touches the irrational cone boundary: "
                "infinitely many walls accumulate there")
    if cross2(v1, v2) < 0:
        v1, v2 = v2, v1
    return v1, v2


_GRID_LIMIT = 4_000_000


def _region_traces(l: Lattice, v1: IntVec, v2: IntVec):
    """All primitive integer rays w in the closed subcone [v1, v2] with
    0 < q(w) <= 2|det|. Certified complete by the barycentric grid bound:
    writing w = (i v1 + j v2)/D with D = |det(v1,v2)|, every admissible w has
    i, j in the box below (i^2 q(v1) <= D^2 cap and 2 i j (v1.v2) <= D^2 cap)."""
    det = l.gram[0][0] * l.gram[1][1] - l.gram[0][1] ** 2
    cap = -2 * det  # 2|det| for a hyperbolic form
    d0 = abs(cross2(v1, v2))
    pairing = l.inner(v1, v2)
    if pairing <= 0:
        raise RegionError("region rays must pair positively")
    n1, n2 = l.norm(v1), l.norm(v2)

    def axis_bound(nrm):
        if nrm > 0:
            return floor_sqrt(Fraction(cap * d0 * d0, nrm))
        # isotropic axis: the other coefficient is >= 1/D, so i <= cap*D^2/(2P)
        return (cap * d0 * d0 + 2 * pairing - 1) // (2 * pairing)

    imax = axis_bound(n1)
    jmax = axis_bound(n2)
    if (imax + 1) * (jmax + 1) > _GRID_LIMIT:
        raise RegionError("region too large for direct enumeration; split it")
    seen = set()
    out = []
    for i in range(imax + 1):
        for j in range(jmax + 1):
            if i == 0 and j == 0:
                continue
            wx = i * v1[0] + j * v2[0]
            wy = i * v1[1] + j * v2[1]
            if wx % d0 or wy % d0:
                continue
            w = (wx // d0, wy // d0)
            q = l.norm(w)
            if not (0 < q <= cap):
                continue
            w = vec_primitive(w)
            if w not in seen:
                seen.add(w)
                out.append(w)
    return out


def wall_candidates_abstract(l: Lattice, region=None, bound: int | None = None):
    """All walls meeting a region of the positive cone.

    ``region`` is a pair of rational rays inside the closed positive cone
    (rank 2; complete and certified within the region). ``bound`` instead
    enumerates functional coordinates in a box (any hyperbolic rank; complete
    within the box only). With neither, the full cone is searched, which is
    finite exactly for isotropic rank-2 lattices.
    """
    if not is_hyperbolic(l):
        raise ConeError("wall enumeration needs a hyperbolic lattice")
    if bound is not None:
        if bound < 1:
            raise ConeError("bound must be positive")
        walls = {}
        for m in itertools.product(range(-bound, bound + 1), repeat=l.rank):
            if all(x == 0 for x in m):
                continue
            m = vec_primitive(m)
            if m in walls:
                continue
            w = classify_normal(l, m)
            if w is not None:
                walls[m] = w
        if l.rank == 2:
            w0 = positive_cone_vector(l)
            return sort_walls(l, [_with_trace(l, w, w0) for w in walls.values()])
        return sorted(walls.values(), key=lambda w: w.lam)
    if l.rank != 2:
        raise ConeError("ray-pair regions are a rank-2 notion; pass bound=... instead")
    w0 = positive_cone_vector(l)
    if region is None:
        if not is_isotropic(l):
            samples = _sample_walls(l, 3)
            names = ", ".join(str(w.lam) for w in samples)
            raise InfiniteWallsError(
                "full-cone wall set is infinite for an anisotropic lattice "
                f"(first wall orbits: {names}); pass a region")
        v1, v2 = null_boundary_rays(l)
    else:
        v1, v2 = _validate_region(l, region, w0)
    walls = []
    for w in _region_traces(l, v1, v2):
        m = vec_primitive((w[1], -w[0]))
        cand = classify_normal(l, m)
        if cand is not None:
            walls.append(_with_trace(l, cand, w0))
    return sort_walls(l, walls)


def _sample_walls(l: Lattice, count: int):
    for bound in (4, 8, 16, 32, 64):
        walls = wall_candidates_abstract(l, bound=bound)
        if len(walls) >= count:
            return walls[:count]
    return walls


def sort_walls(l: Lattice, walls):
    """Canonical angular order of rank-2 walls across the positive cone."""
    walls = sorted(walls, key=lambda w: w.lam)  # stable tiebreak
    walls.sort(key=functools.cmp_to_key(
        lambda a, b: -exact_sign(cross2(a.trace_ray, b.trace_ray))))
    return tuple(walls)


# ---------------------------------------------------------------------------
# fans


@dataclass(frozen=True)
class SmallConeFan:
    """Ordered rank-2 wall arrangement: two boundary null rays and the wall
    trace rays between them; small cones are consecutive ray pairs."""

    lattice: Lattice
    boundary: tuple
    walls: tuple[Wall, ...]
    region: tuple[IntVec, IntVec] | None = None

    @property
    def cone_count(self) -> int:
        return len(self.walls) + 1

    def rays(self):
        out = [{"coords": self.boundary[0], "kind": "boundary", "norm": Fraction(0)}]
        for w in self.walls:
            out.append({"coords": w.trace_ray, "kind": "wall",
                        "norm": Fraction(self.lattice.norm(w.trace_ray))})
        out.append({"coords": self.boundary[1], "kind": "boundary", "norm": Fraction(0)})
        return out

    def cones(self):
        r = self.rays()
        return [(i, i + 1) for i in range(len(r) - 1)]


def small_cones_rank2(l: Lattice, region=None) -> SmallConeFan:
    """The small-cone fan: full-cone when the wall set is finite (isotropic
    boundary), else within the given region."""
    walls = wall_candidates_abstract(l, region=region)
    stored_region = None
    if region is not None:
        w0 = positive_cone_vector(l)
        stored_region = _validate_region(l, region, w0)
    return SmallConeFan(l, null_boundary_rays(l), walls, stored_region)


def locate_small_cone(h: IrrationalVector | tuple, fan: SmallConeFan) -> int:
    """Index of the unique small cone of the fan containing h.

    Exact surd sign tests; h on a wall or outside the certified region is an
    error, as is nonpositive norm or the wrong component.
    """
    l = fan.lattice
    if not isinstance(h, IrrationalVector):
        h = rational_h(l, h)
    if h.lattice.gram != l.gram:
        raise ConeError("vector and fan lattices differ")
    coords = h.eval_coords()
    nrm = sum(coords[i] * l.gram[i][j] * coords[j]
              for i in range(l.rank) for j in range(l.rank))
    if exact_sign(nrm) <= 0:
        raise ConeError("vector must have positive norm")
    w0 = positive_cone_vector(l)
    pairing = sum(coords[i] * l.gram[i][j] * w0[j]
                  for i in range(l.rank) for j in range(l.rank))
    if exact_sign(pairing) <= 0:
        raise ConeError("vector lies in the opposite cone component")
    if fan.region is not None:
        v1, v2 = fan.region
        if exact_sign(cross2(v1, coords)) <= 0 or exact_sign(cross2(coords, v2)) <= 0:
            raise RegionError("vector is outside the fan's certified region")
    idx = 0
    for w in fan.walls:
        s = exact_sign(cross2(w.trace_ray, coords))
        if s == 0:
            raise OnWallError(w)
        if s > 0:
            idx += 1
    return idx


def same_small_cone(h1, h2, fan: SmallConeFan) -> bool:
    return locate_small_cone(h1, fan) == locate_small_cone(h2, fan)


# ---------------------------------------------------------------------------
# period fibers


def fiber_cardinality(r: Lattice) -> int:
    """Order of the product Weyl group of the root system of a negative
    definite even lattice; 1 when rootless."""
    if r.rank == 0:
        return 1
    return weyl_order(ade_type(enumerate_roots(r)))


def is_period_generic(r: Lattice) -> bool:
    """Whether the lattice modeling the root-supporting part of a period is
    rootless (the fiber is then a single point)."""
    if r.rank == 0:
        return True
    return len(enumerate_roots(r)) == 0


# ---------------------------------------------------------------------------
# comparison with the roots-in-Lambda-only chamber decomposition


@dataclass(frozen=True)
class ChamberComparison:
    """Weyl chambers cut by internal roots only, versus the full small-cone
    fan, over the same stretch of the positive cone."""

    chamber_count: int
    small_cone_count: int
    external_by_chamber: tuple[tuple[Wall, ...], ...]

    @property
    def subdivided(self) -> bool:
        return self.small_cone_count > self.chamber_count


def dolgachev_comparison(l: Lattice, fan: SmallConeFan) -> ChamberComparison:
    groups: list[list[Wall]] = [[]]
    for w in fan.walls:
        if w.source == "internal-root":
            groups.append([])
        else:
            groups[-1].append(w)
    return ChamberComparison(
        chamber_count=len(groups),
        small_cone_count=fan.cone_count,
        external_by_chamber=tuple(tuple(g) for g in groups),
    )
