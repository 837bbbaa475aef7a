"""Root systems of negative-definite even lattices: exact short-vector
enumeration, reflections, ADE classification, Weyl orders, chamber walking."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .embeddings import Embedding, orthogonal_complement
from .lattices import Lattice, LatticeError, is_negative_definite
from .numeric import ExactError, floor_sqrt_plus, vec_dot


class RootSystemError(LatticeError):
    """Input outside the finite-root-system contract."""


def _ldl(posdef) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Cholesky-style split of a positive definite rational matrix:
    q(x) = sum_i d_i (x_i + sum_{j>i} l[i][j] x_j)^2 with all d_i > 0."""
    n = len(posdef)
    a = [[Fraction(x) for x in row] for row in posdef]
    d = [Fraction(0)] * n
    l = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise ExactError("matrix is not positive definite")
        for j in range(i + 1, n):
            l[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                a[j][k] -= a[i][j] * a[i][k] / d[i]
                a[k][j] = a[j][k]
    return d, l


def shifted_norm_solutions(gram, shift, target) -> list[tuple[int, ...]]:
    """All integer y with q(y + shift) == target, for a negative definite
    Gram matrix. Exact Fincke-Pohst-style interval recursion; complete.

    ``shift`` is a rational vector, ``target`` a rational (must be <= 0 to be
    satisfiable). Output sorted lexicographically.
    """
    n = len(gram)
    t = -Fraction(target)
    if n == 0:
        return [()] if t == 0 else []
    if t < 0:
        return []
    neg = tuple(tuple(-x for x in row) for row in gram)
    d, l = _ldl(neg)
    s = [Fraction(x) for x in shift]
    out: list[tuple[int, ...]] = []
    y = [0] * n

    def descend(i: int, budget: Fraction):
        # offsets c_i depend on the already-chosen tail coordinates
        c = s[i] + sum(l[i][j] * (y[j] + s[j]) for j in range(i + 1, n))
        r = budget / d[i]
        hi = floor_sqrt_plus(r, -c)
        lo = -floor_sqrt_plus(r, c)
        for yi in range(lo, hi + 1):
            y[i] = yi
            term = d[i] * (yi + c) ** 2
            rem = budget - term
            if i == 0:
                if rem == 0:
                    out.append(tuple(y))
            else:
                descend(i - 1, rem)
        y[i] = 0

    descend(n - 1, t)
    out.sort()
    return out


@dataclass(frozen=True)
class RootSystem:
    """The complete set of norm -2 vectors of a negative definite even
    lattice, lexicographically sorted (hence negation-symmetric)."""

    parent: Lattice
    roots: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.roots)


def enumerate_roots(l: Lattice) -> RootSystem:
    """All vectors of self-intersection -2, by exact enumeration."""
    if not is_negative_definite(l):
        raise RootSystemError("root enumeration needs a negative definite lattice")
    zero = (Fraction(0),) * l.rank
    roots = shifted_norm_solutions(l.gram, zero, Fraction(-2))
    return RootSystem(l, tuple(roots))


def reflect(l: Lattice, beta, v) -> tuple[int, ...]:
    """Reflection in a root: v + (v.beta) beta. An isometry of the lattice."""
    beta = l.check_vector(beta)
    v = l.check_vector(v)
    if l.norm(beta) != -2:
        raise RootSystemError("reflections are only defined for norm -2 vectors")
    c = l.inner(v, beta)
    return tuple(x + c * b for x, b in zip(v, beta))


def _lex_positive(v) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def positive_system(rs: RootSystem, functional=None):
    """Split the roots into positives and simples.

    With no functional, positivity is lexicographic on coordinates (the exact
    realization of a generic functional (1, eps, eps^2, ...)). An explicit
    rational functional must not vanish on any root.
    """
    if functional is None:
        pos = [r for r in rs.roots if _lex_positive(r)]
    else:
        f = tuple(Fraction(x) for x in functional)
        if len(f) != rs.parent.rank:
            raise RootSystemError("functional length must equal the rank")
        pos = []
        for r in rs.roots:
            val = vec_dot(f, r)
            if val == 0:
                raise RootSystemError(f"functional vanishes on the root {r}")
            if val > 0:
                pos.append(r)
    pos_set = set(pos)
    simples = []
    for r in pos:
        if not any(tuple(a - b for a, b in zip(r, q)) in pos_set
                   for q in pos_set if q != r):
            simples.append(r)
    return tuple(pos), tuple(simples)


@dataclass(frozen=True)
class ADEType:
    """Multiset of simply-laced components, e.g. (("A", 1), ("A", 2))."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        comps = tuple(sorted((str(f), int(n)) for f, n in self.components))
        for f, n in comps:
            bad = (f not in ("A", "D", "E") or n < 1
                   or (f == "D" and n < 4) or (f == "E" and n not in (6, 7, 8)))
            if bad:
                raise RootSystemError(f"not an ADE component: {f}{n}")
        object.__setattr__(self, "components", comps)

    def symbols(self) -> list[str]:
        return [f"{f}{n}" for f, n in self.components]

    def __str__(self):
        return "+".join(self.symbols()) or "0"


def _classify_component(adj: dict[int, set[int]]) -> tuple[str, int]:
    n = len(adj)
    degs = sorted(len(v) for v in adj.values())
    if n == 0:
        raise RootSystemError("empty component")
    if degs[-1] <= 2:
        if sum(degs) != 2 * (n - 1):  # a cycle would be affine A~
            raise RootSystemError("component is not a tree")
        return ("A", n)
    if degs[-1] > 3 or degs.count(3) > 1:
        raise RootSystemError("Dynkin graph is not of ADE shape")
    center = next(k for k, v in adj.items() if len(v) == 3)
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise RootSystemError("Dynkin graph is not of ADE shape")
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] != 1:
        raise RootSystemError("Dynkin graph is not of ADE shape")
    if arms[1] == 1:
        return ("D", n)
    if arms[1] == 2 and arms[2] in (2, 3, 4):
        return ("E", n)
    raise RootSystemError("Dynkin graph is not of ADE shape")


def ade_type(rs: RootSystem) -> ADEType:
    """ADE classification of the Dynkin graph of a simple system."""
    if not rs.roots:
        return ADEType(())
    _, simples = positive_system(rs)
    n = len(simples)
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            p = rs.parent.inner(simples[i], simples[j])
            if p not in (0, 1):
                raise RootSystemError(
                    f"unexpected pairing {p} between simple roots; not ADE")
            if p == 1:
                adj[i].add(j)
                adj[j].add(i)
    comps = []
    seen: set[int] = set()
    for i in range(n):
        if i in seen:
            continue
        stack, comp = [i], set()
        while stack:
            k = stack.pop()
            if k in comp:
                continue
            comp.add(k)
            stack.extend(adj[k] - comp)
        seen |= comp
        comps.append(_classify_component({k: adj[k] & comp for k in comp}))
    return ADEType(tuple(comps))


_EXCEPTIONAL_WEYL = {6: 51840, 7: 2903040, 8: 696729600}


def weyl_order(t: ADEType | tuple | list | str) -> int:
    """Order of the Weyl group from the classification table:
    |W(A_n)| = (n+1)!,  |W(D_n)| = 2^(n-1) n!,  E6/E7/E8 fixed constants."""
    if isinstance(t, str):
        t = ADEType(tuple((s[0], int(s[1:])) for s in t.split("+") if s))
    if not isinstance(t, ADEType):
        t = ADEType(tuple(t))
    order = 1
    for fam, n in t.components:
        if fam == "A":
            order *= factorial(n + 1)
        elif fam == "D":
            order *= 2 ** (n - 1) * factorial(n)
        else:
            order *= _EXCEPTIONAL_WEYL[n]
    return order


def chamber_reduce(l: Lattice, v, simples):
    """Walk v into the dominant chamber of the given simple system.

    Returns (v', word) where word is the list of simple roots reflected in,
    in order of application, and v' pairs nonnegatively with every simple.
    """
    v = l.check_vector(v)
    word = []
    while True:
        neg = next((s for s in simples if l.inner(v, s) < 0), None)
        if neg is None:
            return v, word
        v = reflect(l, neg, v)
        word.append(neg)


def has_root_orthogonal_to(l: Lattice, x_model: Embedding) -> bool:
    """Whether the orthogonal complement of the given sublattice contains a
    norm -2 vector. The complement must be negative definite."""
    if x_model.ambient.gram != l.gram:
        raise LatticeError("embedding ambient must be the given lattice")
    comp = orthogonal_complement(x_model)
    if not is_negative_definite(comp.domain):
        raise RootSystemError("complement is not negative definite")
    return len(enumerate_roots(comp.domain)) > 0
