"""Exact root systems for the complex simple Lie algebras A-G.

Conventions, fixed once and used everywhere:

* Cartan matrix ``A[i][j] = <alpha_i, alpha_j^v> = 2(alpha_i,alpha_j)/(alpha_j,alpha_j)``
  with Bourbaki node numbering.  For G2 this gives A = [[2,-1],[-3,2]] and
  fundamental weights pi_1 = 2a1+a2, pi_2 = 3a1+2a2.
* The invariant inner product is normalized so short roots have squared
  length 2; the symmetrizers d_i = (alpha_i,alpha_i)/2 make D*A symmetric.
  Only ratios of inner products enter any result downstream.
* Positive roots are ordered by height, then so that lower-index simple
  roots come first (descending lexicographic on coefficient vectors).
  Rebuilding a root system is bit-identical.

All arithmetic is exact (ints and ``fractions.Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import cached_property

from . import ratlin
from .errors import DomainError

FAMILIES = frozenset("ABCDEFG")

_RANK_RULES = {
    "A": (1, 8),
    "B": (2, 8),
    "C": (2, 8),
    "D": (3, 8),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

# Classical positive-root counts, used as a closure cross-check.
_POSITIVE_COUNTS = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "E": lambda r: {6: 36, 7: 63, 8: 120}[r],
    "F": lambda r: 24,
    "G": lambda r: 6,
}


@dataclass(frozen=True)
class SimpleType:
    """A simple Lie algebra type: family letter plus rank."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        lo, hi = _RANK_RULES[self.family]
        if not (isinstance(self.rank, int) and lo <= self.rank <= hi):
            raise DomainError(
                f"invalid rank {self.rank} for family {self.family} "
                f"(allowed {lo}..{hi})"
            )

    @staticmethod
    def parse(text: str) -> "SimpleType":
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise DomainError(f"cannot parse simple type from {text!r}")
        return SimpleType(text[0].upper(), int(text[1:]))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Root:
    """A root written as an integer vector over the simple roots."""

    coeffs: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def sort_key(self) -> tuple:
        return (self.height, tuple(-c for c in self.coeffs))

    def __str__(self) -> str:
        return format_coeffs(self.coeffs)


@dataclass(frozen=True)
class Weight:
    """A rational vector in simple-root coordinates."""

    coords: tuple[Q, ...]

    @staticmethod
    def zero(rank: int) -> "Weight":
        return Weight((Q(0),) * rank)

    @staticmethod
    def from_root(root: Root) -> "Weight":
        return Weight(tuple(Q(c) for c in root.coeffs))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, factor) -> "Weight":
        f = Q(factor)
        return Weight(tuple(f * c for c in self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __str__(self) -> str:
        return format_coeffs(self.coords)


def format_coeffs(coeffs, symbol: str = "a") -> str:
    """Render a coefficient vector as e.g. ``2a1+1a2`` (zero terms dropped)."""
    parts = []
    for i, c in enumerate(coeffs, start=1):
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(f"{sign}{abs(c)}{symbol}{i}")
    return "".join(parts) if parts else "0"


def cartan_matrix(stype: SimpleType) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix A[i][j] = <alpha_i, alpha_j^v>, Bourbaki numbering."""
    r = stype.rank
    a = [[2 * int(i == j) for j in range(r)] for i in range(r)]

    def join(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    fam = stype.family
    if fam in "ABCF":
        for i in range(r - 1):
            join(i, i + 1)
        if fam == "B":
            join(r - 2, r - 1, -2, -1)  # alpha_r short
        elif fam == "C":
            join(r - 2, r - 1, -1, -2)  # alpha_r long
        elif fam == "F":
            join(1, 2, -2, -1)  # alpha_3, alpha_4 short
    elif fam == "D":
        for i in range(r - 3):
            join(i, i + 1)
        join(r - 3, r - 2)
        join(r - 3, r - 1)
    elif fam == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: r - 1]
        for i, j in zip(chain, chain[1:]):
            join(i, j)
        join(1, 3)  # node 2 hangs off node 4
    elif fam == "G":
        join(0, 1, -1, -3)  # alpha_1 short
    return tuple(tuple(row) for row in a)


def _symmetrizers(cartan) -> tuple[int, ...]:
    """Integers d_i with d_i = (alpha_i,alpha_i)/2 and min d_i = 1."""
    r = len(cartan)
    d: list[Q | None] = [None] * r
    d[0] = Q(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(r):
            if i != j and cartan[i][j] and d[j] is None:
                # (alpha_i,alpha_j) symmetric: A[i][j] d_j = A[j][i] d_i
                d[j] = d[i] * cartan[j][i] / cartan[i][j]
                stack.append(j)
    vals = [x for x in d]
    if any(v is None for v in vals):
        raise DomainError("Dynkin diagram is not connected")
    low = min(vals)
    scaled = [v / low for v in vals]
    assert all(v.denominator == 1 for v in scaled)
    return tuple(int(v) for v in scaled)


@dataclass(frozen=True)
class RootSystem:
    """Root data of a simple type: Cartan matrix, positive roots, weights."""

    type: SimpleType
    cartan: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    positive_roots: tuple[Root, ...]
    weights: tuple[Weight, ...]

    @property
    def rank(self) -> int:
        return self.type.rank

    @cached_property
    def _positive_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(r.coeffs for r in self.positive_roots)

    def is_root(self, root: Root) -> bool:
        c = root.coeffs
        return c in self._positive_set or tuple(-x for x in c) in self._positive_set

    def all_roots(self) -> tuple[Root, ...]:
        """Positive roots in canonical order, then their negatives."""
        return self.positive_roots + tuple(-r for r in self.positive_roots)

    def simple_root(self, i: int) -> Root:
        """The i-th simple root, 1-based."""
        return Root(tuple(int(j == i - 1) for j in range(self.rank)))

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def root_length_sq(self, root: Root) -> Q:
        w = Weight.from_root(root)
        return inner_product(self, w, w)

    def coroot_pairing(self, xi: Weight, i: int) -> Q:
        """xi(H_i) = 2(xi, alpha_i)/(alpha_i, alpha_i), 1-based i."""
        return sum(
            (c * self.cartan[j][i - 1] for j, c in enumerate(xi.coords) if c), Q(0)
        )


def build_root_system(stype: SimpleType) -> RootSystem:
    """Construct the full root system of a simple type.

    Positive roots are generated level by level: a candidate beta + alpha_i is
    a root iff its alpha_i-string through beta climbs, i.e.
    q = p - <beta, alpha_i^v> > 0 where p is the largest k with
    beta - k*alpha_i still a root.
    """
    cartan = cartan_matrix(stype)
    r = stype.rank
    simple = [Root(tuple(int(j == i) for j in range(r))) for i in range(r)]
    known: set[tuple[int, ...]] = {s.coeffs for s in simple}
    level = list(simple)
    positive = list(simple)
    while level:
        nxt: list[Root] = []
        for beta in level:
            pairing = [
                sum(beta.coeffs[j] * cartan[j][i] for j in range(r)) for i in range(r)
            ]
            for i in range(r):
                p = 0
                down = beta
                while True:
                    down = down - simple[i]
                    if down.coeffs in known or (-down).coeffs in known:
                        p += 1
                    else:
                        break
                if p - pairing[i] > 0:
                    up = beta + simple[i]
                    if up.coeffs not in known:
                        known.add(up.coeffs)
                        nxt.append(up)
        nxt.sort(key=Root.sort_key)
        positive.extend(nxt)
        level = nxt
    positive.sort(key=Root.sort_key)

    expected = _POSITIVE_COUNTS[stype.family](r)
    if len(positive) != expected:
        raise AssertionError(
            f"closure produced {len(positive)} positive roots for {stype}, "
            f"expected {expected}"
        )
    top = positive[-1].height
    assert sum(1 for p in positive if p.height == top) == 1, "highest root not unique"

    inv = ratlin.inverse([[Q(x) for x in row] for row in cartan])
    weights = tuple(Weight(tuple(row)) for row in inv)
    return RootSystem(
        type=stype,
        cartan=cartan,
        d=_symmetrizers(cartan),
        positive_roots=tuple(positive),
        weights=weights,
    )


def fundamental_weights(rs: RootSystem) -> tuple[Weight, ...]:
    """Fundamental weights pi_i in simple-root coordinates.

    Row i of the inverse Cartan matrix; satisfies n_pairing(pi_i, alpha_j) =
    delta_ij.
    """
    return rs.weights


def inner_product(rs: RootSystem, xi: Weight, eta: Weight) -> Q:
    """Invariant inner product (xi, eta), short roots of squared length 2."""
    if len(xi.coords) != rs.rank or len(eta.coords) != rs.rank:
        raise DomainError("coordinate length does not match rank")
    total = Q(0)
    for i, a in enumerate(xi.coords):
        if not a:
            continue
        for j, b in enumerate(eta.coords):
            if b:
                total += a * b * rs.cartan[i][j] * rs.d[j]
    return total


def n_pairing(rs: RootSystem, xi: Weight, alpha: Root) -> Q:
    """The Cartan pairing n(xi, alpha) = 2 (xi, alpha) / (alpha, alpha)."""
    if not rs.is_root(alpha):
        raise DomainError(f"{alpha} is not a root of {rs.type}")
    aw = Weight.from_root(alpha)
    return 2 * inner_product(rs, xi, aw) / inner_product(rs, aw, aw)


def weight_in_pi_basis(rs: RootSystem, xi: Weight) -> tuple[Q, ...]:
    """Coordinates of xi over the fundamental weights: c_i = n(xi, alpha_i)."""
    return tuple(rs.coroot_pairing(xi, i) for i in range(1, rs.rank + 1))
