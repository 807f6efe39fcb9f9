"""Chevalley bases: structure constants, brackets, ad matrices, Killing form.

The basis is {H_1..H_l} followed by {X_alpha} for the positive roots in
canonical order and then their negatives in the same order.  Brackets follow
the classical rules

    [H_i, H_j] = 0
    [H_i, X_a] = a(H_i) X_a
    [X_a, X_-a] = H_a            (coroot, an integer vector over the H_i)
    [X_a, X_b]  = N(a,b) X_{a+b} when a+b is a root, else 0.

Signs of the N(a,b) are pinned by the extraspecial-pair convention: order the
positive roots by height (ties broken so lower-index simple roots come
first); for each non-simple positive root g the extraspecial pair is
(alpha_j, g - alpha_j) with j minimal, and gets N = p+1 > 0 where p is the
length of the descending alpha_j-string through g - alpha_j.  Every other
constant is forced from these seeds by the standard relations

    N(b,a) = -N(a,b),   N(-a,-b) = -N(a,b),
    N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b)   for a+b+c = 0,

plus one Jacobi identity per remaining special pair.  The result is exact;
the test suite checks the Jacobi identity on every basis triple and
|N(a,b)| = p+1 against an independent root-string computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from .errors import DomainError
from .rootsys import Root, RootSystem, Weight, inner_product


@dataclass(frozen=True)
class BasisIndex:
    """Label of a Chevalley basis vector: Cartan H_i or root vector X_alpha."""

    kind: str  # "H" or "X"
    cartan: int | None = None  # 1-based, when kind == "H"
    root: Root | None = None  # when kind == "X"

    @staticmethod
    def H(i: int) -> "BasisIndex":
        return BasisIndex("H", cartan=i)

    @staticmethod
    def X(root: Root) -> "BasisIndex":
        return BasisIndex("X", root=root)

    def label(self) -> str:
        if self.kind == "H":
            return f"H{self.cartan}"
        return f"X[{self.root}]"


class LieAlgebraData:
    """Structure constants and cached bracket/Killing data for one algebra.

    Immutable by convention after construction; every cache is derived data.
    """

    def __init__(
        self,
        rs: RootSystem,
        nconst: dict[tuple[Root, Root], int],
        coroots: dict[Root, tuple[int, ...]],
    ):
        self.rs = rs
        self.nconst = nconst
        self._coroots = coroots
        self.rank = rs.rank
        self.roots = rs.all_roots()
        self.dim = self.rank + len(self.roots)
        self._root_index = {
            root: self.rank + k for k, root in enumerate(self.roots)
        }
        self._pair_cache: dict[tuple[int, int], dict[int, Q]] = {}
        self._killing: list[list[Q]] | None = None

    # -- basis bookkeeping -------------------------------------------------

    def basis(self) -> tuple[BasisIndex, ...]:
        heads = tuple(BasisIndex.H(i) for i in range(1, self.rank + 1))
        return heads + tuple(BasisIndex.X(r) for r in self.roots)

    def index_of_root(self, root: Root) -> int:
        try:
            return self._root_index[root]
        except KeyError:
            raise DomainError(f"{root} is not a root of {self.rs.type}") from None

    def root_of_index(self, i: int) -> Root | None:
        return None if i < self.rank else self.roots[i - self.rank]

    def coroot(self, root: Root) -> tuple[int, ...]:
        """H_alpha as an integer vector over the H_i (negated for -alpha)."""
        if root.is_positive:
            return self._coroots[root]
        return tuple(-c for c in self._coroots[-root])

    def root_action(self, root: Root, i: int) -> int:
        """alpha(H_i) for 1-based i."""
        return sum(
            c * self.rs.cartan[j][i - 1] for j, c in enumerate(root.coeffs) if c
        )

    # -- brackets ------------------------------------------------------------

    def basis_bracket(self, i: int, j: int) -> dict[int, Q]:
        """Sparse coordinates of [e_i, e_j]."""
        key = (i, j)
        hit = self._pair_cache.get(key)
        if hit is not None:
            return hit
        out: dict[int, Q] = {}
        rk = self.rank
        if i < rk and j < rk:
            pass  # Cartan is abelian
        elif i < rk:
            beta = self.roots[j - rk]
            c = self.root_action(beta, i + 1)
            if c:
                out[j] = Q(c)
        elif j < rk:
            alpha = self.roots[i - rk]
            c = self.root_action(alpha, j + 1)
            if c:
                out[i] = Q(-c)
        else:
            alpha = self.roots[i - rk]
            beta = self.roots[j - rk]
            total = alpha + beta
            if all(c == 0 for c in total.coeffs):
                for t, c in enumerate(self.coroot(alpha)):
                    if c:
                        out[t] = Q(c)
            else:
                n = self.nconst.get((alpha, beta))
                if n:
                    out[self._root_index[total]] = Q(n)
        self._pair_cache[key] = out
        return out

    def killing_basis(self) -> list[list[Q]]:
        """Gram matrix of the Killing form on the basis, by brute-force trace."""
        if self._killing is not None:
            return self._killing
        dim = self.dim
        ad = [[self.basis_bracket(u, j) for j in range(dim)] for u in range(dim)]
        b = [[Q(0)] * dim for _ in range(dim)]
        for u in range(dim):
            for v in range(u, dim):
                total = Q(0)
                adv = ad[v]
                adu = ad[u]
                for j in range(dim):
                    for m, c in adv[j].items():
                        c2 = adu[m].get(j)
                        if c2:
                            total += c * c2
                b[u][v] = total
                b[v][u] = total
        self._killing = b
        return b


@dataclass(frozen=True)
class AlgebraElement:
    """An element of the algebra as rational coordinates over the basis."""

    coords: tuple[Q, ...]

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(
            tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(
            tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def scale(self, factor) -> "AlgebraElement":
        f = Q(factor)
        return AlgebraElement(tuple(f * c for c in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


def zero_element(L: LieAlgebraData) -> AlgebraElement:
    return AlgebraElement((Q(0),) * L.dim)


def basis_element(L: LieAlgebraData, i: int) -> AlgebraElement:
    return AlgebraElement(tuple(Q(int(j == i)) for j in range(L.dim)))


def cartan_element(L: LieAlgebraData, coords) -> AlgebraElement:
    """Element sum_i coords[i] * H_i of the Cartan subalgebra."""
    if len(coords) != L.rank:
        raise DomainError("Cartan coordinate length does not match rank")
    pad = (Q(0),) * (L.dim - L.rank)
    return AlgebraElement(tuple(Q(c) for c in coords) + pad)


def root_vector(L: LieAlgebraData, root: Root) -> AlgebraElement:
    return basis_element(L, L.index_of_root(root))


def is_cartan(L: LieAlgebraData, x: AlgebraElement) -> bool:
    return not any(x.coords[L.rank:])


# -- construction of the constants -------------------------------------------


def chevalley_constants(rs: RootSystem) -> LieAlgebraData:
    """Structure constants of the Chevalley basis for a root system."""
    pos = rs.positive_roots
    pos_set = {r.coeffs for r in pos}
    rank = rs.rank
    simple = [rs.simple_root(i) for i in range(1, rank + 1)]

    lensq_cache: dict[Root, Q] = {}

    def lensq(root: Root) -> Q:
        key = root if root.is_positive else -root
        val = lensq_cache.get(key)
        if val is None:
            w = Weight.from_root(key)
            val = inner_product(rs, w, w)
            lensq_cache[key] = val
        return val

    def is_root(root: Root) -> bool:
        return root.coeffs in pos_set or (-root).coeffs in pos_set

    def string_down(s: Root, r: Root) -> int:
        """Largest p with s - p*r a root."""
        p = 0
        cur = s - r
        while is_root(cur):
            p += 1
            cur = cur - r
        return p

    order = {root: k for k, root in enumerate(pos)}

    # Seed constants on positive special pairs (r, s): r before s, r+s a root.
    npos: dict[tuple[Root, Root], Q] = {}

    def nfull(al: Root, be: Root) -> Q:
        """N(al, be) for any root pair with al+be a root."""
        pa, pb = al.is_positive, be.is_positive
        if pa and pb:
            if order[al] < order[be]:
                return npos[(al, be)]
            return -npos[(be, al)]
        if not pa and not pb:
            return -nfull(-al, -be)
        if not pa:
            return -nfull(be, al)
        # al positive, be negative, al+be a root
        total = al + be
        if total.is_positive:
            return -(lensq(total) / lensq(al)) * nfull(-be, total)
        return (lensq(total) / lensq(be)) * nfull(-total, al)

    for gamma in pos:
        if gamma.height < 2:
            continue
        # Extraspecial pair: smallest simple root that stays inside R+.
        a = next(s for s in simple if (gamma - s).coeffs in pos_set)
        b = gamma - a
        npos[(a, b)] = Q(string_down(b, a) + 1)
        for r in pos:
            if order[r] >= order[gamma]:
                break
            s = gamma - r
            if s.coeffs not in pos_set or order[r] >= order[s] or (r, s) == (a, b):
                continue
            # One Jacobi identity on (X_a, X_b, X_-r) pins N(r, s).
            t_b = Q(0)
            br = b - r
            if is_root(br):
                t_b = nfull(b, -r) * nfull(br, a)
            t_a = Q(0)
            ar = a - r
            if is_root(ar):
                t_a = nfull(-r, a) * nfull(ar, b)
            npos[(r, s)] = (lensq(gamma) / (lensq(s) * npos[(a, b)])) * (t_b + t_a)

    # Materialize the full table over every bracketable root pair.
    all_roots = rs.all_roots()
    nconst: dict[tuple[Root, Root], int] = {}
    for al in all_roots:
        for be in all_roots:
            total = al + be
            if any(total.coeffs) and is_root(total):
                val = nfull(al, be)
                assert val.denominator == 1 and val != 0
                nconst[(al, be)] = int(val)

    # Coroots: H_a = sum_i k_i (d_i / d_a) H_i for a = sum_i k_i alpha_i.
    coroots: dict[Root, tuple[int, ...]] = {}
    for root in pos:
        d_a = lensq(root) / 2
        row = [Q(k) * rs.d[i] / d_a for i, k in enumerate(root.coeffs)]
        assert all(c.denominator == 1 for c in row)
        coroots[root] = tuple(int(c) for c in row)

    return LieAlgebraData(rs, nconst, coroots)


# -- operations ---------------------------------------------------------------


def bracket(L: LieAlgebraData, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Lie bracket [x, y], extended bilinearly from the basis rules."""
    if len(x.coords) != L.dim or len(y.coords) != L.dim:
        raise DomainError("element dimension does not match the algebra")
    acc: dict[int, Q] = {}
    for i, a in enumerate(x.coords):
        if not a:
            continue
        for j, b in enumerate(y.coords):
            if not b:
                continue
            ab = a * b
            for t, c in L.basis_bracket(i, j).items():
                acc[t] = acc.get(t, Q(0)) + ab * c
    coords = [Q(0)] * L.dim
    for t, c in acc.items():
        coords[t] = c
    return AlgebraElement(tuple(coords))


def ad_matrix(L: LieAlgebraData, x: AlgebraElement) -> list[list[Q]]:
    """Matrix of ad_x = [x, .] over the basis (column j is [x, e_j])."""
    mat = [[Q(0)] * L.dim for _ in range(L.dim)]
    for i, a in enumerate(x.coords):
        if not a:
            continue
        for j in range(L.dim):
            for t, c in L.basis_bracket(i, j).items():
                mat[t][j] += a * c
    return mat


def killing_form(L: LieAlgebraData, x: AlgebraElement, y: AlgebraElement) -> Q:
    """B(x, y) = tr(ad_x ad_y), bilinear over the cached basis Gram matrix."""
    b = L.killing_basis()
    total = Q(0)
    for i, a in enumerate(x.coords):
        if not a:
            continue
        row = b[i]
        for j, c in enumerate(y.coords):
            if c and row[j]:
                total += a * c * row[j]
    return total
