"""Koszul 1-form, its symplectic differential, and the Einstein metric.

Two independent routes to the same 1-form are kept side by side on purpose:

* the weight formula: twice the sum of positive roots minus twice the sum of
  the degree-zero positive roots (``koszul_form``),
* the trace formula: -tr over the complement of g_0 of
  (ad_{K~x} - K~ ad_x), where K~ is the sign-of-degree endomorphism with
  kernel g_0 (``koszul_trace``).

The differential convention is d(xi)(X, Y) = xi([X, Y]), which makes
d(xi)(X_a, X_-a) = n(xi, a) for positive a; the Killing-dual pairing
``omega_z`` reproduces the same two-form with this convention, with no extra
factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from . import ratlin
from .chevalley import (
    AlgebraElement,
    BasisIndex,
    LieAlgebraData,
    cartan_element,
    is_cartan,
    killing_form,
)
from .errors import DomainError
from .gradation import Gradation
from .rootsys import Root, RootSystem, Weight, n_pairing


@dataclass
class TwoForm:
    """Antisymmetric pairing c_a = f(X_a, X_-a) indexed by positive roots.

    Cartan directions and pairs other than (a, -a) pair to zero, which is
    exactly the shape of the differential of any Cartan 1-form.
    """

    rs: RootSystem
    coeffs: dict[Root, Q]

    def __post_init__(self) -> None:
        missing = [r for r in self.rs.positive_roots if r not in self.coeffs]
        if missing:
            raise DomainError(f"coefficients missing for {missing[0]}")

    def coefficient(self, root: Root) -> Q:
        if not root.is_positive:
            raise DomainError("coefficient lookup expects a positive root")
        return self.coeffs[root]

    def support(self) -> tuple[Root, ...]:
        return tuple(r for r in self.rs.positive_roots if self.coeffs[r])

    def pair_basis(self, alpha: Root, beta: Root) -> Q:
        """Value on (X_alpha, X_beta); zero unless beta = -alpha."""
        if any(a + b for a, b in zip(alpha.coeffs, beta.coeffs)):
            return Q(0)
        return self.coeffs[alpha] if alpha.is_positive else -self.coeffs[-alpha]

    def evaluate(self, L: LieAlgebraData, x: AlgebraElement, y: AlgebraElement) -> Q:
        total = Q(0)
        for root, c in self.coeffs.items():
            if not c:
                continue
            i = L.index_of_root(root)
            j = L.index_of_root(-root)
            total += c * (x.coords[i] * y.coords[j] - x.coords[j] * y.coords[i])
        return total

    def matrix(self, L: LieAlgebraData) -> list[list[Q]]:
        m = [[Q(0)] * L.dim for _ in range(L.dim)]
        for root, c in self.coeffs.items():
            if not c:
                continue
            i = L.index_of_root(root)
            j = L.index_of_root(-root)
            m[i][j] = c
            m[j][i] = -c
        return m

    def is_zero(self) -> bool:
        return not any(self.coeffs.values())


def delta_sum(rs: RootSystem, subset) -> Weight:
    """Exact sum of a collection of positive roots, as a weight."""
    total = [0] * rs.rank
    for root in subset:
        if root.coeffs not in rs._positive_set:
            raise DomainError(f"{root} is not a positive root of {rs.type}")
        for i, c in enumerate(root.coeffs):
            total[i] += c
    return Weight(tuple(Q(c) for c in total))


def koszul_form(g: Gradation) -> Weight:
    """The Koszul 1-form in simple-root coordinates: 2(delta_g - delta_h)."""
    delta_g = delta_sum(g.rs, g.rs.positive_roots)
    delta_h = delta_sum(g.rs, g.zero_degree_positive())
    return (delta_g - delta_h).scale(2)


def koszul_coefficients(g: Gradation) -> dict[int, int]:
    """Coefficients a_i over the crossed nodes: psi = 2 sum a_i pi_i.

    a_i = 2 + b_i with b_i = -n(delta_h, alpha_i) >= 0; both are integers.
    """
    delta_h = delta_sum(g.rs, g.zero_degree_positive())
    out: dict[int, int] = {}
    for i in g.crossing.sorted():
        b = -n_pairing(g.rs, delta_h, g.rs.simple_root(i))
        assert b.denominator == 1 and b >= 0
        out[i] = 2 + int(b)
    return out


def koszul_trace(g: Gradation, L: LieAlgebraData, x: AlgebraElement) -> Q:
    """Koszul form by brute-force traces of ad matrices.

    Computes -tr(pr_m (ad_{K~x} - K~ ad_x) |_m) where m is the span of the
    nonzero-degree root vectors (the canonical complement of g_0) and K~
    multiplies a root vector by the sign of its degree and kills g_0.
    """
    if len(x.coords) != L.dim:
        raise DomainError("element dimension does not match the algebra")
    rk = L.rank
    # K~ x: drop the Cartan part, scale root coordinates by the degree sign.
    kx = [Q(0)] * L.dim
    for i in range(rk, L.dim):
        if x.coords[i]:
            s = g.ksign(L.roots[i - rk])
            if s:
                kx[i] = s * x.coords[i]
    trace = Q(0)
    for root in g.nonzero_roots():
        i = L.index_of_root(root)
        sign_i = g.ksign(root)
        diag = Q(0)
        for j in range(L.dim):
            cj_k = kx[j]
            cj_x = x.coords[j]
            if not cj_k and not cj_x:
                continue
            entry = L.basis_bracket(j, i).get(i)
            if entry:
                diag += cj_k * entry - sign_i * cj_x * entry
        trace += diag
    return -trace


def two_form_from_weight(rs: RootSystem, xi: Weight) -> TwoForm:
    """Differential of a Cartan 1-form: coefficient n(xi, a) on each pair."""
    return TwoForm(rs, {r: n_pairing(rs, xi, r) for r in rs.positive_roots})


def kernel_of(f: TwoForm, g: Gradation) -> tuple[BasisIndex, ...]:
    """Kernel of the two-form: the Cartan plus all pairs with zero coefficient."""
    out = [BasisIndex.H(i) for i in range(1, g.rs.rank + 1)]
    zero = {r for r in g.rs.positive_roots if not f.coeffs[r]}
    for root in g.rs.all_roots():
        if root in zero or -root in zero:
            out.append(BasisIndex.X(root))
    return tuple(out)


def kernel_is_g0(f: TwoForm, g: Gradation) -> bool:
    """Does the kernel coincide with the degree-zero subalgebra?"""
    kernel_roots = {bi.root for bi in kernel_of(f, g) if bi.kind == "X"}
    return kernel_roots == set(g.roots_of_degree(0))


def omega_z(L: LieAlgebraData, z: AlgebraElement) -> TwoForm:
    """The pairing B(z, [X, Y]) for a Cartan element z, as a TwoForm.

    On the standard pairs this is B(z, H_a), the Killing-dual description of
    the differential of the 1-form B(z, .).
    """
    if not is_cartan(L, z):
        raise DomainError("omega_z needs an element of the Cartan subalgebra")
    coeffs = {}
    for root in L.rs.positive_roots:
        h = cartan_element(L, L.coroot(root))
        coeffs[root] = killing_form(L, z, h)
    return TwoForm(L.rs, coeffs)


def killing_dual(L: LieAlgebraData, xi: Weight) -> AlgebraElement:
    """The Cartan element z with B(z, h) = xi(h) for every Cartan h."""
    b = L.killing_basis()
    block = [[b[i][j] for j in range(L.rank)] for i in range(L.rank)]
    rhs = [L.rs.coroot_pairing(xi, i) for i in range(1, L.rank + 1)]
    return cartan_element(L, ratlin.solve(block, rhs))


@dataclass
class EinsteinStructure:
    """Para-Kahler Einstein data on the orbit tangent space.

    ``metric`` is lambda^{-1} rho(X, K Y) over the nonzero-degree root-vector
    basis listed in ``basis``; the Einstein constant is ``lam``.
    """

    gradation: Gradation
    lam: Q
    rho: TwoForm
    basis: tuple[BasisIndex, ...]
    metric: tuple[tuple[Q, ...], ...]

    def signature(self) -> tuple[int, int]:
        """Exact signature via rational congruence diagonalization."""
        return ratlin.symmetric_signature([list(row) for row in self.metric])


def einstein_structure(g: Gradation, L: LieAlgebraData, lam) -> EinsteinStructure:
    """Assemble the invariant Einstein metric lambda^{-1} rho(., K .)."""
    lam = Q(lam)
    if lam == 0:
        raise DomainError("the Einstein constant lambda must be nonzero")
    if L.rs != g.rs:
        raise DomainError("algebra and gradation use different root systems")
    rho = two_form_from_weight(g.rs, koszul_form(g))
    roots = g.nonzero_roots()
    inv = Q(1) / lam
    n = len(roots)
    metric = [[Q(0)] * n for _ in range(n)]
    for a, alpha in enumerate(roots):
        for b, beta in enumerate(roots):
            s = g.ksign(beta)
            if s:
                val = rho.pair_basis(alpha, beta)
                if val:
                    metric[a][b] = inv * s * val
    return EinsteinStructure(
        gradation=g,
        lam=lam,
        rho=rho,
        basis=tuple(BasisIndex.X(r) for r in roots),
        metric=tuple(tuple(row) for row in metric),
    )
