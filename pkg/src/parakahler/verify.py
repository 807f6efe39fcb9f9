"""Brute-force verification sweeps over algebras and gradations.

These checks recompute everything from first principles (basis triples,
honest traces, exact nullspaces) so they can serve as oracles for the
closed-form routes.  All arithmetic is exact; a check either passes or
returns a description of the first failure.
"""

from __future__ import annotations

from fractions import Fraction as Q

from . import ratlin
from .chevalley import (
    LieAlgebraData,
    basis_element,
    cartan_element,
    chevalley_constants,
)
from .gradation import (
    Gradation,
    enumerate_crossings,
    grade_from_crossing,
    is_fundamental,
    orbit_dimension,
)
from .koszul import (
    einstein_structure,
    kernel_is_g0,
    killing_dual,
    koszul_coefficients,
    koszul_form,
    koszul_trace,
    omega_z,
    two_form_from_weight,
)
from .rootsys import SimpleType, Weight, build_root_system


def _first_failure(problems: list[str]) -> dict:
    return {"ok": not problems, "first_failure": problems[0] if problems else None}


# -- algebra-level checks ------------------------------------------------------


def check_jacobi(L: LieAlgebraData) -> dict:
    """Jacobi identity on every unordered basis triple, exactly."""
    dim = L.dim
    problems: list[str] = []
    pair = L.basis_bracket

    def apply(vec: dict[int, Q], k: int, acc: dict[int, Q], sign: int) -> None:
        for m, c in vec.items():
            for t, c2 in pair(m, k).items():
                acc[t] = acc.get(t, Q(0)) + sign * c * c2

    count = 0
    for i in range(dim):
        for j in range(i + 1, dim):
            pij = pair(i, j)
            for k in range(j + 1, dim):
                acc: dict[int, Q] = {}
                apply(pij, k, acc, 1)  # [[i,j],k]
                apply(pair(j, k), i, acc, 1)  # [[j,k],i]
                apply(pair(i, k), j, acc, -1)  # [[k,i],j] = -[[i,k],j]
                count += 1
                if any(acc.values()):
                    problems.append(f"jacobi fails on basis triple {(i, j, k)}")
                    return {**_first_failure(problems), "triples": count}
    return {**_first_failure(problems), "triples": count}


def check_killing_invariance(L: LieAlgebraData) -> dict:
    """B([z,x],y) + B(x,[z,y]) = 0 over all basis triples."""
    b = L.killing_basis()
    dim = L.dim
    pair = L.basis_bracket

    def b_vec(vec: dict[int, Q], k: int) -> Q:
        return sum((c * b[m][k] for m, c in vec.items() if b[m][k]), Q(0))

    for z in range(dim):
        for x in range(dim):
            pzx = pair(z, x)
            for y in range(x, dim):
                if b_vec(pzx, y) + b_vec(pair(z, y), x) != 0:
                    return _first_failure(
                        [f"killing invariance fails on {(z, x, y)}"]
                    )
    return _first_failure([])


def check_killing_cartan(L: LieAlgebraData) -> dict:
    """Killing form restricted to the Cartan subalgebra is nondegenerate."""
    b = L.killing_basis()
    block = [[b[i][j] for j in range(L.rank)] for i in range(L.rank)]
    ok = ratlin.det(block) != 0
    return {"ok": ok, "first_failure": None if ok else "degenerate Cartan block"}


def check_structure_constants(L: LieAlgebraData) -> dict:
    """|N(a,b)| = p+1 against an independent root-string walk; antisymmetry."""
    rs = L.rs
    problems: list[str] = []
    for (al, be), n in L.nconst.items():
        if L.nconst[(be, al)] != -n:
            problems.append(f"antisymmetry fails on ({al}, {be})")
            break
        p = 0
        cur = be - al
        while rs.is_root(cur):
            p += 1
            cur = cur - al
        if abs(n) != p + 1:
            problems.append(f"|N| != p+1 on ({al}, {be}): {n} vs p={p}")
            break
    return _first_failure(problems)


def check_algebra(L: LieAlgebraData) -> dict:
    return {
        "jacobi": check_jacobi(L),
        "killing_invariance": check_killing_invariance(L),
        "killing_cartan_nondegenerate": check_killing_cartan(L),
        "structure_constants": check_structure_constants(L),
    }


# -- gradation-level checks ----------------------------------------------------


def check_grading(L: LieAlgebraData, g: Gradation) -> dict:
    """Brackets respect degrees and the grading element acts by the degree."""
    problems: list[str] = []
    dim = L.dim
    rk = L.rank

    def degree_of_index(i: int) -> int:
        return 0 if i < rk else g.degree(L.roots[i - rk])

    for i in range(dim):
        di = degree_of_index(i)
        for j in range(i + 1, dim):
            target = di + degree_of_index(j)
            for t, c in L.basis_bracket(i, j).items():
                if c and degree_of_index(t) != target:
                    problems.append(f"bracket leaves its degree on {(i, j)}")
                    return _first_failure(problems)

    d = cartan_element(L, g.grading_element)
    for root in L.roots:
        i = L.index_of_root(root)
        acc: dict[int, Q] = {}
        for j, a in enumerate(d.coords):
            if a:
                for t, c in L.basis_bracket(j, i).items():
                    acc[t] = acc.get(t, Q(0)) + a * c
        out = {t: c for t, c in acc.items() if c}
        want = {i: Q(g.degree(root))} if g.degree(root) else {}
        if out != want:
            problems.append(f"grading element acts wrongly on {root}")
            break
    return _first_failure(problems)


def check_gradation(L: LieAlgebraData, g: Gradation) -> dict:
    dim_m = orbit_dimension(g)
    return {
        "grading": check_grading(L, g),
        "fundamental": {"ok": is_fundamental(g), "first_failure": None},
        "orbit_dimension_even": {
            "ok": dim_m % 2 == 0 and dim_m == 2 * len(g.nonzero_positive()),
            "first_failure": None,
        },
    }


# -- Koszul / Einstein checks ----------------------------------------------------


def check_trace_oracle(L: LieAlgebraData, g: Gradation) -> dict:
    """Trace formula equals the weight formula on the Cartan, zero on roots."""
    psi = koszul_form(g)
    problems: list[str] = []
    for i in range(1, L.rank + 1):
        via_trace = koszul_trace(g, L, basis_element(L, i - 1))
        via_weight = L.rs.coroot_pairing(psi, i)
        if via_trace != via_weight:
            problems.append(
                f"trace {via_trace} != weight value {via_weight} on H{i}"
            )
            break
    if not problems:
        for root in L.roots:
            if koszul_trace(g, L, basis_element(L, L.index_of_root(root))) != 0:
                problems.append(f"trace does not vanish on X[{root}]")
                break
    return _first_failure(problems)


def check_two_form(L: LieAlgebraData, g: Gradation) -> dict:
    """Kernel, closedness, type (1,1), positivity, coefficient consistency."""
    rs = L.rs
    psi = koszul_form(g)
    rho = two_form_from_weight(rs, psi)
    problems: list[str] = []

    if not kernel_is_g0(rho, g):
        problems.append("kernel of d(psi) is not g_0")

    # Exact nullspace of the assembled matrix must also be g_0.
    if not problems:
        mat = rho.matrix(L)
        null = ratlin.nullspace(mat)
        expected_dim = L.rank + 2 * len(g.zero_degree_positive())
        if len(null) != expected_dim:
            problems.append(
                f"matrix nullspace has dimension {len(null)}, "
                f"expected {expected_dim}"
            )
        else:
            g0_idx = {
                i
                for i in range(L.rank, L.dim)
                if g.degree(L.roots[i - L.rank]) == 0
            } | set(range(L.rank))
            for vec in null:
                if any(c for i, c in enumerate(vec) if i not in g0_idx):
                    problems.append("matrix nullspace escapes g_0")
                    break

    # Closedness: cyclic sum of rho([x,y],z) over all basis triples.
    if not problems:
        pair = L.basis_bracket

        def rho_vec(vec: dict[int, Q], k: int) -> Q:
            total = Q(0)
            if k >= L.rank:
                beta = L.roots[k - L.rank]
                for m, c in vec.items():
                    if m >= L.rank:
                        total += c * rho.pair_basis(L.roots[m - L.rank], beta)
            return total

        dim = L.dim
        for i in range(dim):
            for j in range(i + 1, dim):
                pij = pair(i, j)
                for k in range(j + 1, dim):
                    s = (
                        rho_vec(pij, k)
                        + rho_vec(pair(j, k), i)
                        - rho_vec(pair(i, k), j)
                    )
                    if s != 0:
                        problems.append(f"d(rho) != 0 on triple {(i, j, k)}")
                        break
                if problems:
                    break
            if problems:
                break

    # Type (1,1): rho pairs g_i with g_j only when i + j = 0.
    if not problems:
        for alpha in rs.all_roots():
            for beta in rs.all_roots():
                if g.degree(alpha) + g.degree(beta) != 0:
                    if rho.pair_basis(alpha, beta) != 0:
                        problems.append(f"rho({alpha},{beta}) nonzero off-type")
                        break
            if problems:
                break

    # Coefficient positivity and the a_i expansion.
    if not problems:
        zero_pos = set(g.zero_degree_positive())
        for root in rs.positive_roots:
            c = rho.coeffs[root]
            if root in zero_pos:
                if c != 0:
                    problems.append(f"coefficient on {root} should vanish")
                    break
            elif c <= 0:
                problems.append(f"coefficient on {root} not positive: {c}")
                break
    if not problems:
        acoef = koszul_coefficients(g)
        recon = Weight.zero(rs.rank)
        for i, a in acoef.items():
            recon = recon + rs.weights[i - 1].scale(2 * a)
        if recon != psi:
            problems.append("2 sum a_i pi_i != psi")
        if any(a < 2 for a in acoef.values()):
            problems.append("some a_i < 2")

    # ad_h-invariance of rho for every basis element of g_0.
    if not problems:
        g0_indices = list(range(L.rank)) + [
            L.index_of_root(r) for r in g.roots_of_degree(0)
        ]
        m_indices = [L.index_of_root(r) for r in L.roots]
        for h in g0_indices:
            for x in m_indices:
                phx = L.basis_bracket(h, x)
                for y in m_indices:
                    if y < x:
                        continue
                    lhs = Q(0)
                    for m, c in phx.items():
                        if m >= L.rank:
                            lhs += c * rho.pair_basis(
                                L.roots[m - L.rank], L.roots[y - L.rank]
                            )
                    for m, c in L.basis_bracket(h, y).items():
                        if m >= L.rank:
                            lhs += c * rho.pair_basis(
                                L.roots[x - L.rank], L.roots[m - L.rank]
                            )
                    if lhs != 0:
                        problems.append(f"rho not ad-invariant under index {h}")
                        break
                if problems:
                    break
            if problems:
                break

    return _first_failure(problems)


def check_killing_dual(L: LieAlgebraData, g: Gradation) -> dict:
    """omega_z with z the Killing dual of psi reproduces d(psi) exactly."""
    psi = koszul_form(g)
    z = killing_dual(L, psi)
    direct = two_form_from_weight(L.rs, psi)
    via_b = omega_z(L, z)
    ok = via_b.coeffs == direct.coeffs
    return {"ok": ok, "first_failure": None if ok else "omega_z != d(psi)"}


def check_einstein(L: LieAlgebraData, g: Gradation, lam=Q(1)) -> dict:
    """Symmetry, K-skewness, ad_{g_0}-invariance, neutral signature."""
    es = einstein_structure(g, L, lam)
    roots = g.nonzero_roots()
    n = len(roots)
    problems: list[str] = []
    for a in range(n):
        for b in range(a, n):
            if es.metric[a][b] != es.metric[b][a]:
                problems.append("metric not symmetric")
                break
            sa, sb = g.ksign(roots[a]), g.ksign(roots[b])
            if sa * sb * es.metric[a][b] != -es.metric[a][b]:
                problems.append("metric not K-skew")
                break
        if problems:
            break

    if not problems:
        # ad-invariance under g_0: transport each metric index by [h, .].
        pos_of = {L.index_of_root(r): k for k, r in enumerate(roots)}
        g0_indices = list(range(L.rank)) + [
            L.index_of_root(r) for r in g.roots_of_degree(0)
        ]
        for h in g0_indices:
            for a in range(n):
                pha = L.basis_bracket(h, L.index_of_root(roots[a]))
                for b in range(n):
                    lhs = Q(0)
                    for m, c in pha.items():
                        k = pos_of.get(m)
                        if k is not None:
                            lhs += c * es.metric[k][b]
                    for m, c in L.basis_bracket(
                        h, L.index_of_root(roots[b])
                    ).items():
                        k = pos_of.get(m)
                        if k is not None:
                            lhs += c * es.metric[a][k]
                    if lhs != 0:
                        problems.append("metric not ad-invariant under g_0")
                        break
                if problems:
                    break
            if problems:
                break

    if not problems:
        pos, neg = es.signature()
        if not (pos == neg == n // 2):
            problems.append(f"signature {(pos, neg)} is not neutral")

    return _first_failure(problems)


# -- sweep orchestration ---------------------------------------------------------


def sweep_types(max_rank: int) -> list[SimpleType]:
    """All simple types of rank <= max_rank, skipping B2=C2 and A3=D3 twins."""
    types = [SimpleType("A", r) for r in range(1, max_rank + 1)]
    types += [SimpleType("B", r) for r in range(2, max_rank + 1)]
    types += [SimpleType("C", r) for r in range(3, max_rank + 1)]
    types += [SimpleType("D", r) for r in range(4, max_rank + 1)]
    types += [SimpleType("E", r) for r in (6, 7, 8) if r <= max_rank]
    if max_rank >= 4:
        types.append(SimpleType("F", 4))
    if max_rank >= 2:
        types.append(SimpleType("G", 2))
    return types


def run_sweep(max_rank: int) -> dict:
    """Run every oracle over every type and crossing set up to a rank bound."""
    rows = []
    failures: list[str] = []
    algebra_count = 0
    gradation_count = 0
    for stype in sweep_types(max_rank):
        rs = build_root_system(stype)
        L = chevalley_constants(rs)
        algebra_count += 1
        alg = check_algebra(L)
        for name, res in alg.items():
            if not res["ok"]:
                failures.append(f"{stype}: {name}: {res['first_failure']}")
        for crossing in enumerate_crossings(stype.rank):
            gradation_count += 1
            g = grade_from_crossing(rs, crossing)
            results = {
                **check_gradation(L, g),
                "trace_oracle": check_trace_oracle(L, g),
                "two_form": check_two_form(L, g),
                "killing_dual": check_killing_dual(L, g),
                "einstein": check_einstein(L, g),
            }
            for name, res in results.items():
                if not res["ok"]:
                    failures.append(
                        f"{stype} crossed {sorted(crossing.crossed)}: "
                        f"{name}: {res['first_failure']}"
                    )
        rows.append(str(stype))
    return {
        "types": rows,
        "algebras": algebra_count,
        "gradations": gradation_count,
        "failures": failures,
        "all_ok": not failures,
    }
