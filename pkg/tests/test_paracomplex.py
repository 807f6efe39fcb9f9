from fractions import Fraction as Q

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parakahler.errors import DomainError, NullConeError, SingularPointError
from parakahler.paracomplex import (
    E,
    ChartPotential,
    ParaComplex,
    admissible,
    christoffel,
    determinant_identity_residual,
    einstein_residual,
    fd_partial,
    fit_lambda,
    flat_potential,
    grid_points,
    log_model_potential,
    metric_from_potential,
    metric_matrix,
    mixed_partial_pc,
    parse_potential_config,
    pc,
    pc_conj,
    pc_inv,
    pc_mul,
    poly_mixed_hessian_exact,
    polynomial_potential,
    ricci,
)

rational = st.fractions(min_value=-4, max_value=4, max_denominator=8)
pc_rational = st.builds(ParaComplex, rational, rational)


# -- split-complex arithmetic ----------------------------------------------------


def test_unit_square():
    assert E * E == pc(1)


def test_hand_product():
    assert pc(1, 2) * pc(3, 1) == pc(5, 7)


def test_null_cone_not_invertible():
    with pytest.raises(NullConeError):
        pc_inv(pc(1, 1))
    with pytest.raises(NullConeError):
        pc(2, 3) / pc(1, -1)


def test_inverse_on_invertibles():
    z = pc(Q(3), Q(1))
    assert pc_mul(z, pc_inv(z)) == pc(Q(1), Q(0))


@given(z=pc_rational, w=pc_rational, v=pc_rational)
@settings(max_examples=150)
def test_ring_laws(z, w, v):
    assert z * w == w * z
    assert (z * w) * v == z * (w * v)
    assert z * (w + v) == z * w + z * v
    assert pc_conj(z * w) == pc_conj(z) * pc_conj(w)
    assert z * pc_conj(z) == pc(z.x * z.x - z.y * z.y, z.x * 0)


@given(z=pc_rational)
@settings(max_examples=80)
def test_split_coordinates_multiplicative(z):
    w = pc(Q(2), Q(1, 3))
    prod = z * w
    assert prod.plus == z.plus * w.plus
    assert prod.minus == z.minus * w.minus
    assert ParaComplex.from_split(z.plus, z.minus) == z


def test_paraholomorphic_coords_layout():
    from parakahler.paracomplex import paraholomorphic_coords

    z = paraholomorphic_coords((0.3, -0.2, 0.1, 0.5), 2)
    assert z[0].plus == pytest.approx(0.3) and z[0].minus == pytest.approx(0.1)
    assert z[1].plus == pytest.approx(-0.2) and z[1].minus == pytest.approx(0.5)


# -- potentials and realness -----------------------------------------------------


def test_potential_realness_enforced():
    with pytest.raises(DomainError):
        # z1 zbar1^2 with no mirror term is not real-valued.
        polynomial_potential(1, [((1,), (2,), Q(1))])
    polynomial_potential(1, [((1,), (2,), Q(1)), ((2,), (1,), Q(1))])


def test_unknown_builtin_rejected():
    with pytest.raises(DomainError):
        ChartPotential(n=1, kind="builtin", builtin="mystery")
    with pytest.raises(DomainError):
        ChartPotential(n=1, kind="fancy")


# -- metric ------------------------------------------------------------------------


def test_flat_metric_is_identity():
    flat = flat_potential(2)
    sample = metric_from_potential(flat, (0.3, -0.1, 0.2, 0.7))
    assert np.allclose(sample.g, np.eye(2), atol=0)
    assert np.max(np.abs(ricci(flat, (0.3, -0.1, 0.2, 0.7)))) <= 1e-10


def test_log_model_metric_at_origin():
    logm = log_model_potential(1)
    sample = metric_from_potential(logm, (0.0, 0.0))
    assert abs(sample.g[0, 0] - 1.0) < 1e-9


def test_log_model_metric_closed_form():
    # M = (1 + uv)^-2 from differentiating log(1 + uv) twice.
    logm = log_model_potential(1)
    for u, v in [(0.1, 0.2), (-0.25, 0.3), (0.0, -0.2)]:
        m = metric_matrix(logm, (u, v))[0, 0]
        assert abs(m - (1 + u * v) ** -2) < 1e-9


def test_metric_closure_relations():
    # d M_ab / du_c symmetric in (a, c): the two-form is closed.
    F = polynomial_potential(
        2,
        [
            ((2, 0), (1, 1), Q(1, 2)),
            ((1, 1), (2, 0), Q(1, 2)),
            ((1, 1), (1, 1), Q(2)),
            ((0, 2), (0, 2), Q(1, 3)),
        ],
    )

    def entry(a, b):
        def f(q):
            return float(metric_matrix(F, q)[a, b])

        return f

    point = (0.3, -0.2, 0.15, 0.4)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                lhs = fd_partial(entry(a, b), point, (c,), 1e-3)
                rhs = fd_partial(entry(c, b), point, (a,), 1e-3)
                assert abs(lhs - rhs) < 1e-8


def test_adapted_vs_paraholomorphic_paths_agree_exactly():
    # The e * del delbar route through split-complex arithmetic reproduces
    # the adapted mixed Hessian exactly on rational points.
    F = polynomial_potential(
        2,
        [
            ((1, 0), (1, 0), Q(1)),
            ((0, 1), (0, 1), Q(1)),
            ((2, 0), (0, 1), Q(1, 3)),
            ((0, 1), (2, 0), Q(1, 3)),
            ((1, 1), (1, 1), Q(5, 7)),
        ],
    )
    n = 2
    point = (Q(1, 3), Q(-1, 2), Q(2, 5), Q(1, 7))
    big_m = poly_mixed_hessian_exact(F, point[:n], point[n:])
    z = [ParaComplex.from_split(point[k], point[n + k]) for k in range(n)]

    def dz(vec, k):  # dz^k on a real tangent vector (u-part, v-part)
        return ParaComplex.from_split(vec[k], vec[n + k])

    def dzbar(vec, k):
        return ParaComplex.from_split(vec[n + k], vec[k])

    vectors = [
        (Q(1), Q(0), Q(0), Q(0)),
        (Q(0), Q(1), Q(0), Q(0)),
        (Q(0), Q(0), Q(1), Q(0)),
        (Q(1), Q(2), Q(-1), Q(3)),
    ]
    e = ParaComplex(Q(0), Q(1))
    for X in vectors:
        for Y in vectors:
            total = ParaComplex(Q(0), Q(0))
            for a in range(n):
                for b in range(n):
                    gab = mixed_partial_pc(F, a, b, z)
                    total = total + gab * (
                        dz(X, a) * dzbar(Y, b) - dz(Y, a) * dzbar(X, b)
                    )
            omega = e * total
            adapted = sum(
                big_m[a][b] * (X[a] * Y[n + b] - Y[a] * X[n + b])
                for a in range(n)
                for b in range(n)
            )
            assert omega.y == 0
            assert omega.x == adapted


def test_finite_difference_order():
    # Exact polynomial path as ground truth: halving h cuts the stencil
    # error by at least 8 (it is a 4th-order scheme).
    F = polynomial_potential(1, [((6,), (5,), Q(1, 2)), ((5,), (6,), Q(1, 2))])
    point = (0.5, 0.4)
    exact = float(poly_mixed_hessian_exact(F, point[:1], point[1:])[0][0])

    def f(q):
        return F.split_value(q[:1], q[1:])

    err = abs(fd_partial(f, point, (0, 1), 2e-2) - exact)
    err_half = abs(fd_partial(f, point, (0, 1), 1e-2) - exact)
    assert err_half > 0
    assert err / err_half >= 8


# -- Christoffel and Ricci ------------------------------------------------------------


def test_flat_christoffel_vanishes():
    flat = flat_potential(2)
    gamma = christoffel(flat, (0.1, 0.2, -0.3, 0.4))
    assert np.max(np.abs(gamma)) == 0


def test_log_model_christoffel_closed_form():
    logm = log_model_potential(1)
    assert abs(christoffel(logm, (0.0, 0.0))[0, 0, 0]) < 1e-8
    for u, v in [(0.1, 0.0), (0.25, -0.2), (-0.3, 0.15)]:
        got = christoffel(logm, (u, v))[0, 0, 0]
        want = -2 * v / (1 + u * v)
        assert abs(got - want) < 1e-7


def test_christoffel_symmetry():
    F = polynomial_potential(
        2,
        [
            ((1, 0), (1, 0), Q(1)),
            ((0, 1), (0, 1), Q(1)),
            ((2, 1), (1, 0), Q(1, 4)),
            ((1, 0), (2, 1), Q(1, 4)),
        ],
    )
    gamma = christoffel(F, (0.2, -0.1, 0.3, 0.1))
    for a in range(2):
        assert np.allclose(gamma[a], gamma[a].T, atol=1e-8)


def test_christoffel_against_full_levi_civita():
    # Independent oracle: assemble the full 2n x 2n metric [[0, M], [M^T, 0]]
    # in adapted coordinates and run the textbook Levi-Civita formula with
    # finite differences.  The mixed-type symbols must vanish and the pure
    # block must match the adapted-frame shortcut.
    logm = log_model_potential(1)
    point = (0.2, -0.15)

    def full_metric(q):
        m = metric_matrix(logm, q)
        n = 1
        g = np.zeros((2 * n, 2 * n))
        g[:n, n:] = m
        g[n:, :n] = m.T
        return g

    def entry(i, j):
        return lambda q: float(full_metric(q)[i, j])

    n2 = 2
    ginv = np.linalg.inv(full_metric(point))
    gamma_full = np.zeros((n2, n2, n2))
    for k in range(n2):
        for i in range(n2):
            for j in range(n2):
                total = 0.0
                for ell in range(n2):
                    total += 0.5 * ginv[k, ell] * (
                        fd_partial(entry(j, ell), point, (i,), 1e-3)
                        + fd_partial(entry(i, ell), point, (j,), 1e-3)
                        - fd_partial(entry(i, j), point, (ell,), 1e-3)
                    )
                gamma_full[k, i, j] = total
    shortcut = christoffel(logm, point)
    # Pure u-block agrees; every symbol with a v index among (k=u; i,j) or
    # the conjugate block structure vanishes.
    assert abs(gamma_full[0, 0, 0] - shortcut[0, 0, 0]) < 1e-6
    assert abs(gamma_full[1, 0, 0]) < 1e-6  # Gamma^{v}_{uu} = 0
    assert abs(gamma_full[0, 0, 1]) < 1e-6  # Gamma^{u}_{uv} = 0
    assert abs(gamma_full[0, 1, 1]) < 1e-6  # Gamma^{u}_{vv} = 0


def test_ricci_against_christoffel_contraction():
    # Second route to the Ricci block: ric = -d_v (sum_g Gamma^g_{a g}).
    logm = log_model_potential(1)
    point = (0.1, 0.2)

    def gamma_trace(q):
        return float(christoffel(logm, q)[0, 0, 0])

    # Coarse outer step: gamma_trace carries its own stencil noise.
    via_contraction = -fd_partial(gamma_trace, point, (1,), 1e-2)
    via_logdet = float(ricci(logm, point)[0, 0])
    assert abs(via_contraction - via_logdet) < 1e-4


def test_log_model_is_einstein_with_lambda_two():
    # Direct symbolic oracle: log(det g) = -2 log(1 + uv), so ric = 2 g.
    # This pins the sign convention of the Ricci block.
    logm = log_model_potential(1)
    for point in [(0.0, 0.0), (0.2, -0.1), (-0.3, 0.25)]:
        sample = metric_from_potential(logm, point)
        ric = -sample.logdet_hessian
        assert np.max(np.abs(ric - 2.0 * sample.g)) < 1e-5


def test_ricci_is_negative_logdet_hessian():
    logm = log_model_potential(1)
    sample = metric_from_potential(logm, (0.1, 0.2))
    assert np.allclose(ricci(logm, (0.1, 0.2)), -sample.logdet_hessian, atol=1e-6)


def test_einstein_residual_flat_cases():
    flat = flat_potential(1)
    pts = grid_points(flat, 0.3, 3)
    assert einstein_residual(flat, 0.0, pts) <= 1e-10
    assert abs(einstein_residual(flat, 1.0, pts) - 1.0) <= 1e-10


def test_fit_lambda_log_model():
    logm = log_model_potential(1)
    assert abs(fit_lambda(logm, (0.0, 0.0)) - 2.0) < 1e-4
    pts = grid_points(logm, 0.3, 9)
    assert len(pts) == 81
    assert einstein_residual(logm, fit_lambda(logm, (0.0, 0.0)), pts) < 1e-5


def test_determinant_identity():
    logm = log_model_potential(1)
    for point in [(0.1, 0.2), (-0.2, 0.3)]:
        assert determinant_identity_residual(logm, point) < 1e-7
    F = polynomial_potential(
        2,
        [
            ((1, 0), (1, 0), Q(1)),
            ((0, 1), (0, 1), Q(1)),
            ((1, 1), (1, 1), Q(1, 2)),
        ],
    )
    assert determinant_identity_residual(F, (0.1, 0.2, -0.1, 0.3), axis=1) < 1e-7


# -- admissibility and errors ---------------------------------------------------------


def test_admissibility_margin():
    logm = log_model_potential(1)
    assert admissible(logm, (0.1, 0.1))
    assert not admissible(logm, (1.0, -0.95))  # 1 + uv = 0.05 < margin
    assert admissible(logm, (1.0, -0.95), margin=0.01)
    flat = flat_potential(1)
    assert admissible(flat, (5.0, -5.0))


def test_singular_log_point_raises():
    logm = log_model_potential(1)
    with pytest.raises(SingularPointError):
        metric_from_potential(logm, (2.0, -0.5))  # log argument hits zero


def test_degenerate_polynomial_metric_raises():
    # F = z1 zbar1 restricted to n = 2 leaves the second direction flat.
    F = polynomial_potential(2, [((1, 0), (1, 0), Q(1))])
    with pytest.raises(SingularPointError):
        metric_from_potential(F, (0.1, 0.1, 0.1, 0.1))


# -- config parsing ---------------------------------------------------------------------


def test_parse_potential_config_polynomial():
    potential, options = parse_potential_config(
        """
        n = 1
        kind = polynomial
        monomial = 1 * z1 * zbar1
        monomial = 1/3 * z1^2 * zbar1^2
        lambda = 0
        extent = 0.2
        grid = 3
        """
    )
    assert potential.kind == "polynomial"
    assert len(potential.plus_poly()) == 2
    assert options["lambda"] == 0
    assert options["grid"] == 3


def test_parse_potential_config_builtin_and_errors():
    potential, options = parse_potential_config(
        "n = 1\nkind = builtin\nbuiltin = log1p_zzbar\nscale = 1\n"
    )
    assert potential.builtin == "log1p_zzbar"
    from parakahler.errors import ConfigError

    with pytest.raises(ConfigError):
        parse_potential_config("kind = builtin")
    with pytest.raises(ConfigError):
        parse_potential_config("n = 1\nkind = polynomial\n")
    with pytest.raises(ConfigError):
        parse_potential_config("n = 1\nmonomial = 1 * q1\n")
