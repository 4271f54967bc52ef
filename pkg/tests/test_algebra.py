import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import seqprod as sp
from seqprod.algebra import (
    _symplectic_form,
    eigenvalue_range,
    from_coords,
    map_distance,
    to_coords,
    trace,
)

from conftest import ALGEBRA_SHORTHANDS


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("short,dim", [
    ("real:3", 6), ("complex:3", 9), ("quat:2", 6), ("quat:3", 15),
    ("spin:4", 5), ("sum(complex:2,real:3)", 10),
])
def test_real_dimension(short, dim):
    assert sp.parse_algebra(short).real_dimension == dim


@pytest.mark.parametrize("short", ALGEBRA_SHORTHANDS + ["sum(spin:2,sum(real:2,complex:2))"])
def test_shorthand_roundtrip(short):
    assert sp.parse_algebra(short).shorthand() == short


@pytest.mark.parametrize("bad", ["foo:3", "real", "real:x", "sum()", "complex:0"])
def test_bad_shorthand(bad):
    with pytest.raises(sp.ConfigError):
        sp.parse_algebra(bad)


# ---------------------------------------------------------------------------
# jordan product
# ---------------------------------------------------------------------------

def test_jordan_diagonal_pointwise():
    alg = sp.real_symmetric(2)
    a = sp.Element(alg, np.diag([0.5, 0.25]))
    b = sp.Element(alg, np.diag([0.4, 0.8]))
    prod = sp.jordan_product(a, b)
    assert np.allclose(prod.data, np.diag([0.2, 0.2]))


def test_jordan_hand_example():
    alg = sp.real_symmetric(2)
    a = sp.Element(alg, np.diag([1.0, 0.0]))
    b = sp.Element(alg, np.array([[0.0, 1.0], [1.0, 0.0]]))
    prod = sp.jordan_product(a, b)
    assert np.allclose(prod.data, np.array([[0.0, 0.5], [0.5, 0.0]]))


@settings(deadline=None, max_examples=15)
@given(st.integers(0, 10 ** 6), st.sampled_from(ALGEBRA_SHORTHANDS))
def test_unit_law(seed, short):
    alg = sp.parse_algebra(short)
    a = sp.random_effect(alg, seed)
    one = sp.identity(alg)
    assert sp.order_unit_norm(sp.jordan_product(one, a) - a) <= 1e-12


@settings(deadline=None, max_examples=15)
@given(st.integers(0, 10 ** 6), st.sampled_from(ALGEBRA_SHORTHANDS))
def test_jordan_identity(seed, short):
    alg = sp.parse_algebra(short)
    rng = np.random.default_rng(seed)
    a = sp.random_effect(alg, rng)
    b = sp.random_effect(alg, rng)
    asq = sp.jordan_product(a, a)
    lhs = sp.jordan_product(asq, sp.jordan_product(b, a))
    rhs = sp.jordan_product(sp.jordan_product(asq, b), a)
    assert sp.order_unit_norm(lhs - rhs) <= 1e-10


def test_mismatched_algebras():
    a = sp.random_effect(sp.real_symmetric(2), 0)
    b = sp.random_effect(sp.real_symmetric(3), 0)
    with pytest.raises(sp.DescriptorMismatchError):
        sp.jordan_product(a, b)


# ---------------------------------------------------------------------------
# T_a and Q_a
# ---------------------------------------------------------------------------

def test_mult_operator_of_unit_is_identity(algebra):
    t_one = sp.jordan_mult_operator(sp.identity(algebra))
    assert map_distance(t_one, sp.LinearMap.identity(algebra)) <= 1e-12


def test_mult_operator_consistency(algebra):
    rng = np.random.default_rng(3)
    a = sp.random_effect(algebra, rng)
    t_a = sp.jordan_mult_operator(a)
    for _ in range(20):
        b = sp.random_effect(algebra, rng)
        assert sp.order_unit_norm(t_a.apply(b) - sp.jordan_product(a, b)) <= 1e-12


def test_mult_operator_symmetric(algebra):
    rng = np.random.default_rng(4)
    for _ in range(10):
        a, b, c = (sp.random_effect(algebra, rng) for _ in range(3))
        t_a = sp.jordan_mult_operator(a)
        lhs = sp.trace_inner_product(t_a.apply(b), c)
        rhs = sp.trace_inner_product(b, t_a.apply(c))
        assert abs(lhs - rhs) <= 1e-10


def test_quadratic_rep_examples():
    alg = sp.real_symmetric(2)
    p = sp.Element(alg, np.diag([1.0, 0.0]))
    b = sp.Element(alg, np.array([[1.0, 2.0], [2.0, 3.0]]))
    assert np.allclose(sp.quadratic_rep(p, b).data, np.array([[1.0, 0.0], [0.0, 0.0]]))


def test_quadratic_rep_unit(algebra):
    rng = np.random.default_rng(5)
    a = sp.random_effect(algebra, rng)
    b = sp.random_effect(algebra, rng)
    one = sp.identity(algebra)
    assert sp.order_unit_norm(sp.quadratic_rep(one, b) - b) <= 1e-12
    assert sp.order_unit_norm(sp.quadratic_rep(a, one) - sp.jordan_product(a, a)) <= 1e-12


def test_quadratic_rep_matrix_oracle(matrix_algebra):
    rng = np.random.default_rng(6)
    a = sp.random_effect(matrix_algebra, rng)
    b = sp.random_effect(matrix_algebra, rng)
    oracle = a.data @ b.data @ a.data
    assert np.abs(sp.quadratic_rep(a, b).data - oracle).max() <= 1e-10


def test_quadratic_operator_properties(algebra):
    rng = np.random.default_rng(7)
    a = sp.random_effect(algebra, rng)
    q_a = sp.quadratic_operator(a)
    # Q_0 = 0
    assert np.abs(sp.quadratic_operator(sp.zero(algebra)).matrix).max() <= 1e-14
    # Q_a = 2 T_a^2 - T_{a^2}
    t_a = sp.jordan_mult_operator(a).matrix
    t_sq = sp.jordan_mult_operator(sp.jordan_product(a, a)).matrix
    assert np.abs(q_a.matrix - (2 * t_a @ t_a - t_sq)).max() <= 1e-10
    # Q_a^2 = Q_{a^2}
    assert map_distance(q_a.compose(q_a),
                        sp.quadratic_operator(sp.jordan_product(a, a))) <= 1e-9


def test_fundamental_equality(algebra):
    rng = np.random.default_rng(8)
    for _ in range(10):
        a = sp.random_effect(algebra, rng)
        b = sp.random_effect(algebra, rng)
        lhs = sp.quadratic_operator(sp.quadratic_rep(a, b))
        q_a, q_b = sp.quadratic_operator(a), sp.quadratic_operator(b)
        assert map_distance(lhs, q_a.compose(q_b).compose(q_a)) <= 1e-9


# ---------------------------------------------------------------------------
# trace inner product and norm
# ---------------------------------------------------------------------------

def test_trace_of_identity():
    alg = sp.complex_hermitian(3)
    one = sp.identity(alg)
    assert sp.trace_inner_product(one, one) == pytest.approx(3.0)


def test_trace_associativity(algebra):
    rng = np.random.default_rng(9)
    for _ in range(10):
        a, b, c = (sp.random_effect(algebra, rng) for _ in range(3))
        lhs = sp.trace_inner_product(sp.jordan_product(a, b), c)
        rhs = sp.trace_inner_product(b, sp.jordan_product(a, c))
        assert abs(lhs - rhs) <= 1e-10


def test_trace_orthogonal_projections():
    alg = sp.real_symmetric(2)
    p = sp.Element(alg, np.diag([1.0, 0.0]))
    q = sp.Element(alg, np.diag([0.0, 1.0]))
    assert sp.trace_inner_product(p, q) == pytest.approx(0.0)


def test_trace_positive_on_positive_pairs(algebra):
    rng = np.random.default_rng(10)
    for _ in range(20):
        a = sp.random_effect(algebra, rng)
        b = sp.random_effect(algebra, rng)
        assert sp.trace_inner_product(a, b) >= -1e-10


def test_order_unit_norm_examples():
    alg = sp.real_symmetric(2)
    a = sp.Element(alg, np.diag([0.5, 0.25]))
    assert sp.order_unit_norm(a) == pytest.approx(0.5)
    assert sp.order_unit_norm(sp.identity(alg)) == pytest.approx(1.0)
    assert sp.order_unit_norm(-a) == pytest.approx(sp.order_unit_norm(a))


def test_norm_triangle_sampled(algebra):
    rng = np.random.default_rng(11)
    for _ in range(10):
        a = sp.random_effect(algebra, rng)
        b = sp.random_effect(algebra, rng)
        assert sp.order_unit_norm(a + b) <= sp.order_unit_norm(a) + sp.order_unit_norm(b) + 1e-12


# ---------------------------------------------------------------------------
# positivity and effects
# ---------------------------------------------------------------------------

def test_squares_are_positive(algebra):
    rng = np.random.default_rng(12)
    from seqprod.algebra import random_element
    b = random_element(algebra, rng)
    assert sp.is_positive(sp.jordan_product(b, b), 1e-10)


def test_is_positive_is_effect_examples():
    alg = sp.real_symmetric(2)
    assert not sp.is_positive(sp.Element(alg, np.diag([0.5, -0.1])), 1e-9)
    assert sp.is_effect(sp.Element(alg, np.diag([0.3, 1.0])), 1e-9)
    assert not sp.is_effect(sp.Element(alg, np.diag([0.3, 1.1])), 1e-9)


# ---------------------------------------------------------------------------
# random generation
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("profile", ["generic", "invertible", "singular", "sharp"])
def test_random_effect_deterministic(algebra, profile):
    a = sp.random_effect(algebra, 123, profile)
    b = sp.random_effect(algebra, 123, profile)
    assert sp.order_unit_norm(a - b) == 0.0
    assert sp.is_effect(a, 1e-9)


def test_random_effect_invertible_margin(algebra):
    for seed in range(10):
        a = sp.random_effect(algebra, seed, "invertible")
        lo, hi = eigenvalue_range(a)
        assert lo >= 0.05 - 1e-9
        assert hi <= 0.95 + 1e-9


def test_random_effect_singular_has_proper_ceiling(algebra):
    from seqprod.spectral import ceiling_effect, is_sharp
    for seed in range(5):
        a = sp.random_effect(algebra, seed, "singular")
        ceil = ceiling_effect(a)
        assert is_sharp(ceil, 1e-9)
        rank = trace(ceil)
        assert 0.5 < rank < trace(sp.identity(algebra)) - 0.5


def test_random_effect_sharp(algebra):
    for seed in range(5):
        assert sp.is_sharp(sp.random_effect(algebra, seed, "sharp"), 1e-9)


# ---------------------------------------------------------------------------
# quaternionic structure
# ---------------------------------------------------------------------------

def test_quaternionic_symmetry_preserved():
    alg = sp.quaternionic_hermitian(3)
    j = _symplectic_form(3)
    rng = np.random.default_rng(13)

    def structure_residual(x):
        return np.abs(j @ x.data.conj() @ j.conj().T - x.data).max()

    a = sp.random_effect(alg, rng)
    b = sp.random_effect(alg, rng)
    assert structure_residual(a) <= 1e-12
    assert structure_residual(sp.jordan_product(a, b)) <= 1e-10
    assert structure_residual(sp.quadratic_rep(a, b)) <= 1e-10


def test_quaternionic_kramers_degeneracy():
    alg = sp.quaternionic_hermitian(3)
    a = sp.random_effect(alg, 14)
    w = np.linalg.eigvalsh(a.data)
    assert np.abs(w[0::2] - w[1::2]).max() <= 1e-12


# ---------------------------------------------------------------------------
# order isomorphisms
# ---------------------------------------------------------------------------

ISO_CASES = [
    ("real:3", "unitary_conjugation"),
    ("complex:3", "unitary_conjugation"),
    ("complex:3", "transpose"),
    ("quat:2", "unitary_conjugation"),
    ("spin:4", "spin_rotation"),
    ("sum(complex:2,real:3)", "unitary_conjugation"),
    ("sum(complex:2,complex:3)", "transpose"),
]


@pytest.mark.parametrize("short,kind", ISO_CASES)
def test_order_iso_contract(short, kind):
    alg = sp.parse_algebra(short)
    phi = sp.make_order_iso(alg, kind, seed=21)
    one = sp.identity(alg)
    assert sp.order_unit_norm(phi.apply(one) - one) <= 1e-12
    inv = phi.invert()
    rng = np.random.default_rng(22)
    for _ in range(50):
        x = sp.random_effect(alg, rng)
        assert sp.min_eigenvalue(phi.apply(x)) >= -1e-9
        assert sp.min_eigenvalue(inv.apply(x)) >= -1e-9


def test_transpose_fixes_real_diagonals():
    alg = sp.complex_hermitian(3)
    phi = sp.make_order_iso(alg, "transpose")
    d = sp.Element(alg, np.diag([0.1, 0.5, 0.9]).astype(complex))
    assert sp.order_unit_norm(phi.apply(d) - d) <= 1e-12


def test_unitary_conjugation_preserves_trace_ip(matrix_algebra):
    phi = sp.make_order_iso(matrix_algebra, "unitary_conjugation", seed=23)
    rng = np.random.default_rng(24)
    for _ in range(10):
        a = sp.random_effect(matrix_algebra, rng)
        b = sp.random_effect(matrix_algebra, rng)
        lhs = sp.trace_inner_product(phi.apply(a), phi.apply(b))
        assert abs(lhs - sp.trace_inner_product(a, b)) <= 1e-10


@pytest.mark.parametrize("short,kind", [
    ("real:3", "transpose"),
    ("quat:2", "transpose"),
    ("complex:3", "spin_rotation"),
    ("spin:4", "unitary_conjugation"),
    ("sum(complex:2,spin:3)", "unitary_conjugation"),
])
def test_order_iso_capability_errors(short, kind):
    with pytest.raises(sp.CapabilityError):
        sp.make_order_iso(sp.parse_algebra(short), kind, seed=0)


# ---------------------------------------------------------------------------
# coordinates and linear maps
# ---------------------------------------------------------------------------

def test_coordinates_are_orthonormal(algebra):
    dim = algebra.real_dimension
    units = [from_coords(algebra, row) for row in np.eye(dim)]
    gram = np.array([[sp.trace_inner_product(u, v) for v in units] for u in units])
    assert np.abs(gram - np.eye(dim)).max() <= 1e-12


def test_coordinate_roundtrip(algebra):
    a = sp.random_effect(algebra, 25)
    assert sp.order_unit_norm(from_coords(algebra, to_coords(a)) - a) <= 1e-12


def test_identity_map_acts_trivially(algebra):
    ident = sp.LinearMap.identity(algebra)
    a = sp.random_effect(algebra, 26)
    assert sp.order_unit_norm(ident.apply(a) - a) <= 1e-12


def test_assemble_compose_convention(algebra):
    rng = np.random.default_rng(27)
    a = sp.random_effect(algebra, rng)
    b = sp.random_effect(algebra, rng)
    f = sp.jordan_mult_operator(a)
    g = sp.jordan_mult_operator(b)
    x = sp.random_effect(algebra, rng)
    assert sp.order_unit_norm(f.compose(g).apply(x) - f.apply(g.apply(x))) <= 1e-12
