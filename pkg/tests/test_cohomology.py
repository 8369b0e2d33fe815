"""Tests for the evaluated Fox complex: twisted cohomology, obstruction cone,
stabilizer strata, and the finite-difference oracles that pin the conventions."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from surfrep.words import (
    GroupRingElement,
    Word,
    reduce,
    surface_presentation,
)
from surfrep.groups import su2, u1
from surfrep.cohomology import (
    BundleClass,
    ConvergenceError,
    ObstructionModel,
    RepPoint,
    build_complex,
    classify_orbit_type,
    conjugation_isomorphism_check,
    enumerate_central_reps,
    evaluate_group_ring,
    finite_diff_check_d0,
    finite_diff_check_d1,
    newton_project_to_variety,
    obstruction_quadratic,
    relator_defect,
    rep_from_name,
    sample_cone_directions,
    sample_stabilizer,
    stabilizer_fixed_subspace,
)

G = su2()
P1 = surface_presentation(1)
P2 = surface_presentation(2)
EYE = np.eye(2, dtype=complex)


def central_rep(signs=(1, 1, 1, 1)):
    return RepPoint(G, [s * EYE for s in signs])


def torus_rep(angles=(0.7, 1.1, -0.5, 0.3)):
    return RepPoint(G, [np.diag([np.exp(1j * t), np.exp(-1j * t)]) for t in angles])


def irreducible_rep():
    # (a, b, b, a) kills the genus-2 relator exactly: [a,b][b,a] = e
    a = G.exp([0.7, 0.2, -0.4])
    b = G.exp([-0.3, 0.8, 0.5])
    return RepPoint(G, [a, b, b, a])


def conjugated(rep, x):
    xi = x.conj().T
    return RepPoint(rep.group, [x @ y @ xi for y in rep.values])


# ---------------------------------------------------------------- rep types

def test_rep_point_rejects_off_group_values():
    with pytest.raises(ValueError):
        RepPoint(G, [1.1 * EYE, EYE, EYE, EYE])


def test_rep_point_rejects_nonfinite():
    bad = EYE.copy()
    bad[0, 0] = np.nan
    with pytest.raises(ValueError):
        RepPoint(G, [bad, EYE, EYE, EYE])


def test_bundle_class_requires_central_element():
    BundleClass(G, -EYE)
    with pytest.raises(ValueError):
        BundleClass(G, G.exp([0.3, 0.0, 0.0]))


# ------------------------------------------------------- group-ring evaluation

def test_evaluate_identity_word_is_identity():
    e = GroupRingElement.one()
    out = evaluate_group_ring(e, irreducible_rep())
    assert np.allclose(out, np.eye(3), atol=1e-12)


def test_evaluate_one_minus_generator_vanishes_at_central_rep():
    e = GroupRingElement.one() - GroupRingElement.from_word(Word(((1, 1),)))
    out = evaluate_group_ring(e, central_rep((1, -1, 1, -1)))
    assert np.linalg.norm(out) < 1e-12


word_letters = st.lists(
    st.tuples(st.integers(1, 3), st.sampled_from((-1, 1))), max_size=8
)


@settings(max_examples=60, deadline=None)
@given(word_letters, word_letters, st.integers(0, 2**31))
def test_evaluate_reverses_products(lu, lv, seed):
    # evaluation is an anti-homomorphism on words
    rng = np.random.default_rng(seed)
    rep = RepPoint(G, [G.random_element(rng) for _ in range(3)])
    u, v = reduce(lu), reduce(lv)
    au = evaluate_group_ring(GroupRingElement.from_word(u), rep)
    av = evaluate_group_ring(GroupRingElement.from_word(v), rep)
    auv = evaluate_group_ring(GroupRingElement.from_word(u * v), rep)
    assert np.allclose(auv, av @ au, atol=1e-10)


# -------------------------------------------------------------- the complex

def test_central_rep_dims_and_flat_d1():
    data = build_complex(P2, central_rep())
    assert data.h_dims == (3, 12, 3)
    assert np.linalg.norm(data.D1) < 1e-12
    assert (data.rank0, data.rank1) == (0, 0)


def test_torus_rep_dims():
    data = build_complex(P2, torus_rep())
    assert data.h_dims == (1, 8, 1)
    assert (data.rank0, data.rank1) == (2, 2)


def test_irreducible_rep_dims():
    data = build_complex(P2, irreducible_rep())
    assert data.h_dims == (0, 6, 0)
    assert (data.rank0, data.rank1) == (3, 3)


def test_genus_one_central_dims():
    data = build_complex(P1, central_rep((1, -1)))
    assert data.h_dims == (3, 6, 3)


def test_cochain_condition_at_solutions():
    for rep in (central_rep((-1, 1, -1, 1)), torus_rep(), irreducible_rep()):
        data = build_complex(P2, rep)
        assert np.linalg.norm(data.D1 @ data.D0) < 1e-9


def test_basis_shapes_and_orthonormality():
    data = build_complex(P2, torus_rep())
    for b, cols in (
        (data.basis_H0, 1),
        (data.basis_Z1, 10),
        (data.basis_B1, 2),
        (data.basis_H1, 8),
        (data.basis_H2, 1),
    ):
        assert b.shape[1] == cols
        assert np.allclose(b.T @ b, np.eye(cols), atol=1e-12)
    assert np.linalg.norm(data.D0 @ data.basis_H0) < 1e-12
    assert np.linalg.norm(data.D1 @ data.basis_Z1) < 1e-12
    assert np.linalg.norm(data.D0 - data.basis_B1 @ (data.basis_B1.T @ data.D0)) < 1e-10
    assert np.linalg.norm(data.D1 @ data.basis_H1) < 1e-12
    assert np.linalg.norm(data.basis_B1.T @ data.basis_H1) < 1e-12
    assert np.linalg.norm(data.basis_H2.T @ data.D1) < 1e-12


def test_central_h2_basis_is_identity():
    # D1 = 0 there, so the orthogonal complement of its range is the full
    # coordinate space; the basis must come out as the identity for determinism
    data = build_complex(P2, central_rep())
    assert np.allclose(data.basis_H2, np.eye(3), atol=1e-14)


angle = st.floats(0.2, 1.3) | st.floats(-1.3, -0.2)


@settings(max_examples=40, deadline=None)
@given(st.tuples(angle, angle, angle, angle))
def test_euler_count_and_duality_on_torus_family(angles):
    data = build_complex(P2, torus_rep(angles))
    h0, h1, h2 = data.h_dims
    assert h0 - h1 + h2 == (1 - 4 + 1) * 3
    assert h0 == h2
    assert h1 == 2 * h0 + (2 * 2 - 2) * 3


@settings(max_examples=16, deadline=None)
@given(st.tuples(*[st.sampled_from((1, -1))] * 4))
def test_euler_count_and_duality_on_central_family(signs):
    data = build_complex(P2, central_rep(signs))
    h0, h1, h2 = data.h_dims
    assert h0 - h1 + h2 == (1 - 4 + 1) * 3
    assert h0 == h2


# ------------------------------------------------------------ relator defect

def test_relator_defect_zero_at_solutions():
    assert relator_defect(P2, central_rep()) < 1e-14
    assert relator_defect(P2, torus_rep()) < 1e-12
    assert relator_defect(P2, irreducible_rep()) < 1e-12


def test_relator_defect_positive_off_variety():
    rng = np.random.default_rng(0)
    rep = RepPoint(G, [G.random_element(rng) for _ in range(4)])
    assert relator_defect(P2, rep) > 1e-3


def test_relator_defect_against_nontrivial_class():
    c = BundleClass(G, -EYE)
    assert relator_defect(P2, central_rep(), c) > 1.0


# --------------------------------------------------- finite-difference checks

def test_fd_d1_zero_direction():
    assert finite_diff_check_d1(P2, torus_rep(), np.zeros(12), 1e-4) < 1e-14


def test_fd_d1_random_direction_small_error():
    rng = np.random.default_rng(3)
    rep = newton_project_to_variety(
        P2, G, RepPoint(G, [G.random_element(rng) for _ in range(4)]), tol=1e-12,
        max_iter=200,
    )
    u = rng.standard_normal(12)
    assert finite_diff_check_d1(P2, rep, u, 1e-4) < 1e-6


def test_fd_d1_second_order():
    rng = np.random.default_rng(5)
    u = rng.standard_normal(12)
    e1 = finite_diff_check_d1(P2, irreducible_rep(), u, 2e-3)
    e2 = finite_diff_check_d1(P2, irreducible_rep(), u, 1e-3)
    assert 4 / 1.5 < e1 / e2 < 4 * 1.5


def test_fd_d1_cocycle_direction_is_stationary():
    rep = irreducible_rep()
    data = build_complex(P2, rep)
    u = data.basis_Z1[:, 2]
    h = 1e-3
    moved = RepPoint(G, [
        y @ G.exp(h * u[3 * j:3 * j + 3]) for j, y in enumerate(rep.values)
    ])
    assert relator_defect(P2, moved) < 50 * h * h
    # contrast: a non-cocycle direction moves the relator at first order
    v = data.basis_B1[:, 0] * 0 + np.eye(12)[:, 0]
    v = v - data.basis_Z1 @ (data.basis_Z1.T @ v)
    v /= np.linalg.norm(v)
    moved = RepPoint(G, [
        y @ G.exp(h * v[3 * j:3 * j + 3]) for j, y in enumerate(rep.values)
    ])
    assert relator_defect(P2, moved) > h / 10


def test_fd_d0_zero_direction():
    assert finite_diff_check_d0(P2, torus_rep(), np.zeros(3), 1e-4) < 1e-14


def test_fd_d0_centralizer_direction():
    rep = torus_rep()
    X = np.array([0.0, 0.0, 1.0])
    data = build_complex(P2, rep)
    assert np.linalg.norm(data.D0 @ X) < 1e-12
    assert finite_diff_check_d0(P2, rep, X, 1e-4) < 1e-9


def test_fd_d0_random_direction_small_error():
    rng = np.random.default_rng(7)
    rep = RepPoint(G, [G.random_element(rng) for _ in range(4)])
    X = rng.standard_normal(3)
    assert finite_diff_check_d0(P2, rep, X, 1e-4) < 1e-6


def test_fd_d0_second_order():
    rng = np.random.default_rng(9)
    X = rng.standard_normal(3)
    e1 = finite_diff_check_d0(P2, irreducible_rep(), X, 2e-3)
    e2 = finite_diff_check_d0(P2, irreducible_rep(), X, 1e-3)
    assert 4 / 1.5 < e1 / e2 < 4 * 1.5


# ------------------------------------------------------- obstruction quadratic

def cross_formula(u):
    # expected quadratic at a central point, in the frozen algebra basis:
    # minus the sum of handle-wise cross products
    u = u.reshape(4, 3)
    return -(np.cross(u[0], u[1]) + np.cross(u[2], u[3]))


def test_obstruction_matches_cross_products_at_central_rep():
    rep = central_rep()
    data = build_complex(P2, rep)
    rng = np.random.default_rng(11)
    for _ in range(10):
        u = rng.standard_normal(12)
        q = obstruction_quadratic(P2, rep, u, data)
        assert np.allclose(data.basis_H2 @ q, cross_formula(u), atol=1e-10)


def test_obstruction_homogeneity():
    rep = torus_rep()
    data = build_complex(P2, rep)
    rng = np.random.default_rng(13)
    u = data.basis_Z1 @ rng.standard_normal(10)
    for s in (2.0, -0.5, 3.7):
        assert np.allclose(
            obstruction_quadratic(P2, rep, s * u, data),
            s * s * obstruction_quadratic(P2, rep, u, data),
            atol=1e-9,
        )


def test_obstruction_zero_target_at_irreducible_rep():
    rep = irreducible_rep()
    data = build_complex(P2, rep)
    u = data.basis_Z1[:, 0]
    assert obstruction_quadratic(P2, rep, u, data).shape == (0,)


def test_obstruction_generically_nonzero_at_torus_rep():
    rep = torus_rep()
    data = build_complex(P2, rep)
    rng = np.random.default_rng(15)
    vals = [
        np.linalg.norm(obstruction_quadratic(P2, rep, data.basis_Z1 @ rng.standard_normal(10), data))
        for _ in range(6)
    ]
    assert max(vals) > 1e-3


def test_obstruction_rejects_non_cocycle():
    rep = torus_rep()
    rng = np.random.default_rng(17)
    u = rng.standard_normal(12)
    with pytest.raises(ValueError):
        obstruction_quadratic(P2, rep, u)


# ------------------------------------------------------------- Newton solver

def test_newton_returns_solution_unchanged():
    rep = torus_rep()
    out = newton_project_to_variety(P2, G, rep)
    assert all(np.array_equal(a, b) for a, b in zip(out.values, rep.values))


def test_newton_quadratic_convergence_near_irreducible():
    rng = np.random.default_rng(19)
    rep = irreducible_rep()
    delta = rng.standard_normal(12)
    delta *= 1e-2 / np.linalg.norm(delta)
    start = RepPoint(G, [
        y @ G.exp(delta[3 * j:3 * j + 3]) for j, y in enumerate(rep.values)
    ])
    out = newton_project_to_variety(P2, G, start, tol=1e-12, max_iter=10)
    assert relator_defect(P2, out) < 1e-12


def test_newton_from_random_start():
    rng = np.random.default_rng(21)
    start = RepPoint(G, [G.random_element(rng) for _ in range(4)])
    out = newton_project_to_variety(P2, G, start, tol=1e-9, max_iter=200)
    assert relator_defect(P2, out) < 1e-9


def test_newton_is_deterministic():
    rng = np.random.default_rng(23)
    vals = [G.random_element(rng) for _ in range(4)]
    a = newton_project_to_variety(P2, G, RepPoint(G, vals), tol=1e-9, max_iter=200)
    b = newton_project_to_variety(P2, G, RepPoint(G, vals), tol=1e-9, max_iter=200)
    assert all(np.array_equal(x, y) for x, y in zip(a.values, b.values))


def test_newton_raises_on_iteration_cap():
    rng = np.random.default_rng(25)
    start = RepPoint(G, [G.random_element(rng) for _ in range(4)])
    with pytest.raises(ConvergenceError):
        newton_project_to_variety(P2, G, start, tol=1e-9, max_iter=1)


# ----------------------------------------------------------------- cone spans

@pytest.mark.parametrize("make,expect", [
    (central_rep, (12, 12)),
    (torus_rep, (10, 8)),
    (irreducible_rep, (9, 6)),
])
def test_cone_directions_span(make, expect):
    dirs, span_z1, span_h1 = sample_cone_directions(P2, make(), count=60, seed=2)
    assert (span_z1, span_h1) == expect
    assert len(dirs) >= 57  # at least 95% of projections succeed


def test_cone_directions_are_nearly_flat():
    # the quadratic evaluated at the sampling scale stays below 1e-8
    eps = 1e-3
    for make in (central_rep, torus_rep):
        rep = make()
        data = build_complex(P2, rep)
        dirs, _, _ = sample_cone_directions(P2, rep, count=20, seed=4)
        for d in dirs:
            q = obstruction_quadratic(P2, rep, eps * d, data)
            assert np.linalg.norm(q) < 1e-8


def test_obstruction_model_bundles_the_pieces():
    rep = torus_rep()
    model = ObstructionModel(P2, rep, cone_count=12, seed=6)
    u = build_complex(P2, rep).basis_Z1[:, 1]
    assert np.allclose(model.q(2 * u), 4 * model.q(u), atol=1e-9)
    assert model.rep is rep
    assert len(model.sampled_cone) >= 11


# ------------------------------------------------------------------- strata

def test_stabilizer_fixed_subspace_irreducible():
    rep = irreducible_rep()
    els = sample_stabilizer(rep, count=4, seed=0)
    assert stabilizer_fixed_subspace(P2, rep, els) == 6


def test_stabilizer_fixed_subspace_torus():
    rep = torus_rep()
    els = sample_stabilizer(rep, count=6, seed=0)
    assert stabilizer_fixed_subspace(P2, rep, els) == 4


def test_stabilizer_fixed_subspace_central():
    rep = central_rep()
    els = sample_stabilizer(rep, count=6, seed=0)
    assert stabilizer_fixed_subspace(P2, rep, els) == 0


def test_stabilizer_rejects_noncommuting_element():
    rng = np.random.default_rng(27)
    with pytest.raises(ValueError):
        stabilizer_fixed_subspace(P2, torus_rep(), [G.random_element(rng)])


def test_classify_orbit_types():
    assert classify_orbit_type(central_rep()) == (3, "G")
    assert classify_orbit_type(torus_rep()) == (1, "(T)")
    assert classify_orbit_type(irreducible_rep()) == (0, "Z")


def test_classify_is_conjugation_invariant():
    rng = np.random.default_rng(29)
    for make in (central_rep, torus_rep, irreducible_rep):
        rep = make()
        x = G.random_element(rng)
        assert classify_orbit_type(conjugated(rep, x)) == classify_orbit_type(rep)


# -------------------------------------------------------- conjugation moves

def test_conjugation_isomorphism_identity_and_central():
    rep = irreducible_rep()
    assert conjugation_isomorphism_check(P2, rep, EYE)
    assert conjugation_isomorphism_check(P2, rep, -EYE)
    data = build_complex(P2, rep)
    data_c = build_complex(P2, conjugated(rep, -EYE))
    assert np.allclose(data.D0, data_c.D0, atol=1e-12)
    assert np.allclose(data.D1, data_c.D1, atol=1e-12)


def test_conjugation_isomorphism_random_element():
    rng = np.random.default_rng(31)
    for make in (torus_rep, irreducible_rep):
        assert conjugation_isomorphism_check(P2, make(), G.random_element(rng))


# ------------------------------------------------------------- central reps

def test_enumerate_central_reps_genus2():
    reps = enumerate_central_reps(P2, G)
    assert len(reps) == 16
    for rep in reps:
        assert relator_defect(P2, rep) < 1e-12
        assert classify_orbit_type(rep) == (3, "G")


def test_enumerate_central_reps_genus1():
    assert len(enumerate_central_reps(P1, G)) == 4


def test_enumerate_central_reps_u1():
    assert len(enumerate_central_reps(P2, u1())) == 16
    assert len(enumerate_central_reps(P1, u1(center_order=3))) == 9


def test_enumerate_rejects_unenumerable_center():
    with pytest.raises(ValueError):
        enumerate_central_reps(P2, u1(center_order=0))


def test_enumerate_against_twisted_class_is_empty():
    c = BundleClass(G, -EYE)
    assert enumerate_central_reps(P2, G, c) == []


# --------------------------------------------------------- named constructors

def test_rep_from_name_central():
    rep = rep_from_name(P2, G, "central:[+,-,+,-]")
    expect = [EYE, -EYE, EYE, -EYE]
    assert all(np.allclose(a, b) for a, b in zip(rep.values, expect))


def test_rep_from_name_torus():
    rep = rep_from_name(P2, G, "torus:[0.7,1.1,-0.5,0.3]")
    assert all(
        np.allclose(a, b) for a, b in zip(rep.values, torus_rep().values)
    )


def test_rep_from_name_random_is_deterministic_and_on_variety():
    a = rep_from_name(P2, G, "random:11")
    b = rep_from_name(P2, G, "random:11")
    assert relator_defect(P2, a) < 1e-9
    assert all(np.array_equal(x, y) for x, y in zip(a.values, b.values))
    c = rep_from_name(P2, G, "random:12")
    assert not all(np.allclose(x, y) for x, y in zip(a.values, c.values))


@pytest.mark.parametrize("text", [
    "central:[+,0,+,-]",
    "torus:[1.0,2.0]",
    "spin:[1]",
    "random:not_an_int",
])
def test_rep_from_name_rejects_malformed(text):
    with pytest.raises(ValueError):
        rep_from_name(P2, G, text)
