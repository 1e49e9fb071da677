import numpy as np
import pytest

from cstar_frames import algebra as alg
from cstar_frames import module as mod
from cstar_frames import operators as ops
from cstar_frames import gframes as gf
from cstar_frames.generators import diagonal_gframe, k_gframe_example
from cstar_frames.verification import (
    BoundsSpec,
    Mode,
    Verdict,
    optimal_star_bounds_diagonal,
)

from helpers import DIAG2, FULL2, random_gframe, random_invertible, rng

M_FULL = mod.ModuleDescriptor(FULL2, 2)
M_DIAG = mod.ModuleDescriptor(DIAG2, 2)


def identity_system(module):
    return gf.GFrameSystem(module, (ops.identity_op(module),))


def test_gframe_operator_identity_block():
    G = identity_system(M_FULL)
    assert ops.op_distance(gf.gframe_operator(G), ops.identity_op(M_FULL)) <= 1e-12


def test_gframe_operator_diagonal_example():
    # two diagonal multipliers, slot energies 1 + 1/4 and 1/9 + 1/9
    G, spec = diagonal_gframe([1.0, 0.5], [1.0 / 3.0, 1.0 / 3.0])
    S = ops.scalar_rep(gf.gframe_operator(G))
    assert np.allclose(np.diag(S), [1.25, 2.0 / 9.0], atol=1e-15)
    b = gf.optimal_gframe_bounds(G)
    assert abs(b.lower - 2.0 / 9.0) <= 1e-12
    assert abs(b.upper - 1.25) <= 1e-12
    assert (spec.lower, spec.upper) == (b.lower, b.upper)
    assert gf.verify_gframe_bounds(G, spec).verdict is Verdict.PROVED


def test_gframe_operator_matches_composition_sum():
    r = rng(61)
    G = random_gframe(M_FULL, r)
    acc = None
    for block in G.blocks:
        term = ops.compose(ops.adjoint_op(block), block)
        acc = term if acc is None else ops.add_op(acc, term)
    assert np.max(np.abs(acc.coeffs - gf.gframe_operator(G).coeffs)) <= 1e-12 * max(
        1.0, float(np.max(np.abs(acc.coeffs)))
    )


def test_verify_k_mode_slot_example():
    G, spec, k_op = k_gframe_example(3, 8)
    assert gf.verify_gframe_bounds(G, spec).verdict is Verdict.PROVED
    worse = BoundsSpec(Mode.K, 1.0 / 9.0 + 1e-3, 1.0, k_op=k_op)
    assert gf.verify_gframe_bounds(G, worse).verdict is Verdict.FALSIFIED
    parseval = BoundsSpec(Mode.PLAIN, 1.0, 1.0)
    assert gf.verify_gframe_bounds(G, parseval).verdict is Verdict.PROVED
    assert gf.verify_gframe_bounds(identity_system(M_FULL), parseval).passed
    too_high = BoundsSpec(Mode.PLAIN, 1.1, 1.5)
    assert gf.verify_gframe_bounds(G, too_high).verdict is Verdict.FALSIFIED


def test_canonical_dual_gframe():
    G = identity_system(M_FULL)
    dual = gf.canonical_dual_gframe(G)
    assert ops.op_distance(dual.blocks[0], G.blocks[0]) <= 1e-12
    r = rng(62)
    G = random_gframe(M_FULL, r)
    b = gf.optimal_gframe_bounds(G)
    dual = gf.canonical_dual_gframe(G)
    db = gf.optimal_gframe_bounds(dual)
    assert db.lower == pytest.approx(1.0 / b.upper, rel=1e-9)
    assert db.upper == pytest.approx(1.0 / b.lower, rel=1e-9)
    assert ops.op_distance(gf.gframe_operator(dual), ops.invert_op(gf.gframe_operator(G))) <= 1e-10
    resolution = None
    for lam, dlam in zip(G.blocks, dual.blocks):
        term = ops.compose(ops.adjoint_op(dlam), lam)
        resolution = term if resolution is None else ops.add_op(resolution, term)
    for _ in range(100):
        x = mod.random_element(M_FULL, r)
        assert mod.norm(ops.apply(resolution, x) - x) <= 1e-10 * max(1.0, mod.norm(x))


def test_synthesis_operator():
    G = identity_system(M_FULL)
    q = gf.synthesis_operator(G)
    assert ops.op_distance(q, ops.identity_op(M_FULL)) <= 1e-12
    r = rng(63)
    G = random_gframe(M_FULL, r)
    q = gf.synthesis_operator(G)
    # adjoint of synthesis stacks the block images
    x = mod.random_element(M_FULL, r)
    stacked = np.concatenate([ops.apply(op, x).data for op in G.blocks])
    assert np.max(np.abs(ops.apply(ops.adjoint_op(q), x).data - stacked)) <= 1e-12
    b = gf.optimal_gframe_bounds(G)
    assert ops.is_surjective(q)
    lo = 1.0 / ops.op_norm_op(ops.pseudo_inverse(q)) ** 2
    assert lo == pytest.approx(b.lower, rel=1e-9)
    assert ops.op_norm_op(q) ** 2 == pytest.approx(b.upper, rel=1e-9)


def test_range_projection():
    G = identity_system(M_FULL)
    P = gf.range_projection(G)
    assert ops.op_distance(P, ops.identity_op(M_FULL)) <= 1e-10
    r = rng(64)
    G = random_gframe(M_FULL, r, blocks=3)
    P = gf.range_projection(G)
    assert ops.op_distance(ops.compose(P, P), P) <= 1e-10
    assert ops.op_distance(ops.adjoint_op(P), P) <= 1e-10
    q = gf.synthesis_operator(G)
    q_adj = ops.adjoint_op(q)
    for _ in range(20):
        x = mod.random_element(M_FULL, r)
        qx = ops.apply(q_adj, x)
        assert mod.norm(ops.apply(P, qx) - qx) <= 1e-10 * max(1.0, mod.norm(qx))
    rank_p = np.linalg.matrix_rank(ops.scalar_rep(P), tol=1e-9)
    rank_q = np.linalg.matrix_rank(ops.scalar_rep(q_adj), tol=1e-9)
    assert rank_p == rank_q
    alt = ops.compose(q_adj, ops.compose(ops.pseudo_inverse(ops.compose(q, q_adj)), q))
    assert ops.op_distance(P, alt) <= 1e-9


def test_compose_bessel():
    r = rng(65)
    G = random_gframe(M_FULL, r)
    H = random_gframe(M_FULL, r)
    composed, upper = gf.compose_bessel(G, H)
    assert gf.optimal_gframe_bounds(composed).upper <= upper + 1e-9
    zero = gf.GFrameSystem(M_FULL, tuple(ops.zero_op(M_FULL, M_FULL) for _ in range(3)))
    z, zu = gf.compose_bessel(zero, H)
    assert zu == 0.0
    assert gf.optimal_gframe_bounds(z).upper <= 1e-12
    for _ in range(50):
        A = random_gframe(M_FULL, r)
        B = random_gframe(M_FULL, r)
        comp, pred = gf.compose_bessel(A, B)
        assert gf.optimal_gframe_bounds(comp).upper <= pred + 1e-9 * max(1.0, pred)


def test_left_compose():
    G = identity_system(M_FULL)
    same = gf.left_compose(ops.identity_op(M_FULL), G)
    assert ops.op_distance(same.blocks[0], G.blocks[0]) <= 1e-12
    doubled = gf.left_compose(ops.scalar_op(M_FULL, 2.0), G)
    assert gf.verify_gframe_bounds(doubled, BoundsSpec(Mode.PLAIN, 4.0, 4.0)).passed
    r = rng(66)
    G = random_gframe(M_FULL, r)
    # a module-linear unitary: mix components by a complex unitary matrix
    w = np.linalg.qr(r.standard_normal((2, 2)) + 1j * r.standard_normal((2, 2)))[0]
    theta = ops.op_from_coeffs(
        M_FULL,
        M_FULL,
        [[alg.element(FULL2, w[k, j] * np.eye(2)) for j in range(2)] for k in range(2)],
    )
    composed = gf.left_compose(theta, G)
    b0 = gf.optimal_gframe_bounds(G)
    b1 = gf.optimal_gframe_bounds(composed)
    assert b1.lower == pytest.approx(b0.lower, rel=1e-9)
    assert b1.upper == pytest.approx(b0.upper, rel=1e-9)
    singular = ops.op_from_coeffs(
        M_FULL,
        M_FULL,
        [[alg.unit(FULL2), alg.zero(FULL2)], [alg.zero(FULL2), alg.zero(FULL2)]],
    )
    with pytest.raises(ValueError, match="injective"):
        gf.left_compose(singular, G)


def test_transport_identity():
    r = rng(67)
    G = random_gframe(M_DIAG, r)
    hom = alg.identity_hom(DIAG2)
    moved = gf.transport_gframe(G, hom)
    assert all(ops.op_distance(a, b) <= 1e-12 for a, b in zip(moved.blocks, G.blocks))


def test_transport_slot_permutation():
    r = rng(68)
    hom = alg.slot_permutation(DIAG2, [1, 0])
    # blocks with permutation-invariant coefficients commute with the map
    blocks = []
    for _ in range(3):
        c = r.standard_normal() + 1j * r.standard_normal()
        d = r.standard_normal() + 1j * r.standard_normal()
        coeffs = [[alg.element(DIAG2, [c, c]), alg.element(DIAG2, [d, d])],
                  [alg.element(DIAG2, [d, d]), alg.element(DIAG2, [c, c])]]
        blocks.append(ops.op_from_coeffs(M_DIAG, M_DIAG, coeffs))
    G = gf.GFrameSystem(M_DIAG, tuple(blocks))
    lo, hi = optimal_star_bounds_diagonal(gf.gframe_operator(G))
    assert gf.verify_gframe_bounds(G, BoundsSpec(Mode.STAR, lo, hi)).passed
    moved = gf.transport_gframe(G, hom)
    report = gf.verify_gframe_bounds(moved, BoundsSpec(Mode.STAR, hom.of(lo), hom.of(hi)))
    assert report.passed
    # intertwining of the transported frame operator through the module map
    s_a = gf.gframe_operator(G)
    s_b = gf.gframe_operator(moved)
    for _ in range(20):
        x = mod.random_element(M_DIAG, r)
        y = mod.random_element(M_DIAG, r)
        lhs = mod.inner(ops.apply(s_b, mod.map_components(hom, x)), mod.map_components(hom, y))
        rhs = hom.of(mod.inner(ops.apply(s_a, x), y))
        assert alg.op_norm(lhs - rhs) <= 1e-10 * max(1.0, alg.op_norm(rhs))


def test_transport_unitary_conjugation():
    r = rng(69)
    u = np.linalg.qr(r.standard_normal((2, 2)) + 1j * r.standard_normal((2, 2)))[0]
    hom = alg.unitary_conjugation(FULL2, u)
    # coefficients that are polynomials in u commute with the conjugation
    def poly_coeff():
        a, b, c = (complex(r.standard_normal(), r.standard_normal()) for _ in range(3))
        return alg.element(FULL2, a * np.eye(2) + b * u + c * (u @ u))

    blocks = []
    for _ in range(3):
        coeffs = [[poly_coeff(), poly_coeff()], [poly_coeff(), poly_coeff()]]
        blocks.append(ops.op_from_coeffs(M_FULL, M_FULL, coeffs))
    G = gf.GFrameSystem(M_FULL, tuple(blocks))
    moved = gf.transport_gframe(G, hom)
    b = gf.optimal_gframe_bounds(G)
    mb = gf.optimal_gframe_bounds(moved)
    assert mb.lower == pytest.approx(b.lower, rel=1e-9)
    assert mb.upper == pytest.approx(b.upper, rel=1e-9)
    s_a = gf.gframe_operator(G)
    s_b = gf.gframe_operator(moved)
    for _ in range(20):
        x = mod.random_element(M_FULL, r)
        y = mod.random_element(M_FULL, r)
        lhs = mod.inner(ops.apply(s_b, mod.map_components(hom, x)), mod.map_components(hom, y))
        rhs = hom.of(mod.inner(ops.apply(s_a, x), y))
        assert alg.op_norm(lhs - rhs) <= 1e-10 * max(1.0, alg.op_norm(rhs))


def test_transport_rejects_noncommuting_blocks():
    r = rng(70)
    hom = alg.slot_permutation(DIAG2, [1, 0])
    G = random_gframe(M_DIAG, r)  # generic coefficients are not permutation-fixed
    with pytest.raises(ValueError, match="commute"):
        gf.transport_gframe(G, hom)


def test_transfer_lower_bound():
    r = rng(71)
    G = random_gframe(M_FULL, r)
    k_op = random_invertible(M_FULL, r)
    same = gf.transfer_lower_bound(G, k_op, k_op)
    assert same.verdict is Verdict.PROVED
    halved = gf.transfer_lower_bound(G, k_op, ops.scale_op(0.5, k_op))
    assert halved.verdict is Verdict.PROVED
    contraction = ops.scale_op(0.3, random_invertible(M_FULL, r))
    t_op = ops.compose(k_op, contraction)
    assert gf.transfer_lower_bound(G, k_op, t_op).verdict is Verdict.PROVED
    m1 = mod.ModuleDescriptor(DIAG2, 1)
    G1 = gf.GFrameSystem(m1, (ops.identity_op(m1),))
    d1 = ops.right_multiplication(m1, alg.element(DIAG2, [1, 0]))
    d2 = ops.right_multiplication(m1, alg.element(DIAG2, [0, 1]))
    with pytest.raises(ValueError, match="range not included"):
        gf.transfer_lower_bound(G1, d1, d2)


def test_restrict_to_range():
    r = rng(72)
    G = random_gframe(M_FULL, r)
    k_op = random_invertible(M_FULL, r)
    restricted, report = gf.restrict_to_range(G, k_op, k_op)
    assert report.verdict is Verdict.PROVED
    unitary_coeff = np.linalg.qr(r.standard_normal((2, 2)) + 1j * r.standard_normal((2, 2)))[0]
    t_unitary = ops.right_multiplication(M_FULL, alg.element(FULL2, unitary_coeff))
    _, rep2 = gf.restrict_to_range(G, ops.identity_op(M_FULL), t_unitary)
    assert rep2.verdict is Verdict.PROVED
    with pytest.raises(ValueError):
        gf.restrict_to_range(G, k_op, ops.zero_op(M_FULL, M_FULL))


def test_coisometry_compose():
    r = rng(73)
    G = random_gframe(M_FULL, r)
    ident = ops.identity_op(M_FULL)
    same, report = gf.coisometry_compose(G, ident, ident)
    assert report.verdict is Verdict.PROVED
    u = np.linalg.qr(r.standard_normal((2, 2)) + 1j * r.standard_normal((2, 2)))[0]
    t_u = ops.right_multiplication(M_FULL, alg.element(FULL2, u))
    _, rep_u = gf.coisometry_compose(G, ident, t_u)
    assert rep_u.verdict is Verdict.PROVED
    # K a polynomial in T commutes with T
    k_poly = ops.add_op(ops.scale_op(2.0, ident), ops.scale_op(0.5, t_u))
    _, rep_p = gf.coisometry_compose(G, k_poly, t_u)
    assert rep_p.verdict is Verdict.PROVED
    not_coiso = ops.scale_op(2.0, ident)
    with pytest.raises(ValueError, match="co-isometry"):
        gf.coisometry_compose(G, ident, not_coiso)


def test_frames_from_factorization():
    ident_sys = identity_system(M_FULL)
    rep1, rep2 = gf.frames_from_factorization(
        ident_sys, ident_sys, ops.identity_op(M_FULL)
    )
    assert rep1.verdict is Verdict.PROVED and rep2.verdict is Verdict.PROVED
    doubled = gf.GFrameSystem(M_FULL, (ops.scalar_op(M_FULL, 2.0),))
    rep1, rep2 = gf.frames_from_factorization(
        ident_sys, doubled, ops.scalar_op(M_FULL, 2.0)
    )
    assert rep1.verdict is Verdict.PROVED and rep2.verdict is Verdict.PROVED
    r = rng(74)
    G = random_gframe(M_FULL, r)
    k_op = random_invertible(M_FULL, r)
    theta_sys = gf.dual_compose_with_k(G, k_op)
    rep1, rep2 = gf.frames_from_factorization(G, theta_sys, k_op)
    assert rep1.verdict is Verdict.PROVED and rep2.verdict is Verdict.PROVED
    with pytest.raises(ValueError, match="residual"):
        gf.frames_from_factorization(G, theta_sys, ops.scale_op(3.0, k_op))


def test_compose_with_k():
    r = rng(75)
    G = random_gframe(M_FULL, r)
    ident = ops.identity_op(M_FULL)
    same, s_same = gf.compose_with_k(G, ident)
    assert ops.op_distance(s_same, gf.gframe_operator(G)) <= 1e-12
    doubled, s_doubled = gf.compose_with_k(G, ops.scalar_op(M_FULL, 2.0))
    assert ops.op_distance(s_doubled, ops.scale_op(4.0, gf.gframe_operator(G))) <= 1e-10
    k_op = random_invertible(M_FULL, r)
    composed, s_prime = gf.compose_with_k(G, k_op)
    direct = gf.gframe_operator(composed)
    assert np.max(np.abs(s_prime.coeffs - direct.coeffs)) <= 1e-12 * max(
        1.0, float(np.max(np.abs(direct.coeffs)))
    )


def test_compose_with_k_star_verification_diagonal():
    # exact slotwise path: {L_i K} against K* with bounds (A, ||K|| B)
    r = rng(76)
    G = random_gframe(M_DIAG, r)
    lo, hi = optimal_star_bounds_diagonal(gf.gframe_operator(G))
    k_op = random_invertible(M_DIAG, r)
    composed, _ = gf.compose_with_k(G, k_op)
    k_norm = ops.op_norm_op(k_op)
    spec = BoundsSpec(Mode.STAR_K, lo, k_norm * hi, k_op=ops.adjoint_op(k_op))
    assert gf.verify_gframe_bounds(composed, spec).verdict is Verdict.PROVED


def test_dual_compose_with_k():
    r = rng(77)
    G = random_gframe(M_DIAG, r)
    ident = ops.identity_op(M_DIAG)
    dual_blocks = gf.canonical_dual_gframe(G).blocks
    via_k = gf.dual_compose_with_k(G, ident)
    assert all(ops.op_distance(a, b) <= 1e-12 for a, b in zip(via_k.blocks, dual_blocks))
    s_op = gf.gframe_operator(G)
    back = gf.dual_compose_with_k(G, s_op)
    assert all(ops.op_distance(a, b) <= 1e-10 for a, b in zip(back.blocks, G.blocks))
    k_op = random_invertible(M_DIAG, r)
    moved = gf.dual_compose_with_k(G, k_op)
    b = gf.optimal_gframe_bounds(G)
    lo = alg.scalar_multiple(DIAG2, 1.0 / np.sqrt(b.upper))
    hi = alg.scalar_multiple(DIAG2, ops.op_norm_op(k_op) / np.sqrt(b.lower))
    spec = BoundsSpec(Mode.STAR_K, lo, hi, k_op=ops.adjoint_op(k_op))
    assert gf.verify_gframe_bounds(moved, spec).verdict is Verdict.PROVED
