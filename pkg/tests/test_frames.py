import numpy as np
import pytest

from cstar_frames import algebra as alg
from cstar_frames import module as mod
from cstar_frames import operators as ops
from cstar_frames import frames as fr
from cstar_frames.generators import star_diag_frame
from cstar_frames.verification import BoundsSpec, Mode, Verdict

from helpers import DIAG2, FULL2, basis_scalar, random_frame, rng, scalar_module, scalar_vec

M2 = scalar_module(2)
E1 = basis_scalar(M2, 0)
E2 = basis_scalar(M2, 1)
THREE = fr.FrameSystem(M2, (E1, E2, E1))


def test_analysis_examples():
    single = fr.FrameSystem(M2, (E1,))
    t = fr.analysis_operator(single)
    out = ops.apply(t, scalar_vec(M2, [3, 7]))
    assert np.allclose(mod.vectorize(out), [3])
    r = rng(51)
    module = mod.ModuleDescriptor(FULL2, 2)
    F = random_frame(module, r)
    T = fr.analysis_operator(F)
    for _ in range(10):
        x = mod.random_element(module, r)
        c = mod.random_element(T.codomain, r)
        lhs = mod.inner(ops.apply(T, x), c)
        rhs = mod.inner(x, ops.apply(ops.adjoint_op(T), c))
        assert alg.op_norm(lhs - rhs) <= 1e-12 * max(1.0, alg.op_norm(rhs))
    assert ops.bounded_below_margin(T) > 0


def test_frame_operator_examples():
    S = fr.frame_operator(THREE)
    assert np.allclose(ops.scalar_rep(S), np.diag([2.0, 1.0]))
    degenerate = fr.FrameSystem(M2, (E1,))
    S1 = ops.scalar_rep(fr.frame_operator(degenerate))
    assert np.allclose(S1, np.diag([1.0, 0.0]))
    assert not fr.optimal_frame_bounds(degenerate).is_frame


def test_frame_operator_matches_rank_one_sum():
    # independent construction: sum of coefficient-built rank-one maps
    r = rng(52)
    module = mod.ModuleDescriptor(FULL2, 2)
    F = random_frame(module, r)
    acc = None
    for v in F.vectors:
        coeffs = np.zeros((2, 2) + FULL2.element_shape, dtype=complex)
        for k in range(2):
            for j in range(2):
                coeffs[k, j] = (alg.adjoint(v.component(k)) * v.component(j)).data
        term = ops.AdjointableOp(module, module, coeffs)
        acc = term if acc is None else ops.add_op(acc, term)
    assert np.max(np.abs(acc.coeffs - fr.frame_operator(F).coeffs)) <= 1e-12 * max(
        1.0, float(np.max(np.abs(acc.coeffs)))
    )


def test_optimal_bounds_examples():
    b = fr.optimal_frame_bounds(THREE)
    assert (b.lower, b.upper) == (pytest.approx(1.0), pytest.approx(2.0))
    onb = fr.FrameSystem(M2, (E1, E2))
    bb = fr.optimal_frame_bounds(onb)
    assert bb.tight and bb.lower == pytest.approx(1.0)
    # optimal values against the inverse/norm characterization
    r = rng(53)
    module = mod.ModuleDescriptor(FULL2, 2)
    F = random_frame(module, r)
    b = fr.optimal_frame_bounds(F)
    T = fr.analysis_operator(F)
    assert b.upper == pytest.approx(ops.op_norm_op(T) ** 2, rel=1e-9)
    s_inv = ops.invert_op(fr.frame_operator(F))
    assert b.lower == pytest.approx(1.0 / ops.op_norm_op(s_inv), rel=1e-9)


def test_optimal_bounds_bracket_rayleigh_quotients():
    r = rng(54)
    module = mod.ModuleDescriptor(FULL2, 2)
    F = random_frame(module, r)
    b = fr.optimal_frame_bounds(F)
    S = fr.frame_operator(F)
    M = ops.scalar_rep(S)
    for _ in range(1000):
        v = r.standard_normal(module.vector_dim) + 1j * r.standard_normal(module.vector_dim)
        q = float((v.conj() @ M @ v).real / (v.conj() @ v).real)
        assert b.lower - 1e-9 <= q <= b.upper + 1e-9


def test_verify_star_diag_truncation():
    # geometric partial sums, computed here independently term by term
    terms = 40
    s1 = sum(4.0 ** -i for i in range(1, terms + 1))
    s2 = sum(9.0 ** -i for i in range(1, terms + 1))
    F, spec = star_diag_frame(terms)
    assert np.allclose(spec.lower.data, np.sqrt([s1, s2]))
    report = fr.verify_frame_bounds(F, spec)
    assert report.verdict is Verdict.PROVED
    limit = np.array([3.0 ** -0.5, 8.0 ** -0.5])
    assert np.max(np.abs(spec.lower.data - limit)) < 1e-6


def test_verify_k_mode_projection_example():
    single = fr.FrameSystem(M2, (E1,))
    k_op = ops.op_from_coeffs(M2, M2, [[[1], [0]], [[0], [0]]])
    spec = BoundsSpec(Mode.K, 1.0, 1.0, k_op=k_op)
    assert fr.verify_frame_bounds(single, spec).verdict is Verdict.PROVED


def test_verify_falsified_with_witness():
    report = fr.verify_frame_bounds(THREE, BoundsSpec(Mode.PLAIN, 1.5, 2.0))
    assert report.verdict is Verdict.FALSIFIED
    w = report.witness
    assert w is not None
    # witness concentrates on the deficient direction e2
    coords = np.abs(mod.vectorize(w))
    assert coords[1] > 0.99 * np.linalg.norm(coords)
    # and the claimed inequality fails on it
    gap = mod.inner(ops.apply(fr.frame_operator(THREE), w), w) - 1.5 * mod.inner(w, w)
    assert not alg.is_positive(gap)


def test_canonical_dual_examples():
    onb = fr.FrameSystem(M2, (E1, E2))
    dual = fr.canonical_dual(onb)
    assert all(u == v for u, v in zip(dual.vectors, onb.vectors))
    d3 = fr.canonical_dual(THREE)
    assert d3.vectors[0] == scalar_vec(M2, [0.5, 0])
    assert d3.vectors[1] == E2
    b = fr.optimal_frame_bounds(d3)
    assert (b.lower, b.upper) == (pytest.approx(0.5), pytest.approx(1.0))
    with pytest.raises(ValueError, match="not a frame"):
        fr.canonical_dual(fr.FrameSystem(M2, (E1,)))


def test_reconstruction_residual_random_frames():
    r = rng(55)
    for a_desc in (FULL2, DIAG2):
        module = mod.ModuleDescriptor(a_desc, 2)
        F = random_frame(module, r)
        for _ in range(100):
            x = mod.random_element(module, r)
            assert fr.reconstruction_residual(F, x) <= 1e-10


def test_canonical_parseval_examples():
    onb = fr.FrameSystem(M2, (E1, E2))
    pars = fr.canonical_parseval(onb)
    assert all(u == v for u, v in zip(pars.vectors, onb.vectors))
    p3 = fr.canonical_parseval(THREE)
    S = ops.scalar_rep(fr.frame_operator(p3))
    assert np.max(np.abs(S - np.eye(2))) <= 1e-10
    # known scaling: e1 vectors shrink by 2^{-1/2}
    assert np.allclose(mod.vectorize(p3.vectors[0]), [2 ** -0.5, 0])
    again = fr.canonical_parseval(p3)
    for u, v in zip(again.vectors, p3.vectors):
        assert mod.norm(u - v) <= 1e-9


def test_verify_norm_bounds():
    onb = fr.FrameSystem(M2, (E1, E2))
    report = fr.verify_norm_bounds(onb, 1.0, 1.0, samples=100, seed=3)
    assert report.verdict is Verdict.SAMPLED_PASS
    assert report.info["ratio_min"] >= 1.0 - 1e-9
    assert report.info["ratio_max"] <= 1.0 + 1e-9
    bad = fr.verify_norm_bounds(THREE, 2.5, 3.0, samples=100, seed=3)
    assert bad.verdict is Verdict.FALSIFIED
    # plain-proved bounds always pass the sampled norm check
    r = rng(56)
    module = mod.ModuleDescriptor(FULL2, 2)
    F = random_frame(module, r)
    b = fr.optimal_frame_bounds(F)
    assert fr.verify_frame_bounds(F, BoundsSpec(Mode.PLAIN, b.lower, b.upper)).passed
    assert fr.verify_norm_bounds(F, b.lower, b.upper, samples=100, seed=4).passed


def test_gabor_examples():
    delta = np.zeros(4)
    delta[0] = 1.0
    lonely = fr.gabor_frame(delta, 4, 4)
    assert len(lonely) == 1
    assert not fr.optimal_frame_bounds(lonely).is_frame
    basis = fr.gabor_frame(delta, 1, 4)
    assert len(basis) == 4
    bb = fr.optimal_frame_bounds(basis)
    assert bb.tight and bb.lower == pytest.approx(1.0)
    with pytest.raises(ValueError, match="divide"):
        fr.gabor_frame(delta, 3, 4)
    with pytest.raises(ValueError, match="nonzero"):
        fr.gabor_frame(np.zeros(4), 2, 2)


def test_gabor_gaussian_frame_brackets_rayleigh():
    F = fr.gabor_frame(fr.gaussian_window(8), 2, 2)
    assert len(F) == 16
    b = fr.optimal_frame_bounds(F)
    assert b.is_frame
    S = fr.frame_operator(F)
    r = rng(57)
    for _ in range(200):
        x = mod.random_element(F.module, r)
        q = np.trace(alg.as_matrix(mod.inner(ops.apply(S, x), x))).real
        q /= np.trace(alg.as_matrix(mod.inner(x, x))).real
        assert b.lower - 1e-9 <= q <= b.upper + 1e-9


def test_analysis_norm_bounded_by_upper_root():
    r = rng(58)
    module = mod.ModuleDescriptor(FULL2, 2)
    for _ in range(20):
        F = random_frame(module, r)
        b = fr.optimal_frame_bounds(F)
        assert fr.verify_frame_bounds(F, BoundsSpec(Mode.PLAIN, b.lower, b.upper)).passed
        assert ops.op_norm_op(fr.analysis_operator(F)) <= np.sqrt(b.upper) + 1e-9


def test_optimal_bound_tightness_margins():
    r = rng(59)
    module = mod.ModuleDescriptor(DIAG2, 2)
    for _ in range(10):
        F = random_frame(module, r)
        b = fr.optimal_frame_bounds(F)
        eps = 1e-4 * b.upper
        assert fr.verify_frame_bounds(F, BoundsSpec(Mode.PLAIN, b.lower, b.upper)).passed
        assert fr.verify_frame_bounds(F, BoundsSpec(Mode.PLAIN, b.lower + eps, b.upper)).verdict is Verdict.FALSIFIED
        assert fr.verify_frame_bounds(F, BoundsSpec(Mode.PLAIN, b.lower, b.upper - eps)).verdict is Verdict.FALSIFIED


def test_star_mode_full_algebra_sampled():
    r = rng(60)
    module = mod.ModuleDescriptor(FULL2, 2)
    F = random_frame(module, r)
    b = fr.optimal_frame_bounds(F)
    lo = alg.scalar_multiple(FULL2, np.sqrt(b.lower))
    hi = alg.scalar_multiple(FULL2, np.sqrt(b.upper))
    report = fr.verify_frame_bounds(F, BoundsSpec(Mode.STAR, lo, hi), samples=100, seed=8)
    assert report.verdict is Verdict.SAMPLED_PASS
    too_high = alg.scalar_multiple(FULL2, np.sqrt(b.lower * 4.0))
    bad = fr.verify_frame_bounds(F, BoundsSpec(Mode.STAR, too_high, hi), samples=100, seed=8)
    assert bad.verdict is Verdict.FALSIFIED and bad.witness is not None


def test_star_bound_must_be_invertible():
    F, spec = star_diag_frame(5)
    degenerate = alg.element(DIAG2, [1.0, 0.0])
    with pytest.raises(ValueError, match="bound not strictly nonzero"):
        fr.verify_frame_bounds(F, BoundsSpec(Mode.STAR, degenerate, spec.upper))
