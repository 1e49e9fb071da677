"""Executable property suite.

Every structural fact the library relies on is packaged as a named
check over seeded random instances; the CLI runs the whole table and
any failure is a nonzero exit.  Sample counts shrink in quick mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from . import module as mod
from . import operators as ops
from . import frames as fr
from . import gframes as gf
from . import opframes as of
from . import serialize as ser
from .verification import (
    BoundsSpec,
    Mode,
    Verdict,
    optimal_bounds_from_operator,
    optimal_k_lower,
    verify_sum_operator,
)

__all__ = ["CheckResult", "run_all", "CHECK_NAMES"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _rng(seed, salt):
    return np.random.default_rng([seed, salt])


def _random_invertible(module, rng, tries=50):
    for _ in range(tries):
        t = ops.random_op(module, module, rng)
        if ops.bounded_below_margin(t) > 0.1 * ops.op_norm_op(t):
            return t
    raise RuntimeError("failed to draw an invertible operator")


def _random_frame(module, rng, count=None):
    count = count or 3 * module.rank
    return fr.FrameSystem(module, tuple(mod.random_element(module, rng) for _ in range(count)))


def _random_gframe(module, rng, blocks=3, target_rank=None):
    target = mod.ModuleDescriptor(module.algebra, target_rank or module.rank)
    return gf.GFrameSystem(
        module, tuple(ops.random_op(module, target, rng) for _ in range(blocks))
    )


def _random_opframe(module, rng, count=3):
    return of.OperatorFrameSystem(
        module, tuple(ops.random_op(module, module, rng) for _ in range(count))
    )


def _unit_star_bounds(algebra_d, lo, hi):
    return (
        alg.scalar_multiple(algebra_d, math.sqrt(lo)),
        alg.scalar_multiple(algebra_d, math.sqrt(hi)),
    )


# ---------------------------------------------------------------- algebra


def check_cstar_identity(seed, quick):
    rng = _rng(seed, 1)
    n = 40 if quick else 200
    for a_desc in (alg.full_matrices(3), alg.diagonals(4)):
        for _ in range(n):
            a = alg.random_algebra_element(a_desc, rng)
            lhs = alg.op_norm(alg.adjoint(a) * a)
            rhs = alg.op_norm(a) ** 2
            assert abs(lhs - rhs) <= 1e-9 * rhs + 1e-15


def check_involution_laws(seed, quick):
    rng = _rng(seed, 2)
    n = 20 if quick else 100
    for a_desc in (alg.full_matrices(3), alg.diagonals(4)):
        for _ in range(n):
            a = alg.random_algebra_element(a_desc, rng)
            b = alg.random_algebra_element(a_desc, rng)
            c = complex(rng.standard_normal(), rng.standard_normal())
            lhs = alg.adjoint(a * b)
            rhs = alg.adjoint(b) * alg.adjoint(a)
            assert np.max(np.abs(lhs.data - rhs.data)) <= 1e-12
            lhs2 = alg.adjoint(c * a + b)
            rhs2 = np.conj(c) * alg.adjoint(a) + alg.adjoint(b)
            assert np.max(np.abs(lhs2.data - rhs2.data)) <= 1e-12


def check_order_transitivity(seed, quick):
    rng = _rng(seed, 3)
    n = 20 if quick else 60
    wide = alg.Tolerance(psd_rel=2e-9)
    a_desc = alg.full_matrices(3)
    for _ in range(n):
        g1 = alg.random_algebra_element(a_desc, rng)
        g2 = alg.random_algebra_element(a_desc, rng)
        a = alg.random_algebra_element(a_desc, rng)
        a = a + alg.adjoint(a)
        b = a + alg.adjoint(g1) * g1
        c = b + alg.adjoint(g2) * g2
        assert alg.loewner_leq(a, b) and alg.loewner_leq(b, c)
        assert alg.loewner_leq(a, c, wide)


def check_sqrt_round_trip(seed, quick):
    rng = _rng(seed, 4)
    n = 20 if quick else 100
    for a_desc in (alg.full_matrices(3), alg.diagonals(4)):
        for _ in range(n):
            g = alg.random_algebra_element(a_desc, rng)
            a = alg.adjoint(g) * g
            s = alg.sqrt_psd(a)
            assert alg.op_norm(s * s - a) <= 1e-9 * max(1.0, alg.op_norm(a))


# ----------------------------------------------------------------- module


def check_cauchy_schwarz(seed, quick):
    rng = _rng(seed, 5)
    n = 40 if quick else 200
    module = mod.ModuleDescriptor(alg.full_matrices(2), 3)
    for _ in range(n):
        x = mod.random_element(module, rng)
        y = mod.random_element(module, rng)
        assert alg.op_norm(mod.inner(x, y)) <= mod.norm(x) * mod.norm(y) + 1e-9


def check_gram_positivity(seed, quick):
    rng = _rng(seed, 6)
    n = 20 if quick else 100
    for a_desc in (alg.full_matrices(2), alg.diagonals(3)):
        module = mod.ModuleDescriptor(a_desc, 2)
        for _ in range(n):
            x = mod.random_element(module, rng)
            assert alg.is_positive(mod.inner(x, x))


def check_scalarization_faithfulness(seed, quick):
    rng = _rng(seed, 7)
    n = 10 if quick else 50
    diag = mod.ModuleDescriptor(alg.diagonals(3), 2)
    for _ in range(n):
        x = mod.random_element(diag, rng)
        gram = mod.inner(x, x)
        for s in range(3):
            p = np.zeros(3)
            p[s] = 1.0
            px = mod.act(alg.element(alg.diagonals(3), p), x)
            compressed = np.trace(alg.as_matrix(mod.inner(px, px)))
            assert abs(compressed - gram.data[s]) <= 1e-10 * max(1.0, abs(gram.data[s]))
    full = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        x = mod.random_element(full, rng)
        gram = alg.as_matrix(mod.inner(x, x))
        xi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        xi = xi / np.linalg.norm(xi)
        p = alg.element(alg.full_matrices(2), np.outer(xi, xi.conj()))
        px = mod.act(p, x)
        compressed = np.trace(alg.as_matrix(mod.inner(px, px)))
        target = xi.conj() @ gram @ xi
        assert abs(compressed - target) <= 1e-10 * max(1.0, abs(target))


# -------------------------------------------------------------- operators


def check_paschke_bound(seed, quick):
    rng = _rng(seed, 8)
    n = 40 if quick else 200
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        t = ops.random_op(module, module, rng)
        x = mod.random_element(module, rng)
        tx = ops.apply(t, x)
        bound = ops.op_norm_op(t) ** 2
        assert alg.loewner_leq(mod.inner(tx, tx), bound * mod.inner(x, x))


def check_sandwich_bounds(seed, quick):
    rng = _rng(seed, 9)
    n = 10 if quick else 50
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    ident = ops.identity_op(module)
    for _ in range(n):
        t = _random_invertible(module, rng)
        tt = ops.compose(ops.adjoint_op(t), t)
        lo = 1.0 / ops.op_norm_op(ops.invert_op(tt))
        hi = ops.op_norm_op(t) ** 2
        assert ops.loewner_leq_op(ops.scale_op(lo, ident), tt)
        assert ops.loewner_leq_op(tt, ops.scale_op(hi, ident))


def check_surjectivity_margin(seed, quick):
    rng = _rng(seed, 10)
    n = 20 if quick else 100
    tall = mod.ModuleDescriptor(alg.full_matrices(2), 3)
    wide = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for i in range(n):
        dom, cod = (tall, wide) if i % 3 == 0 else ((wide, tall) if i % 3 == 1 else (wide, wide))
        t = ops.random_op(dom, cod, rng)
        margin = ops.bounded_below_margin(ops.adjoint_op(t))
        assert ops.is_surjective(t) == (margin > 1e-10 * max(1.0, ops.op_norm_op(t)))


def check_positivity_scalarization(seed, quick):
    rng = _rng(seed, 11)
    n_ops = 20 if quick else 100
    n_samples = 100 if quick else 500
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for i in range(n_ops):
        g = ops.random_op(module, module, rng)
        if i % 2 == 0:
            t = ops.compose(ops.adjoint_op(g), g)
        else:
            t = ops.add_op(g, ops.adjoint_op(g))
        spectral = ops.is_positive_op(t)
        if spectral:
            for _ in range(n_samples):
                x = mod.random_element(module, rng)
                assert alg.is_positive(mod.inner(ops.apply(t, x), x))
        else:
            M = ops.scalar_rep(t)
            w, v = np.linalg.eigh((M + M.conj().T) / 2.0)
            witness = mod.from_vector(module, v[:, 0])
            assert not alg.is_positive(mod.inner(ops.apply(t, witness), witness))


def check_penrose_identities(seed, quick):
    rng = _rng(seed, 12)
    n = 10 if quick else 40
    dom = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    cod = mod.ModuleDescriptor(alg.full_matrices(2), 3)
    proj = np.zeros((dom.rank, dom.rank) + dom.algebra.element_shape, dtype=np.complex128)
    proj[0, 0] = np.eye(2)
    killer = ops.AdjointableOp(dom, dom, proj)
    for i in range(n):
        t = ops.random_op(dom, cod, rng)
        if i % 2 == 0:
            t = ops.compose(t, killer)  # force rank deficiency
        dag = ops.pseudo_inverse(t)
        scale = max(1.0, ops.op_norm_op(t))
        assert ops.op_distance(ops.compose(ops.compose(t, dag), t), t) <= 1e-9 * scale
        assert ops.op_distance(ops.compose(ops.compose(dag, t), dag), dag) <= 1e-9 * scale
        tdag = ops.compose(t, dag)
        dagt = ops.compose(dag, t)
        assert ops.op_distance(ops.adjoint_op(tdag), tdag) <= 1e-9 * scale
        assert ops.op_distance(ops.adjoint_op(dagt), dagt) <= 1e-9 * scale


# ----------------------------------------------------------------- frames


def check_transform_norm(seed, quick):
    rng = _rng(seed, 13)
    n = 10 if quick else 30
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        F = _random_frame(module, rng)
        b = fr.optimal_frame_bounds(F)
        assert b.is_frame
        report = fr.verify_frame_bounds(F, BoundsSpec(Mode.PLAIN, b.lower, b.upper))
        assert report.verdict is Verdict.PROVED
        assert ops.op_norm_op(fr.analysis_operator(F)) <= math.sqrt(b.upper) + 1e-9


def check_optimal_tightness(seed, quick):
    rng = _rng(seed, 14)
    n = 5 if quick else 20
    module = mod.ModuleDescriptor(alg.diagonals(3), 2)
    for _ in range(n):
        F = _random_frame(module, rng)
        b = fr.optimal_frame_bounds(F)
        eps = 1e-4 * b.upper
        assert fr.verify_frame_bounds(F, BoundsSpec(Mode.PLAIN, b.lower, b.upper)).passed
        bad_lo = fr.verify_frame_bounds(F, BoundsSpec(Mode.PLAIN, b.lower + eps, b.upper))
        bad_hi = fr.verify_frame_bounds(F, BoundsSpec(Mode.PLAIN, b.lower, b.upper - eps))
        assert bad_lo.verdict is Verdict.FALSIFIED and bad_lo.witness is not None
        assert bad_hi.verdict is Verdict.FALSIFIED and bad_hi.witness is not None


def check_dual_reciprocity(seed, quick):
    rng = _rng(seed, 15)
    n = 10 if quick else 50
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        F = _random_frame(module, rng)
        b = fr.optimal_frame_bounds(F)
        dual_b = fr.optimal_frame_bounds(fr.canonical_dual(F))
        assert abs(dual_b.lower - 1.0 / b.upper) <= 1e-9 * max(1.0, 1.0 / b.upper)
        assert abs(dual_b.upper - 1.0 / b.lower) <= 1e-9 * max(1.0, 1.0 / b.lower)


def check_star_plain_containment(seed, quick):
    rng = _rng(seed, 16)
    n = 5 if quick else 20
    for a_desc in (alg.diagonals(3), alg.full_matrices(2)):
        module = mod.ModuleDescriptor(a_desc, 2)
        for _ in range(n):
            F = _random_frame(module, rng)
            b = fr.optimal_frame_bounds(F)
            assert fr.verify_frame_bounds(F, BoundsSpec(Mode.PLAIN, b.lower, b.upper)).passed
            lo, hi = _unit_star_bounds(a_desc, b.lower, b.upper)
            star = fr.verify_frame_bounds(F, BoundsSpec(Mode.STAR, lo, hi), samples=50)
            assert star.passed


def check_k_surjectivity(seed, quick):
    rng = _rng(seed, 17)
    n = 5 if quick else 20
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        F = _random_frame(module, rng)
        k_op = _random_invertible(module, rng)
        s_op = fr.frame_operator(F)
        lower = optimal_k_lower(s_op, k_op)
        assert lower > 0
        spec = BoundsSpec(Mode.K, lower, fr.optimal_frame_bounds(F).upper, k_op=k_op)
        assert fr.verify_frame_bounds(F, spec).verdict is Verdict.PROVED
        assert fr.optimal_frame_bounds(F).lower > 0


# ---------------------------------------------------------------- gframes


def check_gdual_bounds(seed, quick):
    rng = _rng(seed, 18)
    n = 10 if quick else 50
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    ident = ops.identity_op(module)
    for _ in range(n):
        G = _random_gframe(module, rng)
        b = gf.optimal_gframe_bounds(G)
        dual = gf.canonical_dual_gframe(G)
        db = gf.optimal_gframe_bounds(dual)
        assert abs(db.lower - 1.0 / b.upper) <= 1e-9 * max(1.0, 1.0 / b.upper)
        assert abs(db.upper - 1.0 / b.lower) <= 1e-9 * max(1.0, 1.0 / b.lower)
        resolution = None
        for lam, dual_lam in zip(G.blocks, dual.blocks):
            term = ops.compose(ops.adjoint_op(dual_lam), lam)
            resolution = term if resolution is None else ops.add_op(resolution, term)
        assert ops.op_distance(resolution, ident) <= 1e-10


def check_synthesis_characterization(seed, quick):
    rng = _rng(seed, 19)
    n = 10 if quick else 50
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    proj = np.zeros((module.rank, module.rank) + module.algebra.element_shape, dtype=np.complex128)
    proj[0, 0] = np.eye(2)
    killer = ops.AdjointableOp(module, module, proj)
    for i in range(n):
        G = _random_gframe(module, rng)
        if i % 3 == 0:
            G = gf.GFrameSystem(module, tuple(ops.compose(op, killer) for op in G.blocks))
        q = gf.synthesis_operator(G)
        b = gf.optimal_gframe_bounds(G)
        assert b.is_frame == ops.is_surjective(q)
        if b.is_frame:
            q_dag = ops.pseudo_inverse(q)
            lo = 1.0 / ops.op_norm_op(q_dag) ** 2
            hi = ops.op_norm_op(q) ** 2
            assert abs(lo - b.lower) <= 1e-9 * max(1.0, b.lower)
            assert abs(hi - b.upper) <= 1e-9 * max(1.0, b.upper)


def check_projection_uniqueness(seed, quick):
    rng = _rng(seed, 20)
    n = 5 if quick else 25
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        G = _random_gframe(module, rng)
        P = gf.range_projection(G)
        q = gf.synthesis_operator(G)
        qq = ops.compose(q, ops.adjoint_op(q))
        alt = ops.compose(ops.adjoint_op(q), ops.compose(ops.pseudo_inverse(qq), q))
        assert ops.op_distance(ops.compose(P, P), P) <= 1e-10
        assert ops.op_distance(ops.adjoint_op(P), P) <= 1e-10
        assert ops.op_distance(P, alt) <= 1e-9


def check_surjective_synthesis_star(seed, quick):
    rng = _rng(seed, 21)
    n = 5 if quick else 20
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        G = _random_gframe(module, rng)
        theta = gf.synthesis_operator(G)
        assert ops.is_surjective(theta)
        s = np.linalg.svd(ops.scalar_rep(theta), compute_uv=False)
        c = float(s[s > 1e-10 * s[0]][-1])
        lo = alg.scalar_multiple(module.algebra, c)
        hi = alg.scalar_multiple(module.algebra, ops.op_norm_op(theta))
        report = gf.verify_gframe_bounds(G, BoundsSpec(Mode.STAR, lo, hi), samples=50)
        assert report.passed


def check_composition_surjectivity(seed, quick):
    rng = _rng(seed, 22)
    n = 10 if quick else 50
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        lam = _random_gframe(module, rng)
        gam = _random_gframe(module, rng)
        f_op = None
        for l_i, g_i in zip(lam.blocks, gam.blocks):
            term = ops.compose(ops.adjoint_op(g_i), l_i)
            f_op = term if f_op is None else ops.add_op(f_op, term)
        if not ops.is_surjective(f_op):
            continue
        b = gf.optimal_gframe_bounds(gam)
        assert b.lower > 0
        lo, hi = _unit_star_bounds(module.algebra, b.lower, b.upper)
        report = gf.verify_gframe_bounds(gam, BoundsSpec(Mode.STAR, lo, hi), samples=50)
        assert report.verdict is not Verdict.FALSIFIED


def check_composed_invertibility(seed, quick):
    rng = _rng(seed, 23)
    n = 5 if quick else 20
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        G = _random_gframe(module, rng)
        t_op = _random_invertible(module, rng)
        k_op = _random_invertible(module, rng)
        for factor in (ops.adjoint_op(t_op), t_op):
            composed = gf.GFrameSystem(
                module, tuple(ops.compose(op, factor) for op in G.blocks)
            )
            s_op = gf.gframe_operator(composed)
            lower = optimal_k_lower(s_op, k_op)
            assert lower > 0
            upper = optimal_bounds_from_operator(s_op).upper
            spec = BoundsSpec(Mode.K, lower, upper, k_op=k_op)
            assert verify_sum_operator(s_op, spec).verdict is Verdict.PROVED
        ops.invert_op(t_op)
        proj = np.zeros_like(t_op.coeffs)
        proj[0, 0] = np.eye(module.algebra.n)
        singular = ops.AdjointableOp(module, module, proj)
        degraded = gf.GFrameSystem(
            module, tuple(ops.compose(op, singular) for op in G.blocks)
        )
        assert optimal_k_lower(gf.gframe_operator(degraded), k_op) <= 1e-9


def check_specialization_consistency(seed, quick):
    rng = _rng(seed, 24)
    n = 10 if quick else 50
    module = mod.ModuleDescriptor(alg.diagonals(2), 2)
    ident = ops.identity_op(module)
    for i in range(n):
        G = _random_gframe(module, rng)
        b = gf.optimal_gframe_bounds(G)
        lo = b.lower * (1.1 if i % 2 else 0.9)
        hi = b.upper * 1.1
        plain = gf.verify_gframe_bounds(G, BoundsSpec(Mode.PLAIN, lo, hi))
        lo_e, hi_e = _unit_star_bounds(module.algebra, lo, hi)
        stark = gf.verify_gframe_bounds(
            G, BoundsSpec(Mode.STAR_K, lo_e, hi_e, k_op=ident)
        )
        assert plain.verdict == stark.verdict


# --------------------------------------------------------------- opframes


def check_op_star_containment(seed, quick):
    rng = _rng(seed, 25)
    n = 10 if quick else 50
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        OF = _random_opframe(module, rng)
        b = of.optimal_opframe_bounds(OF)
        assert of.verify_opframe_bounds(OF, BoundsSpec(Mode.PLAIN, b.lower, b.upper)).passed
        lo, hi = _unit_star_bounds(module.algebra, b.lower, b.upper)
        assert of.verify_opframe_bounds(OF, BoundsSpec(Mode.STAR, lo, hi), samples=50).passed


def check_op_k_containment(seed, quick):
    rng = _rng(seed, 26)
    n = 5 if quick else 20
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        OF = _random_opframe(module, rng)
        b = of.optimal_opframe_bounds(OF)
        k_op = ops.random_op(module, module, rng)
        k_norm = ops.op_norm_op(k_op)
        spec = BoundsSpec(Mode.K, b.lower / (k_norm * k_norm), b.upper, k_op=k_op)
        assert of.verify_opframe_bounds(OF, spec).verdict is Verdict.PROVED


def check_tensor_operator_identity(seed, quick):
    rng = _rng(seed, 27)
    n = 5 if quick else 25
    h = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    k = mod.ModuleDescriptor(alg.diagonals(2), 2)
    for _ in range(n):
        lam = _random_opframe(h, rng, count=2)
        gam = _random_opframe(k, rng, count=2)
        tensor_ops = tuple(ops.kron_op(t, u) for t in lam.ops for u in gam.ops)
        system = of.OperatorFrameSystem(tensor_ops[0].domain, tensor_ops)
        direct = of.opframe_operator(system)
        product = ops.kron_op(of.opframe_operator(lam), of.opframe_operator(gam))
        assert np.max(np.abs(direct.coeffs - product.coeffs)) <= 1e-12 * max(
            1.0, float(np.max(np.abs(product.coeffs)))
        )


def check_perturbation_soundness(seed, quick):
    rng = _rng(seed, 28)
    n = 20 if quick else 100
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        OF = _random_opframe(module, rng)
        base = of.optimal_opframe_bounds(OF)
        R = _random_opframe(module, rng)
        scale = math.sqrt(0.2 * base.lower / of.optimal_opframe_bounds(R).upper)
        R = of.OperatorFrameSystem(module, tuple(ops.scale_op(scale, op) for op in R.ops))
        result = of.perturb(OF, R)
        for system in (result.plus, result.minus):
            b = of.optimal_opframe_bounds(system)
            assert b.lower >= result.lower - 1e-9
            assert b.upper <= result.upper + 1e-9


def check_dual_composition(seed, quick):
    rng = _rng(seed, 29)
    n = 5 if quick else 25
    module = mod.ModuleDescriptor(alg.full_matrices(2), 2)
    for _ in range(n):
        OF = _random_opframe(module, rng)
        k_op = _random_invertible(module, rng)
        dual = of.canonical_dual_k_opframe(OF, k_op)
        assert of.is_dual_k_opframe(OF, dual, k_op)


# ------------------------------------------------------------ serialization


def check_serialization_round_trip(seed, quick):
    rng = _rng(seed, 30)
    n = 10 if quick else 50
    for a_desc in (alg.full_matrices(2), alg.diagonals(3)):
        module = mod.ModuleDescriptor(a_desc, 2)
        for _ in range(n):
            F = _random_frame(module, rng, count=3)
            b = fr.optimal_frame_bounds(F)
            spec = BoundsSpec(Mode.K, max(b.lower, 1e-3), b.upper, k_op=ops.random_op(module, module, rng))
            problem = ser.ProblemFile(F, spec)
            text = ser.dumps_problem(problem)
            back = ser.loads_problem(text)
            assert back.system.vectors == F.vectors
            assert back.bounds.k_op == spec.k_op
            assert ser.dumps_problem(back) == text
            G = _random_gframe(module, rng, blocks=2)
            gt = ser.dumps_problem(ser.ProblemFile(G))
            assert ser.loads_problem(gt).system.blocks == G.blocks
            OF = _random_opframe(module, rng, count=2)
            ot = ser.dumps_problem(ser.ProblemFile(OF))
            assert ser.loads_problem(ot).system.ops == OF.ops


def check_report_determinism(seed, quick):
    rng = _rng(seed, 31)
    module = mod.ModuleDescriptor(alg.diagonals(2), 2)
    F = _random_frame(module, rng)
    b = fr.optimal_frame_bounds(F)
    lo, hi = _unit_star_bounds(module.algebra, b.lower, b.upper)
    runs = []
    for _ in range(2):
        rep = fr.verify_frame_bounds(F, BoundsSpec(Mode.STAR, lo, hi), seed=7)
        runs.append(
            ser.dumps_report(
                {"verdict": rep.verdict.value, "margin": rep.margin, "samples": rep.samples_used}
            )
        )
    assert runs[0] == runs[1]


CHECKS = [
    ("c*-identity", check_cstar_identity),
    ("involution laws", check_involution_laws),
    ("order transitivity", check_order_transitivity),
    ("psd square root round trip", check_sqrt_round_trip),
    ("cauchy-schwarz", check_cauchy_schwarz),
    ("gram positivity", check_gram_positivity),
    ("scalarization faithfulness", check_scalarization_faithfulness),
    ("contraction bound", check_paschke_bound),
    ("inverse sandwich", check_sandwich_bounds),
    ("surjectivity margin", check_surjectivity_margin),
    ("positivity oracle agreement", check_positivity_scalarization),
    ("penrose identities", check_penrose_identities),
    ("analysis norm bound", check_transform_norm),
    ("optimal bound tightness", check_optimal_tightness),
    ("dual bound reciprocity", check_dual_reciprocity),
    ("star containment (frames)", check_star_plain_containment),
    ("k-mode surjectivity", check_k_surjectivity),
    ("g-dual bounds", check_gdual_bounds),
    ("synthesis characterization", check_synthesis_characterization),
    ("range projection uniqueness", check_projection_uniqueness),
    ("surjective synthesis star bounds", check_surjective_synthesis_star),
    ("composition surjectivity", check_composition_surjectivity),
    ("composed-system invertibility", check_composed_invertibility),
    ("specialization consistency", check_specialization_consistency),
    ("star containment (operator frames)", check_op_star_containment),
    ("k containment (operator frames)", check_op_k_containment),
    ("tensor frame operator identity", check_tensor_operator_identity),
    ("perturbation interval", check_perturbation_soundness),
    ("canonical k-dual composition", check_dual_composition),
    ("serialization round trip", check_serialization_round_trip),
    ("report determinism", check_report_determinism),
]

CHECK_NAMES = [name for name, _ in CHECKS]


def run_all(seed: int = 0, quick: bool = False) -> list:
    results = []
    for name, fn in CHECKS:
        try:
            fn(seed, quick)
            results.append(CheckResult(name, True, ""))
        except AssertionError as exc:
            results.append(CheckResult(name, False, str(exc) or "assertion failed"))
        except Exception as exc:  # noqa: BLE001 - report, do not crash the table
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results
