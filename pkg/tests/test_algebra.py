import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cstar_frames import algebra as alg

from helpers import DIAG2, FULL2, quad_eigs_2x2, rng


def test_adjoint_examples():
    assert alg.adjoint(alg.element(DIAG2, [1j, 2])) == alg.element(DIAG2, [-1j, 2])
    nil = alg.element(FULL2, [[0, 1], [0, 0]])
    assert alg.adjoint(nil) == alg.element(FULL2, [[0, 0], [1, 0]])
    ident = alg.unit(FULL2)
    assert alg.adjoint(ident) == ident


def test_op_norm_examples():
    assert alg.op_norm(alg.element(FULL2, [[0, 1], [0, 0]])) == pytest.approx(1.0)
    assert alg.op_norm(alg.element(DIAG2, [3, -4])) == pytest.approx(4.0)
    assert alg.op_norm(alg.unit(alg.full_matrices(5))) == pytest.approx(1.0)


def test_is_positive_examples():
    assert alg.is_positive(alg.element(DIAG2, [1, 2]))
    assert not alg.is_positive(alg.element(DIAG2, [1, -1e-3]))
    assert not alg.is_positive(alg.element(FULL2, [[0, 1], [0, 0]]))


def test_loewner_leq_examples():
    a, b = alg.element(DIAG2, [1, 1]), alg.element(DIAG2, [2, 1])
    assert alg.loewner_leq(a, b)
    assert not alg.loewner_leq(alg.element(DIAG2, [2, 0]), alg.element(DIAG2, [1, 1]))
    assert alg.loewner_leq(a, a)
    with pytest.raises(ValueError, match="algebra mismatch"):
        alg.loewner_leq(a, alg.unit(FULL2))


def test_sqrt_psd_examples():
    assert alg.sqrt_psd(alg.element(DIAG2, [4, 9])) == alg.element(DIAG2, [2, 3])
    assert alg.op_norm(alg.sqrt_psd(alg.unit(FULL2)) - alg.unit(FULL2)) < 1e-12
    a = alg.element(FULL2, [[2, 1], [1, 2]])
    s = alg.sqrt_psd(a)
    assert alg.is_positive(s)
    assert alg.op_norm(s * s - a) <= 1e-10
    with pytest.raises(ValueError, match="not positive"):
        alg.sqrt_psd(alg.element(DIAG2, [1, -1]))


def test_invert_examples():
    assert alg.invert(alg.element(DIAG2, [2, 4])) == alg.element(DIAG2, [0.5, 0.25])
    assert alg.op_norm(alg.invert(alg.unit(FULL2)) - alg.unit(FULL2)) < 1e-12
    with pytest.raises(ValueError, match="not invertible"):
        alg.invert(alg.element(DIAG2, [1, 0]))
    r = rng(11)
    a = alg.random_algebra_element(FULL2, r)
    assert alg.op_norm(a * alg.invert(a) - alg.unit(FULL2)) <= 1e-10


def test_hermitian_spectrum_examples():
    spec = alg.hermitian_spectrum(alg.element(alg.diagonals(3), [3, 1, 2]))
    assert np.allclose(spec, [1, 2, 3])
    m = np.array([[2, 1], [1, 2]], dtype=complex)
    # quadratic-formula oracle, independent of the library path
    assert np.allclose(alg.hermitian_spectrum(alg.element(FULL2, m)), quad_eigs_2x2(m))
    assert np.allclose(alg.hermitian_spectrum(alg.zero(FULL2)), [0, 0])
    with pytest.raises(ValueError, match="not self-adjoint"):
        alg.hermitian_spectrum(alg.element(FULL2, [[0, 1], [0, 0]]))


complex_entries = st.complex_numbers(
    min_magnitude=0.0, max_magnitude=10.0, allow_nan=False, allow_infinity=False
)


@st.composite
def full_elements(draw, n=2):
    data = draw(
        st.lists(st.lists(complex_entries, min_size=n, max_size=n), min_size=n, max_size=n)
    )
    return alg.element(alg.full_matrices(n), data)


@given(full_elements())
@settings(max_examples=100, deadline=None)
def test_cstar_identity_property(a):
    assert abs(alg.op_norm(alg.adjoint(a) * a) - alg.op_norm(a) ** 2) <= 1e-9 * alg.op_norm(a) ** 2 + 1e-12


@given(full_elements(), full_elements(), complex_entries)
@settings(max_examples=100, deadline=None)
def test_involution_laws_property(a, b, c):
    assert np.max(np.abs((alg.adjoint(a * b) - alg.adjoint(b) * alg.adjoint(a)).data)) <= 1e-12 * max(
        1.0, alg.op_norm(a) * alg.op_norm(b)
    )
    lhs = alg.adjoint(c * a + b)
    rhs = np.conj(c) * alg.adjoint(a) + alg.adjoint(b)
    assert np.max(np.abs((lhs - rhs).data)) <= 1e-12 * max(1.0, abs(c) * alg.op_norm(a) + alg.op_norm(b))


def test_order_transitivity_widened():
    r = rng(3)
    wide = alg.Tolerance(psd_rel=2e-9)
    for _ in range(60):
        a = alg.random_algebra_element(FULL2, r)
        a = a + alg.adjoint(a)
        g1, g2 = (alg.random_algebra_element(FULL2, r) for _ in range(2))
        b = a + alg.adjoint(g1) * g1
        c = b + alg.adjoint(g2) * g2
        assert alg.loewner_leq(a, b) and alg.loewner_leq(b, c)
        assert alg.loewner_leq(a, c, wide)


def test_sqrt_round_trip_random_psd():
    r = rng(4)
    for a_desc in (alg.full_matrices(3), alg.diagonals(4)):
        for _ in range(50):
            g = alg.random_algebra_element(a_desc, r)
            a = alg.adjoint(g) * g
            s = alg.sqrt_psd(a)
            assert alg.op_norm(s * s - a) <= 1e-9 * max(1.0, alg.op_norm(a))


def test_tolerance_validation():
    with pytest.raises(ValueError):
        alg.Tolerance(psd_rel=-1.0)
    t = alg.Tolerance()
    assert t.psd_rel == 1e-9 and t.rank_rel == 1e-10 and t.recon_rel == 1e-10


def test_involution_is_involutive_on_storage():
    r = rng(5)
    for a_desc in (FULL2, DIAG2):
        a = alg.random_algebra_element(a_desc, r)
        assert alg.adjoint(alg.adjoint(a)) == a
