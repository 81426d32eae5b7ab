import math

import numpy as np
import pytest

from chargedbec.fock import (FockSpace, ModeAmplitudes, OneBodyOperator, TruncationError,
                             build_ladder_operators, coherent_eigen_residual, coherent_state,
                             fock_state, fock_two_term_residual, max_coherent_n_mean,
                             oracle_report, random_amplitudes, random_hermitian,
                             second_quantize, verify_ordering_identity,
                             verify_two_term_reduction)


def test_dimension_and_order():
    s = FockSpace(3, 4)
    assert s.dim == math.comb(4 + 3, 3)
    assert s.basis[:4] == ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert list(s.totals) == sorted(s.totals)
    assert FockSpace(2, 2).basis == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


def test_single_mode_ladder():
    s = FockSpace(1, 3)
    (b, bd), = build_ladder_operators(s)
    expected = np.diag(np.sqrt([1.0, 2.0, 3.0]), 1)
    np.testing.assert_array_equal(b.toarray(), expected)
    np.testing.assert_array_equal(bd.toarray(), expected.T)


def test_commutators():
    s = FockSpace(2, 5)
    (b1, b1d), (b2, b2d) = build_ladder_operators(s)
    keep = np.ix_(s.mask(4), s.mask(4))
    comm = (b1 @ b1d - b1d @ b1).toarray()[keep]
    assert np.max(np.abs(comm - np.eye(comm.shape[0]))) < 1e-14
    assert np.max(np.abs((b1 @ b2d - b2d @ b1).toarray()[keep])) == 0
    assert np.max(np.abs((b1 @ b2 - b2 @ b1).toarray())) == 0


def test_mode_amplitudes_normalized():
    with pytest.raises(ValueError):
        ModeAmplitudes([1.0, 1.0], 0.5)


def test_coherent_vacuum():
    s = FockSpace(2, 4)
    psi = coherent_state(s, ModeAmplitudes([1.0, 0.0], 0.0))
    np.testing.assert_array_equal(psi, s.vacuum())


def test_coherent_number_mean():
    s = FockSpace(1, 20)
    psi = coherent_state(s, ModeAmplitudes([1.0], 0.5))
    assert np.vdot(psi, s.number_operator() @ psi).real == pytest.approx(0.25, abs=1e-12)
    assert np.vdot(psi, psi).real == pytest.approx(1.0, abs=1e-10)


def test_coherent_eigenvalue(rng):
    s = FockSpace(3, 12)
    amps = random_amplitudes(3, rng, 0.3)
    assert coherent_eigen_residual(s, amps) < 1e-10


def test_coherent_guard():
    s = FockSpace(3, 8)
    cap = max_coherent_n_mean(8)
    coherent_state(s, ModeAmplitudes([1, 0, 0], math.sqrt(0.99 * cap)))
    with pytest.raises(TruncationError):
        coherent_state(s, ModeAmplitudes([1, 0, 0], math.sqrt(1.01 * cap)))
    # tail bound at the cap equals the guard
    assert cap ** 9 / math.factorial(9) == pytest.approx(1e-14, rel=1e-9)


def test_fock_states():
    s = FockSpace(2, 5)
    phi = np.array([1, 1]) / np.sqrt(2)
    amps = ModeAmplitudes(phi)
    np.testing.assert_array_equal(fock_state(s, amps, 0), s.vacuum())
    one = fock_state(s, amps, 1)
    assert one[s.index[(1, 0)]] == pytest.approx(1 / np.sqrt(2))
    assert one[s.index[(0, 1)]] == pytest.approx(1 / np.sqrt(2))
    with pytest.raises(TruncationError):
        fock_state(s, amps, 6)


def test_fock_state_multinomial(rng):
    # amplitude on (n1, n2) is sqrt(n!/(n1! n2!)) phi1^n1 phi2^n2
    s = FockSpace(2, 6)
    amps = random_amplitudes(2, rng, 0.0)
    psi = fock_state(s, amps, 3)
    expected = np.zeros(s.dim, dtype=complex)
    for n1 in range(4):
        n2 = 3 - n1
        coef = math.sqrt(math.factorial(3) / (math.factorial(n1) * math.factorial(n2)))
        expected[s.index[(n1, n2)]] = coef * amps.phi[0] ** n1 * amps.phi[1] ** n2
    assert np.max(np.abs(psi - expected)) < 1e-14
    assert np.vdot(psi, psi).real == pytest.approx(1.0, abs=1e-12)


def test_second_quantize_identity_is_number():
    s = FockSpace(3, 4)
    n = second_quantize(s, OneBodyOperator(np.eye(3)))
    np.testing.assert_allclose(n.toarray(), s.number_operator().toarray(), atol=1e-14)


def test_second_quantize_one_particle_sector(rng):
    s = FockSpace(3, 3)
    op = random_hermitian(3, rng)
    big = second_quantize(s, op).toarray()
    one = [s.index[o] for o in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    np.testing.assert_allclose(big[np.ix_(one, one)], op.matrix, atol=1e-15)
    assert np.max(np.abs(big - big.conj().T)) < 1e-12


def test_second_quantize_coherent_expectation(rng):
    s = FockSpace(3, 12)
    amps = random_amplitudes(3, rng, 0.3)
    op = random_hermitian(3, rng)
    psi = coherent_state(s, amps)
    val = np.vdot(psi, second_quantize(s, op) @ psi)
    assert abs(val - amps.n_mean * np.vdot(amps.phi, op.matrix @ amps.phi)) < 1e-10


def test_ordering_single_mode(rng):
    s = FockSpace(1, 7)
    for _ in range(5):
        a, b = OneBodyOperator([[rng.normal()]]), OneBodyOperator([[rng.normal()]])
        assert verify_ordering_identity(s, a, b) < 1e-12


def test_ordering_number_operator_textbook():
    # N^2 = :N^2: + N, checked against explicit single-mode matrices
    s = FockSpace(1, 6)
    ident = OneBodyOperator([[1.0]])
    assert verify_ordering_identity(s, ident, ident) < 1e-13
    b = np.diag(np.sqrt(np.arange(1, 7.0)), 1)
    n = b.T @ b
    normal = b.T @ b.T @ b @ b
    assert np.max(np.abs((n @ n - normal - n)[:5, :5])) < 1e-13


def test_ordering_random_three_modes(rng):
    s = FockSpace(3, 6)
    for _ in range(5):
        assert verify_ordering_identity(s, random_hermitian(3, rng), random_hermitian(3, rng)) < 1e-10


def test_two_term_identity_operator():
    s = FockSpace(1, 12)
    lhs, rhs, res = verify_two_term_reduction(s, ModeAmplitudes([1.0], 0.5),
                                              OneBodyOperator([[1.0]]))
    assert lhs.real == pytest.approx(0.3125, abs=1e-12)
    assert res < 1e-12


def test_two_term_vacuum(rng):
    s = FockSpace(3, 4)
    lhs, rhs, res = verify_two_term_reduction(s, random_amplitudes(3, rng, 0.0),
                                              random_hermitian(3, rng))
    assert lhs == 0 and rhs == 0


def test_two_term_random_operator(rng):
    # n_max=14 keeps |z|^2=0.4 inside the truncation guard
    s = FockSpace(3, 14)
    lhs, rhs, res = verify_two_term_reduction(s, random_amplitudes(3, rng, 0.4),
                                              random_hermitian(3, rng))
    assert res < 1e-9


def test_two_term_guard_enforced(rng):
    with pytest.raises(TruncationError):
        verify_two_term_reduction(FockSpace(3, 8), random_amplitudes(3, rng, 0.4),
                                  random_hermitian(3, rng))


def test_two_term_matches_poisson_sector_sum(rng):
    # independent route: Poisson-weighted Fock-state expectations
    s = FockSpace(2, 16)
    amps = random_amplitudes(2, rng, 0.6)
    op = random_hermitian(2, rng)
    big = second_quantize(s, op)
    total = 0.0
    for n in range(s.n_max + 1):
        psi = fock_state(s, amps, n)
        weight = math.exp(-amps.n_mean) * amps.n_mean ** n / math.factorial(n)
        total += weight * np.vdot(psi, big @ (big @ psi)).real
    lhs, _, _ = verify_two_term_reduction(s, amps, op)
    assert lhs.real == pytest.approx(total, abs=1e-12)


@pytest.mark.parametrize("n", [0, 1, 2, 5])
def test_fock_two_term(rng, n):
    s = FockSpace(3, 6)
    assert fock_two_term_residual(s, random_amplitudes(3, rng, 0.0), random_hermitian(3, rng), n) < 1e-10


def test_oracle_report_deterministic():
    a = oracle_report(seed=3, n_trials=5)
    b = oracle_report(seed=3, n_trials=5)
    assert a == b
    assert a["dimension"] == 165
