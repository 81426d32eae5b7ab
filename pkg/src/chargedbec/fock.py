"""Truncated multimode Fock space for checking the condensate operator algebra.

The basis holds every occupation tuple over ``n_modes`` modes with total
occupation <= ``n_max``, in graded lexicographic order.  Creation operators
annihilate states at total ``n_max``, so the canonical commutator is exact
only on totals <= ``n_max - 1``; identities are checked on such subspaces.

Everything one-body (``sum O_kk' b_k^dag b_k'``) conserves particle number and
is therefore exact on the whole truncated space.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

# Poisson tail allowed beyond n_max when building a coherent state
COHERENT_TAIL_GUARD = 1e-14


class TruncationError(ValueError):
    pass


def _compositions(total, n_modes):
    # tuples of n_modes non-negative ints summing to total, lexicographically descending
    if n_modes == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, n_modes - 1):
            yield (first,) + rest


@dataclass(frozen=True, eq=False)
class FockSpace:
    n_modes: int
    n_max: int
    basis: tuple = field(init=False, repr=False)
    index: dict = field(init=False, repr=False)
    totals: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.n_modes < 1 or self.n_max < 1:
            raise ValueError("n_modes and n_max must be positive")
        basis = tuple(itertools.chain.from_iterable(
            _compositions(n, self.n_modes) for n in range(self.n_max + 1)))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "index", {occ: i for i, occ in enumerate(basis)})
        object.__setattr__(self, "totals", np.array([sum(o) for o in basis]))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v

    def mask(self, max_total: int) -> np.ndarray:
        return self.totals <= max_total

    def number_operator(self):
        return sparse.diags(self.totals.astype(float), format="csr")


@dataclass(frozen=True, eq=False)
class ModeAmplitudes:
    phi: np.ndarray
    z: complex = 0.0

    def __post_init__(self):
        phi = np.array(self.phi, dtype=complex)
        if phi.ndim != 1:
            raise ValueError("phi must be a 1-D array")
        if abs(np.vdot(phi, phi).real - 1.0) > 1e-12:
            raise ValueError("mode amplitudes must satisfy sum |phi_k|^2 = 1")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "z", complex(self.z))

    @property
    def n_mean(self) -> float:
        return abs(self.z) ** 2


@dataclass(frozen=True, eq=False)
class OneBodyOperator:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("one-body operator must be a square matrix")
        object.__setattr__(self, "matrix", m)

    def is_hermitian(self, tol=1e-12) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0) < tol)


def build_ladder_operators(space: FockSpace):
    """Return ``[(b_k, b_k^dag) for k in modes]`` as sparse CSR matrices."""
    ops = []
    for k in range(space.n_modes):
        rows, cols, vals = [], [], []
        for j, occ in enumerate(space.basis):
            if occ[k] == 0:
                continue
            lowered = occ[:k] + (occ[k] - 1,) + occ[k + 1:]
            rows.append(space.index[lowered])
            cols.append(j)
            vals.append(math.sqrt(occ[k]))
        b = sparse.csr_matrix((vals, (rows, cols)), shape=(space.dim, space.dim))
        ops.append((b, b.T.tocsr()))
    return ops


def _creation_combination(space, phi, ladders=None):
    ladders = ladders or build_ladder_operators(space)
    return sum(phi[k] * ladders[k][1] for k in range(space.n_modes))


def max_coherent_n_mean(n_max: int, tail: float = COHERENT_TAIL_GUARD) -> float:
    """Largest |z|^2 with (|z|^2)^(n_max+1) / (n_max+1)! below ``tail``."""
    return math.exp((math.log(tail) + math.lgamma(n_max + 2)) / (n_max + 1))


def check_coherent_guard(space: FockSpace, z: complex):
    n_mean = abs(z) ** 2
    if n_mean == 0:
        return
    m = space.n_max + 1
    log_tail = m * math.log(n_mean) - math.lgamma(m + 1)
    if log_tail >= math.log(COHERENT_TAIL_GUARD):
        raise TruncationError(
            f"|z|^2={n_mean:.4g} too large for n_max={space.n_max}: Poisson tail "
            f"{math.exp(log_tail):.3g} >= {COHERENT_TAIL_GUARD:g} "
            f"(max |z|^2 {max_coherent_n_mean(space.n_max):.4g})"
        )


def coherent_state(space: FockSpace, amps: ModeAmplitudes, ladders=None) -> np.ndarray:
    """exp(-|z|^2/2) exp(z sum_k phi_k b_k^dag)|0>, summed term by term up to n_max."""
    if amps.phi.size != space.n_modes:
        raise ValueError("mode amplitudes do not match the number of modes")
    check_coherent_guard(space, amps.z)
    raise_op = _creation_combination(space, amps.phi, ladders)
    term = space.vacuum()
    state = term.copy()
    for n in range(1, space.n_max + 1):
        term = amps.z * (raise_op @ term) / n
        state += term
    return math.exp(-0.5 * amps.n_mean) * state


def fock_state(space: FockSpace, amps: ModeAmplitudes, n: int, ladders=None) -> np.ndarray:
    """(1/sqrt(n!)) (sum_k phi_k b_k^dag)^n |0>."""
    if n > space.n_max:
        raise TruncationError(f"n={n} exceeds n_max={space.n_max}")
    if n < 0:
        raise ValueError("n must be non-negative")
    raise_op = _creation_combination(space, amps.phi, ladders)
    state = space.vacuum()
    for j in range(1, n + 1):
        state = raise_op @ state / math.sqrt(j)
    return state


def second_quantize(space: FockSpace, op: OneBodyOperator, ladders=None):
    """sum_kk' O_kk' b_k^dag b_k' as a sparse matrix."""
    if op.matrix.shape != (space.n_modes, space.n_modes):
        raise ValueError("operator dimension does not match the number of modes")
    ladders = ladders or build_ladder_operators(space)
    out = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    for k in range(space.n_modes):
        for kp in range(space.n_modes):
            c = op.matrix[k, kp]
            if c != 0:
                out = out + c * (ladders[k][1] @ ladders[kp][0])
    return out.tocsr()


def normal_ordered_product(space: FockSpace, op_i: OneBodyOperator, op_j: OneBodyOperator,
                           ladders=None):
    """sum O_km O'_ln b_k^dag b_l^dag b_m b_n."""
    ladders = ladders or build_ladder_operators(space)
    M = space.n_modes
    a, b = op_i.matrix, op_j.matrix
    out = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    lowered = {(m, n): ladders[m][0] @ ladders[n][0] for m in range(M) for n in range(M)}
    for k in range(M):
        for l in range(M):
            inner = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
            for m in range(M):
                for n in range(M):
                    c = a[k, m] * b[l, n]
                    if c != 0:
                        inner = inner + c * lowered[m, n]
            out = out + ladders[k][1] @ (ladders[l][1] @ inner)
    return out.tocsr()


def verify_ordering_identity(space: FockSpace, op_i: OneBodyOperator,
                             op_j: OneBodyOperator, ladders=None) -> float:
    """Max residual of  O_i O_j = :O_i O_j: + (O_i O_j)^  on totals <= n_max - 2."""
    ladders = ladders or build_ladder_operators(space)
    lhs = second_quantize(space, op_i, ladders) @ second_quantize(space, op_j, ladders)
    rhs = (normal_ordered_product(space, op_i, op_j, ladders)
           + second_quantize(space, OneBodyOperator(op_i.matrix @ op_j.matrix), ladders))
    keep = np.flatnonzero(space.mask(space.n_max - 2))
    diff = (lhs - rhs).tocsr()[keep][:, keep]
    return float(np.max(np.abs(diff.toarray()), initial=0.0))


def coherent_eigen_residual(space: FockSpace, amps: ModeAmplitudes, ladders=None) -> float:
    """max_k |b_k psi - z phi_k psi| on totals <= n_max - 1."""
    ladders = ladders or build_ladder_operators(space)
    psi = coherent_state(space, amps, ladders)
    keep = space.mask(space.n_max - 1)
    worst = 0.0
    for k, (b, _) in enumerate(ladders):
        r = (b @ psi - amps.z * amps.phi[k] * psi)[keep]
        worst = max(worst, float(np.max(np.abs(r))))
    return worst


def verify_two_term_reduction(space: FockSpace, amps: ModeAmplitudes, op: OneBodyOperator,
                              ladders=None):
    """Compare <psi_c|O^2|psi_c> with n^2 (phi^dag O phi)^2 + n (phi^dag O^2 phi).

    Returns ``(lhs, rhs, residual)``.
    """
    ladders = ladders or build_ladder_operators(space)
    psi = coherent_state(space, amps, ladders)
    big_o = second_quantize(space, op, ladders)
    lhs = complex(np.vdot(psi, big_o @ (big_o @ psi)))
    phi = amps.phi
    first = np.vdot(phi, op.matrix @ phi)
    second = np.vdot(phi, op.matrix @ (op.matrix @ phi))
    n = amps.n_mean
    rhs = complex(n * n * first * first + n * second)
    return lhs, rhs, abs(lhs - rhs)


def fock_two_term_residual(space: FockSpace, amps: ModeAmplitudes, op: OneBodyOperator,
                           n: int, ladders=None) -> float:
    """|<n|O^2|n> - n(n-1)(phi^dag O phi)^2 - n phi^dag O^2 phi| for the n-particle state."""
    ladders = ladders or build_ladder_operators(space)
    psi = fock_state(space, amps, n, ladders)
    big_o = second_quantize(space, op, ladders)
    lhs = np.vdot(psi, big_o @ (big_o @ psi))
    phi = amps.phi
    first = np.vdot(phi, op.matrix @ phi)
    second = np.vdot(phi, op.matrix @ (op.matrix @ phi))
    return float(abs(lhs - n * (n - 1) * first * first - n * second))


def random_hermitian(n_modes: int, rng: np.random.Generator) -> OneBodyOperator:
    a = rng.normal(size=(n_modes, n_modes)) + 1j * rng.normal(size=(n_modes, n_modes))
    return OneBodyOperator(0.5 * (a + a.conj().T))


def random_amplitudes(n_modes: int, rng: np.random.Generator, n_mean: float) -> ModeAmplitudes:
    phi = rng.normal(size=n_modes) + 1j * rng.normal(size=n_modes)
    phi /= np.linalg.norm(phi)
    z = math.sqrt(n_mean) * np.exp(2j * np.pi * rng.random())
    return ModeAmplitudes(phi, z)


def oracle_report(seed: int = 0, n_trials: int = 50, n_modes: int = 3, n_max: int = 8) -> dict:
    """Residuals of every algebraic identity over random operators and amplitudes."""
    rng = np.random.default_rng(seed)
    space = FockSpace(n_modes, n_max)
    ladders = build_ladder_operators(space)
    z2_cap = min(1.0, max_coherent_n_mean(n_max))

    # canonical commutators on totals <= n_max - 1
    keep = np.flatnonzero(space.mask(n_max - 1))
    ccr = 0.0
    for k in range(n_modes):
        for kp in range(n_modes):
            comm = ladders[k][0] @ ladders[kp][1] - ladders[kp][1] @ ladders[k][0]
            target = np.eye(space.dim) if k == kp else np.zeros((space.dim, space.dim))
            ccr = max(ccr, float(np.max(np.abs((comm.toarray() - target)[np.ix_(keep, keep)]))))

    two_term, ordering, eigen, norm_err, number_err, fock_err = [], [], [], [], [], []
    number = space.number_operator()
    for _ in range(n_trials):
        n_mean = z2_cap * rng.random()
        amps = random_amplitudes(n_modes, rng, n_mean)
        op = random_hermitian(n_modes, rng)
        two_term.append(verify_two_term_reduction(space, amps, op, ladders)[2])
        ordering.append(verify_ordering_identity(space, op, random_hermitian(n_modes, rng),
                                                 ladders))
        eigen.append(coherent_eigen_residual(space, amps, ladders))
        psi = coherent_state(space, amps, ladders)
        norm_err.append(abs(np.vdot(psi, psi).real - 1.0))
        number_err.append(abs(np.vdot(psi, number @ psi).real - amps.n_mean))
        n = int(rng.integers(0, n_max + 1))
        fock_err.append(fock_two_term_residual(space, amps, op, n, ladders))

    return {
        "seed": seed,
        "n_trials": n_trials,
        "n_modes": n_modes,
        "n_max": n_max,
        "dimension": space.dim,
        "max_n_mean": z2_cap,
        "commutator_residual": ccr,
        "two_term_residual": max(two_term),
        "ordering_residual": max(ordering),
        "eigenvalue_residual": max(eigen),
        "coherent_norm_error": max(norm_err),
        "number_mean_error": max(number_err),
        "fock_two_term_residual": max(fock_err),
    }
