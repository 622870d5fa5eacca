"""Monte Carlo machinery: reproducible states, partial traces, entropies,
generator basis, and the parallel oracle."""

import math

import numpy as np
import pytest

from haarmi import (
    CHUNK_SIZE,
    Dimensions,
    DomainError,
    InvalidDimensionError,
    NumericalValidityError,
    OracleWorkerError,
    STATE_DIMENSION_CAP,
    bloch_variance,
    bloch_variances,
    diagonal_entropy,
    gell_mann_basis,
    lubkin_purity,
    mutual_info_sample,
    mutual_information_rational,
    reduce_state,
    run_oracle,
    sample_state,
    von_neumann_entropy,
)
from haarmi import sampling as sampling_module

DIMS = Dimensions(2, 3, 4)


# ---------------------------------------------------------------------------
# state sampling


def test_sample_state_normalised_and_reproducible():
    a = sample_state(DIMS, seed=42, index=5)
    b = sample_state(DIMS, seed=42, index=5)
    assert np.array_equal(a.amplitudes, b.amplitudes)
    assert abs(np.linalg.norm(a.amplitudes) - 1.0) < 1e-12
    assert a.amplitudes.shape == (24,)
    assert a.amplitudes.dtype == np.complex128


def test_sample_state_streams_differ():
    base = sample_state(DIMS, seed=42, index=0).amplitudes
    assert not np.array_equal(base, sample_state(DIMS, seed=42, index=1).amplitudes)
    assert not np.array_equal(base, sample_state(DIMS, seed=43, index=0).amplitudes)


def test_sample_state_validation():
    with pytest.raises(DomainError):
        sample_state(DIMS, seed=-1, index=0)
    with pytest.raises(DomainError):
        sample_state(DIMS, seed=42, index=-3)
    big = Dimensions(16, 16, 17)  # N = 4352
    assert big.n > STATE_DIMENSION_CAP
    with pytest.raises(InvalidDimensionError):
        sample_state(big, seed=0, index=0)


# ---------------------------------------------------------------------------
# partial traces


@pytest.mark.parametrize("keep,dim", [("A", 2), ("B", 3), ("AB", 6)])
def test_reduce_state_is_density_matrix(keep, dim):
    state = sample_state(DIMS, seed=1, index=0)
    rho = reduce_state(state, keep)
    assert rho.dim == dim
    assert rho.matrix.shape == (dim, dim)
    assert np.max(np.abs(rho.matrix - rho.matrix.conj().T)) < 1e-12
    assert abs(np.trace(rho.matrix).real - 1.0) < 1e-12
    assert np.linalg.eigvalsh(rho.matrix).min() > -1e-10


def test_reduce_state_bad_target():
    state = sample_state(DIMS, seed=1, index=0)
    with pytest.raises(DomainError):
        reduce_state(state, "E")


def test_reduce_product_state():
    """For psi = u (x) v (x) w the reductions are the pure projectors."""
    u = np.array([1.0, 1.0j]) / math.sqrt(2)
    v = np.array([1.0, 0.0, 0.0])
    w = np.array([0.6, 0.8, 0.0, 0.0])
    dims = Dimensions(2, 3, 4)
    psi = np.einsum("a,b,e->abe", u, v, w).reshape(-1)
    state = sampling_module.PureState(amplitudes=psi, dims=dims)
    np.testing.assert_allclose(
        reduce_state(state, "A").matrix, np.outer(u, u.conj()), atol=1e-14
    )
    np.testing.assert_allclose(
        reduce_state(state, "B").matrix, np.outer(v, v.conj()), atol=1e-14
    )
    uv = np.kron(u, v)
    np.testing.assert_allclose(
        reduce_state(state, "AB").matrix, np.outer(uv, uv.conj()), atol=1e-14
    )


def test_schmidt_symmetry():
    """Nonzero spectrum of rho_A equals that of the complementary reduction."""
    state = sample_state(Dimensions(2, 3, 4), seed=3, index=7)
    t = state.amplitudes.reshape(2, 12)
    rho_be = np.einsum("ax,ay->xy", t.conj(), t)  # complement of A
    eig_a = np.linalg.eigvalsh(reduce_state(state, "A").matrix)
    eig_be = np.linalg.eigvalsh(rho_be)
    largest = np.sort(eig_be)[-2:]
    np.testing.assert_allclose(np.sort(eig_a), largest, atol=1e-12)


def test_no_environment_gives_pure_joint_state():
    state = sample_state(Dimensions(2, 3, 1), seed=0, index=0)
    assert von_neumann_entropy(reduce_state(state, "AB")) < 1e-12


# ---------------------------------------------------------------------------
# entropies


def test_von_neumann_entropy_known():
    rho = np.diag([0.75, 0.25])
    assert von_neumann_entropy(rho) == pytest.approx(
        0.5623351446188083, abs=1e-15, rel=0
    )
    pure = np.outer([1, 0, 0], [1, 0, 0]).astype(float)
    assert von_neumann_entropy(pure) == 0.0


def test_entropy_eigenvalue_policy():
    # tiny negatives are clamped, real negatives are an error
    assert von_neumann_entropy(np.diag([1.0, -5e-11])) == 0.0
    with pytest.raises(NumericalValidityError):
        von_neumann_entropy(np.diag([1.5, -0.5]))
    with pytest.raises(NumericalValidityError):
        diagonal_entropy(np.diag([1.5, -0.5]))


def test_diagonal_vs_eigenvalue_entropy():
    plus = 0.5 * np.ones((2, 2))  # |+><+|
    assert diagonal_entropy(plus) == pytest.approx(math.log(2.0), abs=1e-15, rel=0)
    assert von_neumann_entropy(plus) < 1e-12


def test_per_sample_schur_inequality():
    for index in range(20):
        state = sample_state(DIMS, seed=11, index=index)
        rho = reduce_state(state, "A")
        assert diagonal_entropy(rho) >= von_neumann_entropy(rho) - 1e-12


def test_mutual_info_sample_composition():
    state = sample_state(DIMS, seed=4, index=2)
    manual = (
        von_neumann_entropy(reduce_state(state, "A"))
        + von_neumann_entropy(reduce_state(state, "B"))
        - von_neumann_entropy(reduce_state(state, "AB"))
    )
    assert mutual_info_sample(DIMS, seed=4, index=2) == manual
    assert mutual_info_sample(DIMS, seed=4, index=2) >= -1e-12


# ---------------------------------------------------------------------------
# generator basis


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_gell_mann_basis_orthonormal(m):
    basis = gell_mann_basis(m)
    assert basis.count == m * m - 1
    assert int(basis.is_cartan.sum()) == m - 1
    for g in basis.matrices:
        np.testing.assert_allclose(g, g.conj().T, atol=1e-15)
        assert abs(np.trace(g)) < 1e-14
    gram = np.einsum("aij,bji->ab", basis.matrices, basis.matrices).real
    np.testing.assert_allclose(gram, 2.0 * np.eye(m * m - 1), atol=1e-13)


def test_gell_mann_basis_m2_is_pauli():
    basis = gell_mann_basis(2)
    np.testing.assert_allclose(basis.matrices[0], [[0, 1], [1, 0]], atol=0)
    np.testing.assert_allclose(basis.matrices[1], [[0, -1j], [1j, 0]], atol=0)
    np.testing.assert_allclose(basis.matrices[2], [[1, 0], [0, -1]], atol=1e-15)
    assert list(basis.is_cartan) == [False, False, True]


def test_gell_mann_basis_domain():
    with pytest.raises(DomainError):
        gell_mann_basis(1)


# ---------------------------------------------------------------------------
# oracle runs


def test_run_oracle_deterministic_across_workers():
    reference = run_oracle(DIMS, n_samples=700, seed=9, workers=1)
    for workers in (2, 4):
        other = run_oracle(DIMS, n_samples=700, seed=9, workers=workers)
        for name in reference.__dataclass_fields__:
            if name in ("dims", "rng"):
                continue
            assert getattr(reference, name) == getattr(other, name), name


def test_run_oracle_statistics_concord():
    dims = Dimensions(2, 2, 4)
    stats = run_oracle(dims, n_samples=4000, seed=5, workers=4)
    env = dims.d_b * dims.d_e
    # generous 5-sigma bands: this is a smoke check, the acceptance suite
    # pins tighter ones at higher sample counts
    assert abs(
        stats.mean_mutual_information
        - float(mutual_information_rational(dims))
    ) < 5 * stats.stderr_mutual_information
    assert abs(stats.mean_purity_a - float(lubkin_purity(2, env))) < (
        5 * stats.stderr_purity_a
    )
    assert stats.stderr_mutual_information > 0
    assert stats.n_samples == 4000
    assert stats.seed == 5
    assert "philox" in stats.rng


def test_run_oracle_chunking_boundaries():
    # sample counts straddling the chunk size must agree sample-by-sample
    small = run_oracle(DIMS, n_samples=CHUNK_SIZE + 3, seed=2, workers=2)
    assert small.n_samples == CHUNK_SIZE + 3


def test_run_oracle_validation():
    with pytest.raises(DomainError):
        run_oracle(DIMS, n_samples=1, seed=0)
    with pytest.raises(DomainError):
        run_oracle(DIMS, n_samples=100, seed=-4)


def test_run_oracle_worker_failure(monkeypatch):
    real_block = sampling_module._sample_block

    def flaky(dims, seed, start, count):
        if start >= CHUNK_SIZE:
            raise RuntimeError("injected failure")
        return real_block(dims, seed, start, count)

    monkeypatch.setattr(sampling_module, "_sample_block", flaky)
    with pytest.raises(OracleWorkerError):
        run_oracle(DIMS, n_samples=2 * CHUNK_SIZE, seed=0, workers=2)


def test_bloch_variances_structure_and_concordance():
    m, n = 2, 4
    stats = bloch_variances(m, n, n_samples=4000, seed=8, workers=2)
    assert stats.generator_mean.shape == (3,)
    assert stats.is_cartan.tolist() == [False, False, True]
    target = float(bloch_variance(m, n))
    assert abs(stats.cartan_var - target) < 5 * stats.stderr_cartan_var
    assert abs(stats.offdiag_var - target) < 5 * stats.stderr_offdiag_var
    # every generator mean is compatible with zero
    z = np.abs(stats.generator_mean) / stats.generator_stderr
    assert z.max() < 5.0


def test_oracle_bloch_sector_fields():
    stats = run_oracle(Dimensions(1, 3, 3), n_samples=50, seed=1)
    assert stats.cartan_var is None and stats.offdiag_var is None
    stats2 = run_oracle(Dimensions(2, 2, 2), n_samples=50, seed=1)
    assert stats2.cartan_var is not None and stats2.offdiag_var > 0
