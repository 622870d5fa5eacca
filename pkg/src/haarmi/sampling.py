"""Monte Carlo oracle: entropies of Haar-random pure states.

States are drawn by normalising a vector of iid complex Gaussians, which
is exactly Haar-distributed on the unit sphere.  Sample ``index`` under
``seed`` uses a counter-based Philox stream keyed by ``(seed, index)``, so
every sample is reproducible in isolation and results are bitwise
independent of chunking order and worker count.

Samples are processed in fixed chunks of ``CHUNK_SIZE`` states; each chunk
writes a disjoint slice of the per-sample result arrays, so running chunks
on a thread pool changes nothing about the final reductions (numpy's
pairwise ``sum``/``mean`` over a fixed-length array is a fixed reduction
tree).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .dims import Dimensions
from .errors import (
    DomainError,
    InvalidDimensionError,
    NumericalValidityError,
    OracleWorkerError,
)

#: Largest total Hilbert-space dimension a state may have.
STATE_DIMENSION_CAP = 4096

#: Samples per work unit; fixed so results never depend on worker count.
CHUNK_SIZE = 512

#: Identity string of the random stream, recorded in every result.
RNG_IDENTITY = "philox4x64-10 (numpy.random.Philox), key=(seed, sample_index)"

_EIG_FLOOR = 1e-14
_EIG_NEG_LIMIT = -1e-10


@dataclass(frozen=True)
class PureState:
    """Normalised state vector of length ``dims.n``."""

    amplitudes: np.ndarray
    dims: Dimensions


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace reduced state on ``dim`` levels."""

    matrix: np.ndarray
    dim: int


@dataclass(frozen=True)
class HaarSampleStats:
    """Sample means (with standard errors) over a Haar Monte Carlo run.

    The Bloch-sector fields pool the squared components ``r_a^2`` of the
    reduced state of A over the diagonal (Cartan) generators and over the
    off-diagonal generators separately; they are None when ``d_a = 1``
    (no generators).
    """

    dims: Dimensions
    n_samples: int
    seed: int
    rng: str
    mean_entropy_a: float
    stderr_entropy_a: float
    mean_entropy_b: float
    stderr_entropy_b: float
    mean_entropy_ab: float
    stderr_entropy_ab: float
    mean_mutual_information: float
    stderr_mutual_information: float
    mean_purity_a: float
    stderr_purity_a: float
    mean_diagonal_entropy_a: float
    stderr_diagonal_entropy_a: float
    mean_diagonal_second_moment_a: float
    stderr_diagonal_second_moment_a: float
    cartan_var: float | None
    stderr_cartan_var: float | None
    offdiag_var: float | None
    stderr_offdiag_var: float | None


@dataclass(frozen=True)
class BlochVarianceStats:
    """Generator-resolved second moments of the Bloch components of a
    random reduced state on m levels (environment dimension n)."""

    m: int
    n: int
    n_samples: int
    seed: int
    rng: str
    generator_mean: np.ndarray
    generator_stderr: np.ndarray
    generator_second_moment: np.ndarray
    generator_second_moment_stderr: np.ndarray
    is_cartan: np.ndarray
    cartan_var: float
    stderr_cartan_var: float
    offdiag_var: float
    stderr_offdiag_var: float


@dataclass(frozen=True)
class GellMannBasis:
    """Traceless Hermitian generators normalised to Tr(g_a g_b) = 2 delta_ab.

    Ordering: for each index pair i < j the symmetric then the
    antisymmetric generator, followed by the m-1 diagonal (Cartan)
    generators.
    """

    matrices: np.ndarray
    is_cartan: np.ndarray

    @property
    def count(self) -> int:
        return self.matrices.shape[0]


def _check_seed(seed: int) -> None:
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise DomainError(f"seed must be a non-negative int, got {seed!r}")


def _check_cap(dims: Dimensions) -> None:
    if dims.n > STATE_DIMENSION_CAP:
        raise InvalidDimensionError(
            f"total dimension {dims.n} exceeds the sampling cap "
            f"{STATE_DIMENSION_CAP}"
        )


def _sample_block(dims: Dimensions, seed: int, start: int, count: int) -> np.ndarray:
    """Rows ``start .. start+count-1`` of the sample stream, shape (count, N)."""
    n = dims.n
    out = np.empty((count, n), dtype=np.complex128)
    for i in range(count):
        key = np.array([seed, start + i], dtype=np.uint64)
        gen = np.random.Generator(np.random.Philox(key=key))
        z = gen.standard_normal(2 * n)
        vec = z[0::2] + 1j * z[1::2]
        out[i] = vec / np.linalg.norm(vec)
    return out


def sample_state(dims: Dimensions, seed: int, index: int) -> PureState:
    """The ``index``-th Haar-random pure state of the stream keyed by
    ``(seed, index)``; identical no matter which other samples are drawn."""
    _check_seed(seed)
    if not isinstance(index, int) or isinstance(index, bool) or index < 0:
        raise DomainError(f"sample index must be a non-negative int, got {index!r}")
    _check_cap(dims)
    amplitudes = _sample_block(dims, seed, index, 1)[0]
    return PureState(amplitudes=amplitudes, dims=dims)


def reduce_state(state: PureState, keep: Literal["A", "B", "AB"]) -> DensityMatrix:
    """Partial trace of a pure tripartite state down to A, B, or AB."""
    d = state.dims
    t = state.amplitudes.reshape(d.d_a, d.d_b, d.d_e)
    if keep == "A":
        rho = np.einsum("abe,cbe->ac", t, t.conj())
        dim = d.d_a
    elif keep == "B":
        rho = np.einsum("abe,ace->bc", t, t.conj())
        dim = d.d_b
    elif keep == "AB":
        dim = d.d_a * d.d_b
        rho = np.einsum("abe,cde->abcd", t, t.conj()).reshape(dim, dim)
    else:
        raise DomainError(f"keep must be 'A', 'B' or 'AB', got {keep!r}")
    return DensityMatrix(matrix=rho, dim=dim)


def _entropy_from_weights(weights: np.ndarray, what: str) -> np.ndarray:
    """Shannon entropy along the last axis with the eigenvalue policy:
    weights below -1e-10 are an error, tiny/negative ones contribute 0."""
    if np.any(weights < _EIG_NEG_LIMIT):
        raise NumericalValidityError(
            f"{what} produced a weight below {_EIG_NEG_LIMIT:g}: "
            f"{float(weights.min()):.3e}"
        )
    safe = np.maximum(weights, _EIG_FLOOR)
    contrib = np.where(weights > _EIG_FLOOR, -safe * np.log(safe), 0.0)
    return np.sum(contrib, axis=-1)


def _as_matrix(rho: DensityMatrix | np.ndarray) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)


def von_neumann_entropy(rho: DensityMatrix | np.ndarray) -> float:
    """``-Tr rho ln rho`` from the eigenvalues of a Hermitian matrix."""
    eigenvalues = np.linalg.eigvalsh(_as_matrix(rho))
    return float(_entropy_from_weights(eigenvalues, "eigendecomposition"))


def diagonal_entropy(rho: DensityMatrix | np.ndarray) -> float:
    """Shannon entropy of the diagonal of a density matrix in the
    computational basis."""
    diag = np.diagonal(_as_matrix(rho)).real.copy()
    return float(_entropy_from_weights(diag, "diagonal"))


def mutual_info_sample(dims: Dimensions, seed: int, index: int) -> float:
    """``S_A + S_B - S_AB`` for one reproducible sample."""
    state = sample_state(dims, seed, index)
    return (
        von_neumann_entropy(reduce_state(state, "A"))
        + von_neumann_entropy(reduce_state(state, "B"))
        - von_neumann_entropy(reduce_state(state, "AB"))
    )


def gell_mann_basis(m: int) -> GellMannBasis:
    """The ``m^2 - 1`` generalised Gell-Mann matrices for su(m)."""
    if not isinstance(m, int) or isinstance(m, bool) or m < 2:
        raise DomainError(f"generator basis needs an int m >= 2, got {m!r}")
    matrices = np.zeros((m * m - 1, m, m), dtype=np.complex128)
    flags = np.zeros(m * m - 1, dtype=bool)
    idx = 0
    for i in range(m):
        for j in range(i + 1, m):
            matrices[idx, i, j] = 1.0
            matrices[idx, j, i] = 1.0
            idx += 1
            matrices[idx, i, j] = -1.0j
            matrices[idx, j, i] = 1.0j
            idx += 1
    for level in range(1, m):
        scale = math.sqrt(2.0 / (level * (level + 1)))
        for i in range(level):
            matrices[idx, i, i] = scale
        matrices[idx, level, level] = -level * scale
        flags[idx] = True
        idx += 1
    return GellMannBasis(matrices=matrices, is_cartan=flags)


def _chunk_ranges(n_samples: int) -> list[tuple[int, int]]:
    return [
        (start, min(start + CHUNK_SIZE, n_samples))
        for start in range(0, n_samples, CHUNK_SIZE)
    ]


def _run_chunks(worklist, workers: int) -> None:
    """Execute chunk closures, serially or on a thread pool."""
    if workers <= 1:
        for work in worklist:
            work()
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(work) for work in worklist]
        for future in futures:
            try:
                future.result()
            except Exception as exc:
                raise OracleWorkerError(
                    f"a Monte Carlo worker failed ({exc!r}); partial "
                    f"results discarded"
                ) from exc


def _mean_stderr(values: np.ndarray) -> tuple[float, float]:
    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / math.sqrt(values.size))
    return mean, stderr


def run_oracle(
    dims: Dimensions, n_samples: int, seed: int, workers: int = 1
) -> HaarSampleStats:
    """Sample statistics of S_A, S_B, S_AB, I, purity, diagonal moments and
    Bloch sector variances over ``n_samples`` Haar-random states."""
    _check_seed(seed)
    _check_cap(dims)
    if not isinstance(n_samples, int) or isinstance(n_samples, bool) or n_samples < 2:
        raise DomainError(
            f"n_samples must be an int >= 2 for standard errors, got {n_samples!r}"
        )
    d_a, d_b = dims.d_a, dims.d_b
    basis = gell_mann_basis(d_a) if d_a >= 2 else None

    entropy_a = np.empty(n_samples)
    entropy_b = np.empty(n_samples)
    entropy_ab = np.empty(n_samples)
    purity_a = np.empty(n_samples)
    diag_entropy_a = np.empty(n_samples)
    diag_second_a = np.empty(n_samples)
    cartan_sq = np.empty(n_samples) if basis is not None else None
    offdiag_sq = np.empty(n_samples) if basis is not None else None

    def make_work(start: int, stop: int):
        def work() -> None:
            block = _sample_block(dims, seed, start, stop - start)
            t = block.reshape(-1, d_a, d_b, dims.d_e)
            rho_a = np.einsum("zabe,zcbe->zac", t, t.conj())
            rho_b = np.einsum("zabe,zace->zbc", t, t.conj())
            rho_ab = np.einsum("zabe,zcde->zabcd", t, t.conj()).reshape(
                -1, d_a * d_b, d_a * d_b
            )
            entropy_a[start:stop] = _entropy_from_weights(
                np.linalg.eigvalsh(rho_a), "eigendecomposition of A"
            )
            entropy_b[start:stop] = _entropy_from_weights(
                np.linalg.eigvalsh(rho_b), "eigendecomposition of B"
            )
            entropy_ab[start:stop] = _entropy_from_weights(
                np.linalg.eigvalsh(rho_ab), "eigendecomposition of AB"
            )
            purity_a[start:stop] = np.einsum("zij,zji->z", rho_a, rho_a).real
            diag = np.diagonal(rho_a, axis1=1, axis2=2).real
            diag_entropy_a[start:stop] = _entropy_from_weights(diag, "diagonal of A")
            diag_second_a[start:stop] = np.sum(diag * diag, axis=-1)
            if basis is not None:
                bloch = np.einsum("gij,zji->zg", basis.matrices, rho_a).real
                squares = bloch * bloch
                cartan_sq[start:stop] = np.mean(squares[:, basis.is_cartan], axis=1)
                offdiag_sq[start:stop] = np.mean(squares[:, ~basis.is_cartan], axis=1)

        return work

    _run_chunks([make_work(a, b) for a, b in _chunk_ranges(n_samples)], workers)

    mutual_information = entropy_a + entropy_b - entropy_ab
    mean_sa, se_sa = _mean_stderr(entropy_a)
    mean_sb, se_sb = _mean_stderr(entropy_b)
    mean_sab, se_sab = _mean_stderr(entropy_ab)
    mean_i, se_i = _mean_stderr(mutual_information)
    mean_pur, se_pur = _mean_stderr(purity_a)
    mean_de, se_de = _mean_stderr(diag_entropy_a)
    mean_d2, se_d2 = _mean_stderr(diag_second_a)
    if basis is not None:
        cartan_var, se_cartan = _mean_stderr(cartan_sq)
        offdiag_var, se_offdiag = _mean_stderr(offdiag_sq)
    else:
        cartan_var = se_cartan = offdiag_var = se_offdiag = None

    return HaarSampleStats(
        dims=dims,
        n_samples=n_samples,
        seed=seed,
        rng=RNG_IDENTITY,
        mean_entropy_a=mean_sa,
        stderr_entropy_a=se_sa,
        mean_entropy_b=mean_sb,
        stderr_entropy_b=se_sb,
        mean_entropy_ab=mean_sab,
        stderr_entropy_ab=se_sab,
        mean_mutual_information=mean_i,
        stderr_mutual_information=se_i,
        mean_purity_a=mean_pur,
        stderr_purity_a=se_pur,
        mean_diagonal_entropy_a=mean_de,
        stderr_diagonal_entropy_a=se_de,
        mean_diagonal_second_moment_a=mean_d2,
        stderr_diagonal_second_moment_a=se_d2,
        cartan_var=cartan_var,
        stderr_cartan_var=se_cartan,
        offdiag_var=offdiag_var,
        stderr_offdiag_var=se_offdiag,
    )


def bloch_variances(
    m: int, n: int, n_samples: int, seed: int, workers: int = 1
) -> BlochVarianceStats:
    """Generator-resolved Bloch statistics of the m-level reduced state of
    a Haar-random pure state on ``m x n``."""
    basis = gell_mann_basis(m)
    dims = Dimensions(m, n, 1)
    _check_seed(seed)
    _check_cap(dims)
    if not isinstance(n_samples, int) or isinstance(n_samples, bool) or n_samples < 2:
        raise DomainError(
            f"n_samples must be an int >= 2 for standard errors, got {n_samples!r}"
        )

    components = np.empty((n_samples, basis.count))

    def make_work(start: int, stop: int):
        def work() -> None:
            block = _sample_block(dims, seed, start, stop - start)
            t = block.reshape(-1, m, n)
            rho = np.einsum("zae,zce->zac", t, t.conj())
            components[start:stop] = np.einsum(
                "gij,zji->zg", basis.matrices, rho
            ).real

        return work

    _run_chunks([make_work(a, b) for a, b in _chunk_ranges(n_samples)], workers)

    squares = components * components
    gen_mean = np.mean(components, axis=0)
    gen_stderr = np.std(components, axis=0, ddof=1) / math.sqrt(n_samples)
    gen_second = np.mean(squares, axis=0)
    gen_second_stderr = np.std(squares, axis=0, ddof=1) / math.sqrt(n_samples)
    cartan_var, se_cartan = _mean_stderr(np.mean(squares[:, basis.is_cartan], axis=1))
    offdiag_var, se_offdiag = _mean_stderr(
        np.mean(squares[:, ~basis.is_cartan], axis=1)
    )

    return BlochVarianceStats(
        m=m,
        n=n,
        n_samples=n_samples,
        seed=seed,
        rng=RNG_IDENTITY,
        generator_mean=gen_mean,
        generator_stderr=gen_stderr,
        generator_second_moment=gen_second,
        generator_second_moment_stderr=gen_second_stderr,
        is_cartan=basis.is_cartan.copy(),
        cartan_var=cartan_var,
        stderr_cartan_var=se_cartan,
        offdiag_var=offdiag_var,
        stderr_offdiag_var=se_offdiag,
    )
