"""Dense complex linear algebra shared by all modules.

States and operators never exceed 8x8 here, so everything is plain dense
numpy. Subsystem index 0 is the leftmost (most significant) tensor factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

HERMITICITY_ATOL = 1e-10
TRACE_ATOL = 1e-10
PSD_ATOL = 1e-10


def _as_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def is_hermitian(m: np.ndarray, atol: float = HERMITICITY_ATOL) -> bool:
    m = _as_square(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= atol)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, unit-trace matrix with subsystem dimension metadata.

    ``dims`` lists the subsystem dimensions left to right; the matrix is
    indexed lexicographically in that order. Instances are immutable
    (the underlying array is marked read-only) and safe to share.
    """

    dims: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"invalid subsystem dimensions {dims}")
        m = _as_square(self.matrix)
        d = int(np.prod(dims))
        if m.shape != (d, d):
            raise ValueError(f"matrix shape {m.shape} does not match dims {dims}")
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("matrix contains non-finite entries")
        if not is_hermitian(m):
            raise ValueError("matrix is not Hermitian within 1e-10")
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace {tr} is not 1 within 1e-10")
        lo = np.linalg.eigvalsh(m)[0]
        if lo < -PSD_ATOL:
            raise ValueError(f"minimum eigenvalue {lo} below -1e-10, not PSD")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DensityMatrix)
            and self.dims == other.dims
            and np.array_equal(self.matrix, other.matrix)
        )


def as_ket(vec: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    """Validate a state vector: finite entries, unit Euclidean norm."""
    v = np.asarray(vec, dtype=complex).ravel()
    if not np.all(np.isfinite(v.view(float))):
        raise ValueError("state vector contains non-finite entries")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > atol:
        raise ValueError(f"state vector norm {norm} is not 1 within {atol}")
    return v


def dm_from_ket(vec: np.ndarray, dims) -> DensityMatrix:
    """Projector |v><v| as a DensityMatrix over the given subsystem dims."""
    v = as_ket(vec)
    return DensityMatrix(tuple(dims), np.outer(v, v.conj()))


def tensor(a: np.ndarray, b: np.ndarray, *rest: np.ndarray) -> np.ndarray:
    """Kronecker product of two or more matrices (index 0 leftmost)."""
    out = np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
    for m in rest:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def _partial_transpose_matrix(m: np.ndarray, dims, subsystem: int) -> np.ndarray:
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    if not 0 <= subsystem < n:
        raise IndexError(f"subsystem {subsystem} out of range for dims {dims}")
    t = _as_square(m).reshape(dims + dims)
    t = t.swapaxes(subsystem, n + subsystem)
    d = int(np.prod(dims))
    return t.reshape(d, d)


def partial_transpose(rho: DensityMatrix, subsystem: int) -> np.ndarray:
    """Transpose the indices of one subsystem only.

    The result is Hermitian with trace 1 but generally not PSD; a negative
    spectrum witnesses entanglement across the cut.
    """
    return _partial_transpose_matrix(rho.matrix, rho.dims, subsystem)


def _partial_trace_matrix(m: np.ndarray, dims, keep) -> np.ndarray:
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if keep[0] < 0 or keep[-1] >= n:
        raise IndexError(f"keep set {keep} out of range for dims {dims}")
    t = _as_square(m).reshape(dims + dims)
    # trace out the complement, highest axis first so indices stay valid
    for s in sorted(set(range(n)) - set(keep), reverse=True):
        t = np.trace(t, axis1=s, axis2=t.ndim // 2 + s)
    d = int(np.prod([dims[k] for k in keep]))
    return t.reshape(d, d)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced density matrix over the kept subsystems (original order)."""
    reduced = _partial_trace_matrix(rho.matrix, rho.dims, keep)
    kept_dims = tuple(rho.dims[k] for k in sorted(set(int(k) for k in keep)))
    # restore exact Hermiticity lost to floating-point roundoff
    reduced = (reduced + reduced.conj().T) / 2
    return DensityMatrix(kept_dims, reduced)


def eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian eigendecomposition, eigenvalues descending.

    Returns (w, V) with m = V diag(w) V^dagger and V unitary.
    """
    m = _as_square(m)
    if not is_hermitian(m):
        raise ValueError("eigh requires a Hermitian matrix (within 1e-10)")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return w[::-1].copy(), v[:, ::-1].copy()


def trace_norm(m: np.ndarray) -> float:
    """Sum of singular values; for Hermitian m this is sum |eigenvalues|."""
    m = _as_square(m)
    if is_hermitian(m):
        return float(np.sum(np.abs(np.linalg.eigvalsh(m))))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """(1/2) ||a - b||_1."""
    return 0.5 * trace_norm(np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex))


def matrix_sqrt_psd(m: np.ndarray, neg_tol: float = 1e-8) -> np.ndarray:
    """Hermitian PSD square root of a Hermitian PSD matrix.

    Eigenvalues in [-neg_tol, 0) are treated as solver noise and clipped to
    zero; anything below -neg_tol raises because the input is genuinely
    not PSD.
    """
    m = _as_square(m)
    if not is_hermitian(m):
        raise ValueError("matrix_sqrt_psd requires a Hermitian matrix")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    if w[0] < -neg_tol:
        raise ValueError(f"matrix is not PSD: eigenvalue {w[0]} < -{neg_tol}")
    w = np.clip(w, 0.0, None)
    # eigenvalues at the noise floor of the spectrum would square-root into
    # O(sqrt(eps)) artifacts; zero them so rank-deficient inputs stay exact
    if w[-1] > 0.0:
        w[w < 1e-14 * w[-1]] = 0.0
    root = (v * np.sqrt(w)) @ v.conj().T
    return (root + root.conj().T) / 2


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density_matrix(dims, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Random state from the Ginibre ensemble (full rank unless given)."""
    dims = tuple(int(d) for d in dims)
    d = int(np.prod(dims))
    k = d if rank is None else int(rank)
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return DensityMatrix(dims, m / m.trace())
