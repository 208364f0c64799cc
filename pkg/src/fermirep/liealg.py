"""Matrix generator sets, structure constants, and the conjugation map.

Provides the standard 3x3 Gell-Mann matrices, their d-dimensional
generalization, the spin-1 ladder triple, the quadratic construction of
the Gell-Mann set from spin-1 matrices, structure-constant extraction by
Gram projection, and the signed-antidiagonal conjugation
A' = U (-A*) U+.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import ClosureError, DependenceError

__all__ = [
    "GeneratorSet",
    "StructureConstants",
    "gell_mann",
    "generalized_gell_mann",
    "spin1_matrices",
    "gellmann_from_spin1",
    "structure_constants",
    "conjugation_matrix",
    "conjugate_rep",
]


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    """Ordered list of same-dimension square complex matrices with labels."""

    dim: int
    mats: tuple[np.ndarray, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        mats = tuple(np.array(m, dtype=np.complex128) for m in self.mats)
        for m in mats:
            if m.shape != (self.dim, self.dim):
                raise ValueError(
                    f"generator shape {m.shape} does not match dim {self.dim}"
                )
        if len(self.labels) != len(mats):
            raise ValueError("labels and matrices must have equal length")
        object.__setattr__(self, "mats", mats)
        object.__setattr__(self, "labels", tuple(self.labels))
        gram = _gram(mats)
        if np.linalg.matrix_rank(gram) < len(mats):
            raise DependenceError("generator matrices are linearly dependent")

    @classmethod
    def create(cls, mats: Sequence[np.ndarray], labels: Sequence[str] | None = None):
        mats = [np.asarray(m) for m in mats]
        if not mats:
            raise ValueError("a generator set needs at least one matrix")
        if labels is None:
            labels = [f"g_{k}" for k in range(1, len(mats) + 1)]
        return cls(mats[0].shape[0], tuple(mats), tuple(labels))

    def __len__(self) -> int:
        return len(self.mats)

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.mats)

    def __getitem__(self, k: int) -> np.ndarray:
        return self.mats[k]


@dataclass(frozen=True, eq=False)
class StructureConstants:
    """Coefficient tensor c[i, j, l] with [G_i, G_j] = sum_l c[i, j, l] G_l."""

    size: int
    c: np.ndarray

    def nonzero(self, tol: float = 1e-12):
        """Yield (i, j, l, value) for entries above tol, 1-based indices."""
        for i in range(self.size):
            for j in range(self.size):
                for l in range(self.size):
                    v = self.c[i, j, l]
                    if abs(v) > tol:
                        yield i + 1, j + 1, l + 1, complex(v)

    def max_difference(self, other: "StructureConstants") -> float:
        if other.size != self.size:
            raise ValueError("structure-constant tensors have different sizes")
        return float(np.max(np.abs(self.c - other.c)))


def _gram(mats: Sequence[np.ndarray]) -> np.ndarray:
    stack = np.stack(mats)
    return np.einsum("ayx,byx->ab", stack.conj(), stack)


def gell_mann() -> GeneratorSet:
    """The eight standard 3x3 Gell-Mann matrices, tr(l_a l_b) = 2 delta_ab."""
    return generalized_gell_mann(3, label_prefix="lambda")


def generalized_gell_mann(d: int, label_prefix: str = "g") -> GeneratorSet:
    """The d^2 - 1 traceless Hermitian generators of su(d).

    Ordering follows the standard Gell-Mann convention: for each upper
    index k = 2..d, the symmetric and antisymmetric pair members (j, k)
    for j < k, then the diagonal member supported on the first k entries.
    At d = 3 this reproduces the Gell-Mann matrices exactly; at d = 2 it
    gives the Pauli triple.  All members satisfy tr(G_a G_b) = 2 delta_ab.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    mats: list[np.ndarray] = []
    for k in range(2, d + 1):
        for j in range(1, k):
            sym = np.zeros((d, d), dtype=np.complex128)
            sym[j - 1, k - 1] = 1
            sym[k - 1, j - 1] = 1
            mats.append(sym)
            asym = np.zeros((d, d), dtype=np.complex128)
            asym[j - 1, k - 1] = -1j
            asym[k - 1, j - 1] = 1j
            mats.append(asym)
        l = k - 1
        diag = np.zeros((d, d), dtype=np.complex128)
        for r in range(l):
            diag[r, r] = 1
        diag[l, l] = -l
        mats.append(diag * math.sqrt(2.0 / (l * (l + 1))))
    labels = tuple(f"{label_prefix}_{a}" for a in range(1, d * d))
    return GeneratorSet(d, tuple(mats), labels)


def spin1_matrices() -> GeneratorSet:
    """The spin-1 triple {J_plus, J_minus, J_3} as 3x3 matrices."""
    s = math.sqrt(2.0)
    j_plus = np.array([[0, s, 0], [0, 0, s], [0, 0, 0]], dtype=np.complex128)
    j_minus = j_plus.conj().T
    j3 = np.diag([1.0, 0.0, -1.0]).astype(np.complex128)
    return GeneratorSet(3, (j_plus, j_minus, j3), ("J_plus", "J_minus", "J_3"))


def gellmann_from_spin1() -> GeneratorSet:
    """Rebuild the Gell-Mann matrices from quadratic forms in spin-1 matrices.

    Each output is a fixed bilinear or commutator combination of
    J_plus, J_minus and J_3; the result coincides entrywise with
    gell_mann().
    """
    jp, jm, j3 = spin1_matrices().mats
    s2 = math.sqrt(2.0)
    s3 = math.sqrt(3.0)

    def comm(a, b):
        return a @ b - b @ a

    up = j3 @ jp  # sqrt(2) e12
    dn = jm @ j3  # sqrt(2) e21
    lo = jp @ j3  # -sqrt(2) e23
    lo_t = j3 @ jm  # -sqrt(2) e32

    mats = (
        (s2 / 2) * (up + dn),
        (-1j * s2 / 2) * (up - dn),
        0.5 * comm(up, dn),
        0.5 * (jp @ jp + jm @ jm),
        (-0.5j) * (jp @ jp - jm @ jm),
        (-s2 / 2) * (lo_t + lo),
        # the (2,3) pair and the second diagonal need the products in this
        # order; the reversed order flips the sign of the antisymmetric
        # member and collapses the diagonal one onto the (1,2) diagonal
        (1j * s2 / 2) * (lo - lo_t),
        (1 / (4 * s3)) * comm(jp @ jp, jm @ jm) + (1 / (2 * s3)) * comm(lo, lo_t),
    )
    labels = tuple(f"lambda_{a}" for a in range(1, 9))
    return GeneratorSet(3, mats, labels)


def structure_constants(gens: GeneratorSet, tol: float = 1e-10) -> StructureConstants:
    """Expansion coefficients of all commutators over the generator set.

    Solves [G_i, G_j] = sum_l c[i, j, l] G_l by projecting with the trace
    inner product through the Gram matrix, so non-orthogonal sets are
    handled too.  Raises ClosureError if any commutator has a component
    outside the span (residual >= tol) and DependenceError if the Gram
    matrix is singular.
    """
    k = len(gens)
    stack = np.stack(gens.mats)
    gram = _gram(gens.mats)
    try:
        gram_inv = np.linalg.inv(gram)
    except np.linalg.LinAlgError as exc:
        raise DependenceError("Gram matrix is singular") from exc

    c = np.zeros((k, k, k), dtype=np.complex128)
    worst = 0.0
    for i in range(k):
        # all commutators [G_i, G_j] at once
        comm = np.matmul(stack[i][None, :, :], stack) - np.matmul(stack, stack[i][None, :, :])
        b = np.einsum("ayx,jyx->ja", stack.conj(), comm)
        coeff = b @ gram_inv.T
        recon = np.tensordot(coeff, stack, axes=(1, 0))
        resid = np.max(np.abs(comm - recon), axis=(1, 2))
        worst = max(worst, float(resid.max()))
        if worst >= tol:
            j = int(np.argmax(resid))
            raise ClosureError(
                f"commutator of generators {i + 1} and {j + 1} leaves the span "
                f"(residual {resid[j]:.3e} >= {tol:.1e})"
            )
        c[i] = coeff
    return StructureConstants(k, c)


def conjugation_matrix(n: int) -> np.ndarray:
    """Signed antidiagonal unitary with entries U[m, n+1-m] = (-1)^(m+1)."""
    if n < 2:
        raise ValueError(f"dimension must be at least 2, got {n}")
    u = np.zeros((n, n))
    for i in range(n):
        u[i, n - 1 - i] = 1.0 if i % 2 == 0 else -1.0
    return u


def conjugate_rep(gens: GeneratorSet, n: int | None = None) -> GeneratorSet:
    """Apply A' = U (-A*) U+ to every generator.

    The output satisfies the same commutation relations as the input;
    applying the map twice returns the original set.
    """
    if n is not None and n != gens.dim:
        raise ValueError(f"dimension mismatch: generators are {gens.dim}, got n={n}")
    u = conjugation_matrix(gens.dim)
    mats = tuple(u @ (-m.conj()) @ u.T for m in gens.mats)
    labels = tuple(f"{lbl}_conj" for lbl in gens.labels)
    return GeneratorSet(gens.dim, mats, labels)
