"""Generalized Gell-Mann basis for su(D) and coherence-vector algebra.

A density matrix is expanded as ``rho = (1/D)(1 + c_D n.lambda)`` with
``c_D = sqrt(D(D-1)/2)``; the real vector ``n`` of length D^2-1 is the
coherence vector.  The symmetric structure tensor d gives the star
product, whose fixed points are exactly the pure-state vectors, and a
depolarized pure state is characterized by ``n.n = p^2`` together with
``n*n = p n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidDimensionError,
    UndefinedForDim2Error,
)
from .linalg import DensityMatrix

SPARSE_CUTOFF = 1e-12
STAR_TOL = 1e-8
SPECTRUM_TOL = 1e-8


def c_norm(D: int) -> float:
    """The expansion constant c_D = sqrt(D(D-1)/2)."""
    return math.sqrt(D * (D - 1) / 2.0)


class SuBasis:
    """Orthogonal generator basis of su(D) with its structure tensors.

    Generators satisfy Tr(lambda_i lambda_j) = 2 delta_ij and the product
    formula lambda_i lambda_j = (2/D) delta_ij 1 + (i c_ijk + d_ijk)
    lambda_k.  Ordering: the D(D-1)/2 symmetric pair matrices, then the
    D(D-1)/2 antisymmetric pair matrices, then the D-1 diagonal ones;
    pair blocks run lexicographically in (row, col).

    ``c`` and ``d`` hold the nonzero tensor entries as (i, j, k, value)
    tuples; dense D=8 tensors would waste 63^3 mostly-zero slots.
    Instances are immutable; build them with :func:`generate_basis`.
    """

    __slots__ = ("dim", "generators", "c", "d", "_d_ijk", "_d_val", "_stack")

    def __init__(self, dim, generators, c, d):
        self.dim = dim
        self.generators = generators
        self.c = c
        self.d = d
        stack = np.stack(generators)
        stack.setflags(write=False)
        self._stack = stack
        if d:
            arr = np.array([(i, j, k) for i, j, k, _ in d], dtype=np.intp)
            val = np.array([v for _, _, _, v in d])
        else:
            arr = np.zeros((0, 3), dtype=np.intp)
            val = np.zeros(0)
        self._d_ijk = arr
        self._d_val = val

    @property
    def size(self) -> int:
        return self.dim * self.dim - 1

    def d_contract(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """(sum_ij d_ijk a_i b_j)_k via the sparse entry list."""
        if self._d_val.size == 0:
            return np.zeros(self.size)
        w = self._d_val * a[self._d_ijk[:, 0]] * b[self._d_ijk[:, 1]]
        return np.bincount(self._d_ijk[:, 2], weights=w, minlength=self.size)

    def __repr__(self) -> str:
        return f"SuBasis(dim={self.dim}, generators={self.size})"


@dataclass(frozen=True)
class CoherenceVector:
    """Real expansion vector of a state over an su(D) basis."""

    dim: int
    n: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.n, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "n", v)
        if v.shape != (self.dim * self.dim - 1,):
            raise DimensionMismatchError(
                f"coherence vector for dim {self.dim} needs length {self.dim**2 - 1}, got {v.shape}"
            )

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.n))

    def dot(self, other: "CoherenceVector") -> float:
        return float(self.n @ other.n)


def _sparse_entries(T: np.ndarray) -> list[tuple[int, int, int, float]]:
    idx = np.argwhere(np.abs(T) > SPARSE_CUTOFF)
    return [(int(i), int(j), int(k), float(T[i, j, k])) for i, j, k in idx]


@lru_cache(maxsize=None)
def generate_basis(D: int) -> SuBasis:
    """Build the su(D) generator basis and extract its structure tensors.

    Tensors come from the trace formulas c_ijk = -(i/4)Tr([l_i,l_j]l_k)
    and d_ijk = (1/4)Tr({l_i,l_j}l_k).

    Raises:
        InvalidDimensionError: for D < 2.
    """
    if not isinstance(D, (int, np.integer)) or D < 2:
        raise InvalidDimensionError(f"basis requires integer D >= 2, got {D!r}")
    D = int(D)
    gens: list[np.ndarray] = []
    for j in range(D):
        for k in range(j + 1, D):
            M = np.zeros((D, D), dtype=complex)
            M[j, k] = 1.0
            M[k, j] = 1.0
            gens.append(M)
    for j in range(D):
        for k in range(j + 1, D):
            M = np.zeros((D, D), dtype=complex)
            M[j, k] = -1.0j
            M[k, j] = 1.0j
            gens.append(M)
    for l in range(1, D):
        M = np.zeros((D, D), dtype=complex)
        scale = math.sqrt(2.0 / (l * (l + 1)))
        for j in range(l):
            M[j, j] = scale
        M[l, l] = -l * scale
        gens.append(M)

    G = np.stack(gens)
    pair = np.einsum("iab,jbc->ijac", G, G)
    T = np.einsum("ijab,kba->ijk", pair, G)
    Tt = T.transpose(1, 0, 2)
    c = np.real(-0.25j * (T - Tt))
    d = np.real(0.25 * (T + Tt))
    for g in gens:
        g.setflags(write=False)
    return SuBasis(dim=D, generators=tuple(gens), c=_sparse_entries(c), d=_sparse_entries(d))


def _check_dims(dim: int, basis: SuBasis) -> None:
    if basis.dim != dim:
        raise DimensionMismatchError(f"basis dim {basis.dim} does not match state dim {dim}")


def to_coherence(rho: DensityMatrix, basis: SuBasis) -> CoherenceVector:
    """Extract n_i = sqrt(D/(2(D-1))) Tr(rho lambda_i).

    Raises:
        DimensionMismatchError.
    """
    _check_dims(rho.dim, basis)
    D = basis.dim
    scale = math.sqrt(D / (2.0 * (D - 1)))
    n = scale * np.real(np.einsum("ab,iba->i", rho.matrix, basis._stack))
    return CoherenceVector(dim=D, n=n)


def from_coherence(n: CoherenceVector, basis: SuBasis) -> DensityMatrix:
    """Synthesize rho = (1/D)(1 + c_D n.lambda).

    Hermitian with unit trace by construction; positivity is not
    guaranteed for arbitrary n.

    Raises:
        DimensionMismatchError.
    """
    _check_dims(n.dim, basis)
    D = basis.dim
    M = np.tensordot(n.n, basis._stack, axes=(0, 0))
    rho = (np.eye(D, dtype=complex) + c_norm(D) * M) / D
    return DensityMatrix(rho)


def star(a: CoherenceVector, b: CoherenceVector, basis: SuBasis) -> CoherenceVector:
    """Symmetric star product (a*b)_k = c_D/(D-2) sum d_ijk a_i b_j.

    Pure-state vectors are its fixed points: n*n = n.

    Raises:
        UndefinedForDim2Error: the 1/(D-2) factor is singular at D=2.
        DimensionMismatchError.
    """
    if basis.dim == 2:
        raise UndefinedForDim2Error("the star product carries a 1/(D-2) factor; undefined at D=2")
    _check_dims(a.dim, basis)
    _check_dims(b.dim, basis)
    D = basis.dim
    out = (c_norm(D) / (D - 2)) * basis.d_contract(a.n, b.n)
    return CoherenceVector(dim=D, n=out)


def invariant_ladder(n: CoherenceVector, basis: SuBasis, r_max: int) -> list[float]:
    """Unitary invariants ([n*]^r n).n for r = 0..r_max.

    For a depolarized pure state with polarization p the r-th entry is
    p^(r+2), so the first two already pin down |p| and its sign.

    Raises:
        UndefinedForDim2Error.
    """
    if basis.dim == 2:
        raise UndefinedForDim2Error("invariant ladder uses the star product; undefined at D=2")
    _check_dims(n.dim, basis)
    out = []
    v = n
    for _ in range(r_max + 1):
        out.append(v.dot(n))
        v = star(n, v, basis)
    return out


def _dps_spectrum(D: int, p: float) -> np.ndarray:
    vals = np.full(D, (1.0 - p) / D)
    vals[-1] += p
    return np.sort(vals)


def dps_test(
    rho: DensityMatrix,
    basis: SuBasis,
    tol: float | None = None,
    *,
    tol_star: float = STAR_TOL,
    tol_spectrum: float = SPECTRUM_TOL,
) -> float | None:
    """Decide whether ``rho`` is a depolarized pure state; return its p.

    Checks, in order: positivity, |p| = sqrt(n.n), the star condition
    n*n = p n (D >= 3, with the sign of p read off n*n.n = p^3), and the
    spectrum pattern {(1-p)/D + p, (1-p)/D x(D-1)}.  Returns None the
    moment any check fails.

    For D = 2 the star product is unavailable and the +-n ambiguity is
    unresolvable (both signs are pure states), so the convention is
    p = ||n|| >= 0.

    Args:
        tol: sets both tolerances at once when given.
    """
    if tol is not None:
        tol_star = tol
        tol_spectrum = tol
    _check_dims(rho.dim, basis)
    D = basis.dim
    if not rho.is_positive(tol_spectrum):
        return None
    n = to_coherence(rho, basis)
    p_abs = n.norm

    if D == 2:
        p = p_abs
    else:
        nn = star(n, n, basis)
        p = p_abs if nn.dot(n) >= 0.0 else -p_abs
        if float(np.linalg.norm(nn.n - p * n.n)) > tol_star:
            return None

    vals = np.linalg.eigvalsh(rho.matrix)
    if float(np.max(np.abs(vals - _dps_spectrum(D, p)))) > tol_spectrum:
        return None
    return p
