"""Trace moments Tr(rho^m) three ways, and what they reveal about a DPS.

The permutation route evaluates Tr(S_sigma rho^(x m)) by contracting
matrix elements along the permutation's cycle, never through an
eigendecomposition, so it is an independent check on the direct route.
The Monte-Carlo route simulates the interferometric swap test at the
probability level: one ancilla measurement is a Bernoulli draw with
success probability (1 + Tr rho^m)/2.

For a DPS the first two nontrivial moments determine the polarization:
|p| from t2, the sign from whether t3 matches the spectrum prediction
(possible only for D > 2, where +-p give different spectra).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from string import ascii_lowercase

import numpy as np

from .errors import (
    DimensionTooLargeError,
    DomainError,
    InconsistentMomentsError,
    IndeterminateSignCountError,
    NonHermitianError,
    NonSquareError,
)
from .linalg import DensityMatrix
from .metrics import p_min

CONTRACT_GUARD = 4096
OPERATOR_GUARD = 1024


@dataclass(frozen=True)
class MomentEstimate:
    """One estimate of Tr(rho^m); shots and std_error are 0 when exact."""

    m: int
    value: float
    method: str
    shots: int = 0
    std_error: float = 0.0


def moment_exact(rho: DensityMatrix, m: int) -> MomentEstimate:
    """Sum of lambda_i^m via the dense eigensolver."""
    if m < 1:
        raise DomainError(f"moment order must be >= 1, got {m}")
    vals = np.linalg.eigvalsh(rho.matrix)
    return MomentEstimate(m=m, value=float(np.sum(vals**m)), method="exact")


def _cycle_of(perm: tuple[int, ...]) -> None:
    """Reject permutations with an invariant subspace (more than one cycle)."""
    m = len(perm)
    if sorted(perm) != list(range(m)):
        raise DomainError(f"{perm!r} is not a permutation of 0..{m - 1}")
    seen, t = 1, perm[0]
    while t != 0:
        t = perm[t]
        seen += 1
        if seen > m:
            break
    if seen != m:
        raise DomainError(
            f"permutation {perm!r} splits into several cycles; the contraction then "
            "yields a product of lower moments, not Tr(rho^m)"
        )


def moment_permutation(
    rho: DensityMatrix, m: int, permutation: tuple[int, ...] | None = None
) -> MomentEstimate:
    """Tr(S_sigma rho^(x m)) for a single-cycle permutation sigma.

    Defaults to the cyclic shift sigma(t) = t + 1 mod m.  Any single
    m-cycle gives the same value; a permutation with an invariant
    subspace does not and is rejected.

    Raises:
        DimensionTooLargeError: D^m > 4096.
        DomainError: m not in {2, 3}, or a multi-cycle permutation.
    """
    if m not in (2, 3):
        raise DomainError(f"permutation evaluation is provided for m in {{2, 3}}, got {m}")
    D = rho.dim
    if D**m > CONTRACT_GUARD:
        raise DimensionTooLargeError(f"D^m = {D**m} exceeds the {CONTRACT_GUARD} guard")
    if permutation is None:
        permutation = tuple((t + 1) % m for t in range(m))
    else:
        permutation = tuple(int(t) for t in permutation)
        _cycle_of(permutation)
    letters = ascii_lowercase[:m]
    spec = ",".join(letters[permutation[t]] + letters[t] for t in range(m))
    value = np.einsum(spec, *([rho.matrix] * m))
    return MomentEstimate(m=m, value=float(np.real(value)), method="permutation")


def permutation_operator(D: int, permutation: tuple[int, ...]) -> np.ndarray:
    """Dense S_sigma on the m-fold tensor power, for cross-checks.

    Satisfies Tr(S_sigma rho^(x m)) = the contraction used by
    moment_permutation.

    Raises:
        DimensionTooLargeError: D^m > 1024.
    """
    m = len(permutation)
    if D**m > OPERATOR_GUARD:
        raise DimensionTooLargeError(f"D^m = {D**m} exceeds the {OPERATOR_GUARD} guard")
    n = D**m
    S = np.zeros((n, n))
    digits = np.empty(m, dtype=int)
    for J in range(n):
        rest = J
        for t in range(m - 1, -1, -1):
            digits[t] = rest % D
            rest //= D
        K = 0
        for t in range(m):
            K = K * D + digits[permutation[t]]
        S[J, K] = 1.0
    return S


def moment_montecarlo(rho: DensityMatrix, m: int, shots: int, seed: int) -> MomentEstimate:
    """Swap-test statistics for Tr(rho^m), simulated at the probability level.

    Draws `shots` Bernoulli outcomes with success probability
    (1 + t)/2 where t is the true moment, and returns
    2 (fraction of +) - 1 with std_error = sqrt((1 - t^2)/shots).  The
    true t is available here by construction (validation mode); on
    measured data one would plug the estimate into the same expression.

    Raises:
        DomainError: shots < 1.
    """
    if shots < 1:
        raise DomainError(f"shots must be >= 1, got {shots}")
    t = moment_exact(rho, m).value
    p_plus = min(max((1.0 + t) / 2.0, 0.0), 1.0)
    rng = np.random.default_rng(seed)
    hits = int(rng.binomial(shots, p_plus))
    est = 2.0 * hits / shots - 1.0
    err = math.sqrt(max(1.0 - t * t, 0.0) / shots)
    return MomentEstimate(m=m, value=est, method="montecarlo", shots=shots, std_error=err)


def dps_moment(D: int, p: float, m: int) -> float:
    """Forward moment of the DPS spectrum: (D-1)((1-p)/D)^m + ((1-p)/D + p)^m."""
    flat = (1.0 - p) / D
    return (D - 1) * flat**m + (flat + p) ** m


def dps_p_from_moments(t2: float, t3: float, D: int, tol: float = 1e-8) -> tuple[float, bool]:
    """Recover the DPS polarization from its second and third moments.

    |p| = sqrt((D t2 - 1)/(D - 1)); the sign is the one whose spectrum
    prediction reproduces t3 within tol.  At D = 2 the two signs share a
    spectrum, so the magnitude is returned with sign_resolved = False.

    Raises:
        InconsistentMomentsError: no p in [-1/(D-1), 1] fits both moments.
    """
    num = (D * t2 - 1.0) / (D - 1.0)
    if num < -tol or num > 1.0 + tol:
        raise InconsistentMomentsError(f"t2={t2:.15g} implies p^2 = {num:.15g} outside [0, 1]")
    p_abs = math.sqrt(min(max(num, 0.0), 1.0))
    if D == 2:
        if abs(dps_moment(D, p_abs, 3) - t3) > tol:
            raise InconsistentMomentsError(
                f"t3={t3:.15g} does not match the spectrum prediction for |p|={p_abs:.15g}"
            )
        return p_abs, False
    fits = [
        p
        for p in (p_abs, -p_abs)
        if p >= p_min(D) - tol and abs(dps_moment(D, p, 3) - t3) <= tol
    ]
    if not fits:
        raise InconsistentMomentsError(
            f"no sign of |p|={p_abs:.15g} reproduces t3={t3:.15g} within {tol:.1e}"
        )
    return fits[0], True


def count_positive_charpoly(M) -> int:
    """Positive-eigenvalue count from characteristic-polynomial signs.

    Faddeev-LeVerrier builds the coefficients of det(x 1 - M); for a
    real-rooted polynomial the number of Descartes sign changes (zero
    coefficients skipped) equals the number of positive roots, with no
    eigensolve involved.

    Raises:
        NonHermitianError, NonSquareError.
        IndeterminateSignCountError: an eigenvalue sits at zero within
            roundoff (the constant coefficient vanishes), so the count
            is ill-defined at tolerance 1e-10.
    """
    A = M.matrix if isinstance(M, DensityMatrix) else np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSquareError(f"expected a square matrix, got shape {A.shape}")
    if float(np.max(np.abs(A - A.conj().T))) > 1e-10:
        raise NonHermitianError("charpoly sign counting needs a Hermitian matrix")
    n = A.shape[0]
    coeffs = [1.0]
    work = np.zeros_like(A)
    eye = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        work = A @ (work + coeffs[-1] * eye) if k > 1 else A.copy()
        coeffs.append(float(-np.trace(work).real / k))
    scale = max(abs(c) for c in coeffs[:-1])
    if abs(coeffs[-1]) <= 1e-10 * scale:
        raise IndeterminateSignCountError(
            "constant coefficient vanishes within tolerance: an eigenvalue is zero "
            "at working precision and cannot be counted as positive or not"
        )
    signs = [c for c in coeffs if abs(c) > 1e-12 * scale]
    changes = 0
    for prev, cur in zip(signs, signs[1:]):
        if prev * cur < 0:
            changes += 1
    return changes
