"""Bipartite structure of depolarized pure states.

Everything here exploits one fact: depolarization commutes with the
Schmidt decomposition of the underlying pure state, so marginals,
partial-transpose spectra and negativity of a DPS are closed-form
functions of (p, Schmidt coefficients, dA, dB).  Each closed form is
cross-checked against dense partial-trace / partial-transpose oracles
in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import SuBasis, dps_test
from .errors import (
    DimensionMismatchError,
    DomainError,
    AmbiguousAtPZeroError,
    InternalCheckError,
    InvalidDimensionError,
    InvalidSchmidtVectorError,
    FOutOfRangeError,
    NonUnitVectorError,
    NotDPSError,
    PolarizationOutOfRangeError,
    SubsystemOrderError,
)
from .linalg import DensityMatrix, eig_hermitian
from .metrics import DpsState, make_dps, p_min

NEG_TOL = 1e-9
SCHMIDT_SUM_TOL = 1e-10

PPT_CAVEAT = (
    "entangled=False means no negative partial-transpose eigenvalue was found; "
    "the PPT criterion is sufficient but not necessary for entanglement in general"
)


@dataclass(frozen=True)
class SchmidtForm:
    """Local unitaries and coefficients diagonalizing a bipartite pure state.

    (U (x) V)|psi> = sum_j b_j |j>_A |j>_B with b descending and
    nonnegative.  Under degenerate coefficients U and V are canonical
    only up to rotations inside the degenerate block; compare b and
    reconstructed states, never U, V entrywise.
    """

    dA: int
    dB: int
    b: np.ndarray
    U: np.ndarray
    V: np.ndarray


@dataclass(frozen=True)
class EntanglementReport:
    """Partial-transpose spectrum summary for one DPS."""

    pt_spectrum: np.ndarray
    negativity: float
    negative_count: int
    bound: int
    entangled: bool
    caveat: str = PPT_CAVEAT


def _check_bipartite_dims(dA: int, dB: int) -> None:
    if dA < 2 or dB < 2:
        raise InvalidDimensionError(f"subsystem dims must be >= 2, got ({dA}, {dB})")
    if dA > dB:
        raise SubsystemOrderError(f"requires dA <= dB, got ({dA}, {dB}); swap the subsystems")


def schmidt_pure(psi, dA: int, dB: int) -> SchmidtForm:
    """Schmidt decomposition of a bipartite pure state.

    Singular value decomposition of the dA x dB coefficient matrix
    a[i, mu] = <i, mu|psi>; the phases land in V so every b_j is real
    and nonnegative.

    Raises:
        DimensionMismatchError: length(psi) != dA*dB.
        SubsystemOrderError: dA > dB.
        NonUnitVectorError.
    """
    _check_bipartite_dims(dA, dB)
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if v.shape[0] != dA * dB:
        raise DimensionMismatchError(f"state length {v.shape[0]} != dA*dB = {dA * dB}")
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > 1e-12:
        raise NonUnitVectorError(f"norm {nrm:.15g} differs from 1 beyond 1e-12")
    A = v.reshape(dA, dB)
    u, s, vh = np.linalg.svd(A, full_matrices=True)
    U = u.conj().T
    V = vh.conj()
    b = s.copy()
    for arr in (b, U, V):
        arr.setflags(write=False)
    return SchmidtForm(dA=dA, dB=dB, b=b, U=U, V=V)


def schmidt_dps(
    rho_d: DensityMatrix, dA: int, dB: int, basis: SuBasis, p_tol: float = 1e-8
) -> tuple[float, SchmidtForm]:
    """Recover (p, Schmidt form) of a DPS from its density matrix.

    For p != 0 the purification is the eigenvector of the single
    non-degenerate eigenvalue: the maximum for p > 0, the minimum for
    p < 0.

    Raises:
        NotDPSError: input fails the DPS membership test.
        AmbiguousAtPZeroError: |p| < p_tol, where every purification is
            consistent with the maximally mixed state.
        DimensionMismatchError.
    """
    _check_bipartite_dims(dA, dB)
    if rho_d.dim != dA * dB:
        raise DimensionMismatchError(f"state dim {rho_d.dim} != dA*dB = {dA * dB}")
    p = dps_test(rho_d, basis)
    if p is None:
        raise NotDPSError("input is not a depolarized pure state within tolerance")
    if abs(p) < p_tol:
        raise AmbiguousAtPZeroError(f"|p| = {abs(p):.3e} < {p_tol:.1e}: purification not unique")
    spec = eig_hermitian(rho_d.matrix)
    column = -1 if p > 0 else 0
    psi = spec.eigenvectors[:, column]
    psi = psi / np.linalg.norm(psi)
    return p, schmidt_pure(psi, dA, dB)


def _check_schmidt_vector(b, n_slots: int, n_nonzero: int | None = None) -> np.ndarray:
    vec = np.asarray(b, dtype=float).reshape(-1)
    if vec.size > n_slots:
        raise InvalidSchmidtVectorError(f"{vec.size} Schmidt coefficients exceed {n_slots} slots")
    if np.any(vec < -1e-12):
        raise InvalidSchmidtVectorError("Schmidt coefficients must be nonnegative")
    total = float(np.sum(vec * vec))
    if abs(total - 1.0) > SCHMIDT_SUM_TOL:
        raise InvalidSchmidtVectorError(f"sum of b^2 is {total:.15g}, not 1")
    if n_nonzero is not None:
        if n_nonzero > vec.size or float(np.max(np.abs(vec[n_nonzero:]), initial=0.0)) > 1e-12:
            raise InvalidSchmidtVectorError(
                f"n_nonzero={n_nonzero} inconsistent with coefficient list of size {vec.size}"
            )
    out = np.zeros(n_slots)
    out[: vec.size] = np.clip(vec, 0.0, None)
    return out


def reduced_spectrum_dps(p: float, b, dX: int, n_nonzero: int | None = None) -> np.ndarray:
    """Closed-form marginal spectrum of a DPS, ascending.

    {(1-p)/dX + p b_j^2} over the Schmidt slots plus (dX - n) copies of
    the flat value (1-p)/dX.

    Raises:
        InvalidSchmidtVectorError.
    """
    if n_nonzero is None:
        n_nonzero = int(np.sum(np.asarray(b, dtype=float) > 1e-12))
    vec = _check_schmidt_vector(b, dX, n_nonzero)
    flat = (1.0 - p) / dX
    vals = np.full(dX, flat)
    vals[:n_nonzero] += p * vec[:n_nonzero] ** 2
    return np.sort(vals)


@dataclass(frozen=True)
class ConsistencyResult:
    """Outcome of the marginal consistency check."""

    verdict: str
    reason: str
    p: float | None = None
    b: np.ndarray | None = None

    @property
    def consistent(self) -> bool:
        return self.verdict == "CONSISTENT"


def _rejected(reason: str) -> ConsistencyResult:
    return ConsistencyResult(verdict="REJECTED", reason=reason)


def consistency_check(
    rhoA: DensityMatrix, rhoB: DensityMatrix, tol: float = 1e-8
) -> ConsistencyResult:
    """Could these two marginals have come from one DPS?

    Necessary-condition screen: full rank on both sides, a (dB - dA)-fold
    degenerate cluster in rhoB whenever dB >= dA + 2, and a common
    (p, {b_j}) explaining both spectra through the closed marginal
    formula.  CONSISTENT is explicitly not a proof of DPS form; the
    global state is not reconstructible from marginals alone.

    Raises:
        SubsystemOrderError: dA > dB.
    """
    dA, dB = rhoA.dim, rhoB.dim
    _check_bipartite_dims(dA, dB)
    specA = np.linalg.eigvalsh(rhoA.matrix)
    specB = np.linalg.eigvalsh(rhoB.matrix)

    if float(specA[0]) < 1e-10:
        return _rejected(f"rho_A rank-deficient: smallest eigenvalue {specA[0]:.3e}")
    if float(specB[0]) < 1e-10:
        return _rejected(f"rho_B rank-deficient: smallest eigenvalue {specB[0]:.3e}")

    if dB >= dA + 2:
        need = dB - dA
        best = run = 1
        for k in range(1, dB):
            run = run + 1 if specB[k] - specB[k - 1] < tol else 1
            best = max(best, run)
        if best < need:
            return _rejected(
                f"rho_B has no {need}-fold degenerate eigenspace (largest cluster {best})"
            )

    D = dA * dB
    candidates = [1.0]
    candidates += [1.0 - dB * float(mu) for mu in specB]
    candidates += [1.0 - dA * float(nu) for nu in specA]
    seen: list[float] = []
    for p in candidates:
        if p < p_min(D) - 1e-6 or p > 1.0 + 1e-6:
            continue
        if any(abs(p - q) < 1e-10 for q in seen):
            continue
        seen.append(p)
        if abs(p) < tol:
            if np.max(np.abs(specA - 1.0 / dA)) < tol and np.max(np.abs(specB - 1.0 / dB)) < tol:
                return ConsistencyResult(
                    verdict="CONSISTENT",
                    reason="both marginals maximally mixed (p = 0)",
                    p=0.0,
                    b=None,
                )
            continue
        b_sq = (specA - (1.0 - p) / dA) / p
        if float(np.min(b_sq)) < -tol:
            continue
        b_sq = np.clip(b_sq, 0.0, None)
        if abs(float(np.sum(b_sq)) - 1.0) > 10 * tol:
            continue
        predB = np.sort(
            np.concatenate([(1.0 - p) / dB + p * b_sq, np.full(dB - dA, (1.0 - p) / dB)])
        )
        if float(np.max(np.abs(predB - specB))) < 10 * tol:
            b = np.sort(np.sqrt(b_sq))[::-1].copy()
            b.setflags(write=False)
            return ConsistencyResult(
                verdict="CONSISTENT",
                reason="a common (p, Schmidt vector) reproduces both spectra",
                p=float(p),
                b=b,
            )
    return _rejected("no polarization and Schmidt vector explain both spectra")


def pt_spectrum_closed(p: float, b, dA: int, dB: int) -> np.ndarray:
    """Closed-form partial-transpose spectrum of a DPS, ascending.

    With flat = (1-p)/D: {flat + p b_j^2}_j, {flat +- p b_j b_j'}_{j<j'}
    and D - dA^2 copies of flat.

    Raises:
        InvalidSchmidtVectorError.
        SubsystemOrderError.
    """
    _check_bipartite_dims(dA, dB)
    vec = _check_schmidt_vector(b, dA)
    D = dA * dB
    flat = (1.0 - p) / D
    vals = [flat + p * bj * bj for bj in vec]
    for j in range(dA):
        for k in range(j + 1, dA):
            cross = p * vec[j] * vec[k]
            vals.append(flat + cross)
            vals.append(flat - cross)
    vals.extend([flat] * (D - dA * dA))
    return np.sort(np.array(vals))


def negativity(p: float, b, dA: int, dB: int, neg_tol: float = NEG_TOL) -> EntanglementReport:
    """Negativity (sum|lambda| - 1)/(dA - 1) from the closed PT spectrum.

    Eigenvalues in (-neg_tol, 0) count as zero so boundary cases do not
    flip classification under roundoff; when nothing is below the
    threshold the negativity is exactly 0.0.  The verdict is one-sided:
    see the caveat field.

    Raises:
        InvalidSchmidtVectorError.
    """
    spectrum = pt_spectrum_closed(p, b, dA, dB)
    count = int(np.sum(spectrum < -neg_tol))
    bound = dA * (dA - 1) // 2
    if count > bound:
        raise InternalCheckError(
            f"{count} negative PT eigenvalues exceed the pair bound {bound} for dA={dA}"
        )
    if count == 0:
        neg = 0.0
    else:
        neg = float((np.sum(np.abs(spectrum)) - 1.0) / (dA - 1))
    return EntanglementReport(
        pt_spectrum=spectrum,
        negativity=neg,
        negative_count=count,
        bound=bound,
        entangled=count > 0,
    )


def pair_threshold(b, dA: int, dB: int) -> float:
    """Polarization above which the PT first goes negative.

    1/(D max_{j<j'} b_j b_j' + 1); infinity when at most one coefficient
    is nonzero (product direction, never entangled).
    """
    vec = _check_schmidt_vector(b, dA)
    sorted_desc = np.sort(vec)[::-1]
    top = float(sorted_desc[0] * sorted_desc[1]) if dA >= 2 else 0.0
    if top <= 0.0:
        return math.inf
    return 1.0 / (dA * dB * top + 1.0)


def two_qubit_canonical(p: float, omega: float) -> tuple[DensityMatrix, tuple[float, float, float, float]]:
    """Two-qubit DPS canonical family and its partial-transpose eigenvalues.

    The state is the DPS over cos(omega/2)|00> + sin(omega/2)|11>,
    written in its Pauli canonical form.  The returned mu_1..mu_4 are
    the PT eigenvalues; mu_4 = (1-p)/4 - (p/2) sin(omega) is the only
    one that can go negative, and does so exactly when p > 1/3 and
    sin(omega) > (1-p)/(2p).

    Raises:
        PolarizationOutOfRangeError: p outside [-1/3, 1].
        DomainError: omega outside [0, pi/2].
    """
    if p < -1.0 / 3.0 - 1e-12 or p > 1.0 + 1e-12:
        raise PolarizationOutOfRangeError(f"p={p:.15g} outside [-1/3, 1]")
    if omega < -1e-12 or omega > math.pi / 2.0 + 1e-12:
        raise DomainError(f"omega={omega:.15g} outside [0, pi/2]")
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    sy = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
    sz = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    eye = np.eye(2, dtype=complex)
    co, si = math.cos(omega), math.sin(omega)
    M = (
        np.kron(eye, eye)
        + p * co * np.kron(sz, eye)
        + p * co * np.kron(eye, sz)
        + p * si * np.kron(sx, sx)
        - p * si * np.kron(sy, sy)
        + p * np.kron(sz, sz)
    ) / 4.0
    mu = (
        (1.0 + p) / 4.0 + (p / 2.0) * co,
        (1.0 + p) / 4.0 - (p / 2.0) * co,
        (1.0 - p) / 4.0 + (p / 2.0) * si,
        (1.0 - p) / 4.0 - (p / 2.0) * si,
    )
    return DensityMatrix(M), mu


def isotropic(dA: int, F: float) -> tuple[DpsState, bool]:
    """Isotropic state as a DPS over the maximally entangled state.

    p = (dA^2 F - 1)/(dA^2 - 1); separable exactly when F <= 1/dA,
    equivalently p <= 1/(dA + 1).  There are no bound entangled
    isotropic states, so the PPT verdict is two-sided here.

    Raises:
        FOutOfRangeError: F outside [0, 1].
        InvalidDimensionError: dA < 2.
    """
    if dA < 2:
        raise InvalidDimensionError(f"isotropic states need dA >= 2, got {dA}")
    if F < -1e-12 or F > 1.0 + 1e-12:
        raise FOutOfRangeError(f"F={F:.15g} outside [0, 1]")
    F = min(max(F, 0.0), 1.0)
    phi = np.zeros(dA * dA, dtype=complex)
    for j in range(dA):
        phi[j * dA + j] = 1.0 / math.sqrt(dA)
    p = (dA * dA * F - 1.0) / (dA * dA - 1.0)
    return make_dps(phi, p), F <= 1.0 / dA + 1e-12
