"""Canonical (Kraus-Cirac / KAK) decomposition of two-qubit unitaries.

Any U in U(4) factors as

    U = exp(i*phase) (A (x) B) U_d(alpha) (C (x) D)

where A, B, C, D are single-qubit unitaries and U_d(alpha) =
exp(i sum_j alpha_j sigma_j (x) sigma_j) is the canonical gate.  The triple
alpha, reduced to the Weyl chamber pi/4 >= a1 >= a2 >= |a3| >= 0, is a
complete invariant of local equivalence.

The extraction works in the magic frame, where U_d is diagonal with
eigenphases linear in alpha and local factors are real orthogonal:
m = u~^T u~ is a complex symmetric unitary whose real orthogonal
eigenbasis and half-eigenphases recover alpha and the local factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    MAGIC,
    MAGIC_H,
    SIGMA,
    UnitarityError,
    distance_up_to_phase,
    normalize_special,
    require_unitary,
    tensor_product,
)

__all__ = [
    "DecompositionError",
    "NotAProductError",
    "CanonicalDecomposition",
    "in_weyl_chamber",
    "eigen_phases",
    "canonical_gate",
    "nearest_kronecker_factor",
    "decompose",
    "reconstruct",
]

_HALF_PI = math.pi / 2.0
_QUARTER_PI = math.pi / 4.0

# Acceptance thresholds for the decomposition pipeline.
INPUT_UNITARY_ATOL = 1e-10
RECONSTRUCTION_ATOL = 1e-8
_CLUSTER_TOLS = (1e-10, 1e-8, 1e-6)


class DecompositionError(RuntimeError):
    """Decomposition failed; carries the offending residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class NotAProductError(ValueError):
    """Raised when a matrix is not a tensor product of single-qubit unitaries."""


@dataclass(frozen=True)
class CanonicalDecomposition:
    """Result of :func:`decompose`.

    Attributes:
        weyl: chamber-reduced canonical coordinates (a1, a2, a3), radians.
        pre_local: single-qubit unitaries (V_A, V_B) applied before the
            canonical gate.
        post_local: single-qubit unitaries (U_A, U_B) applied after it.
        global_phase: phase (radians) making the reconstruction exact.
    """

    weyl: np.ndarray
    pre_local: tuple[np.ndarray, np.ndarray]
    post_local: tuple[np.ndarray, np.ndarray]
    global_phase: float


def in_weyl_chamber(alpha, tol: float = 1e-9) -> bool:
    """True if pi/4 >= a1 >= a2 >= |a3| >= 0 holds within ``tol``."""
    a1, a2, a3 = np.asarray(alpha, dtype=float)
    return (
        a1 <= _QUARTER_PI + tol
        and a1 >= a2 - tol
        and a2 >= abs(a3) - tol
    )


def eigen_phases(alpha) -> np.ndarray:
    """Magic-basis eigenphases of the canonical gate with coordinates alpha.

    The canonical gate is diagonal on the magic states with phases

        l1 = -a1 + a2 + a3
        l2 = +a1 - a2 + a3
        l3 = +a1 + a2 - a3
        l4 = -a1 - a2 - a3

    which sum to zero identically.
    """
    a1, a2, a3 = np.asarray(alpha, dtype=float)
    return np.array([-a1 + a2 + a3, a1 - a2 + a3, a1 + a2 - a3, -a1 - a2 - a3])


def canonical_gate(alpha) -> np.ndarray:
    """The gate exp(i sum_j alpha_j sigma_j (x) sigma_j).

    Built exactly as Q diag(exp(i l_k)) Q^dag from the eigenphases, which
    avoids a matrix exponential.
    """
    phases = np.exp(1j * eigen_phases(alpha))
    return (MAGIC * phases) @ MAGIC_H


def nearest_kronecker_factor(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split a 4x4 matrix known to be A (x) B into unitary factors (A, B).

    Uses the rank-one structure of the index-reshuffled matrix: for
    M = A (x) B the rearrangement R[2i+j, 2k+l] = M[2i+k, 2j+l] equals
    vec(A) vec(B)^T, so its leading singular pair yields the factors.
    Factors are projected to the nearest unitaries; A gets a non-negative
    real first (row-major) entry of significant modulus, and B absorbs the
    remaining phase so A (x) B matches ``m`` up to a global phase.

    Raises:
        NotAProductError: if the rank-one fit residual exceeds 1e-6.
    """
    m = np.asarray(m, dtype=complex)
    r = m.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    u, s, vh = np.linalg.svd(r)
    residual = float(np.linalg.norm(s[1:]))
    if residual > 1e-6:
        raise NotAProductError(
            f"matrix is not a tensor product of single-qubit operators "
            f"(rank-one fit residual {residual:.3e})"
        )
    a = (np.sqrt(s[0]) * u[:, 0]).reshape(2, 2)
    b = (np.sqrt(s[0]) * vh[0]).reshape(2, 2)
    a = _closest_unitary(a)
    b = _closest_unitary(b)
    # Phase convention: first entry of a with significant modulus is made
    # real non-negative; b picks up whatever phase aligns a (x) b with m.
    pivot = next(x for x in a.ravel() if abs(x) > 1e-6)
    a = a * np.exp(-1j * np.angle(pivot))
    b = b * np.exp(1j * np.angle(np.trace(tensor_product(a, b).conj().T @ m)))
    return a, b


def _closest_unitary(m: np.ndarray) -> np.ndarray:
    w, _, vh = np.linalg.svd(m)
    return w @ vh


def _orthogonal_eigenbasis(m: np.ndarray, cluster_tol: float) -> np.ndarray:
    """Real orthogonal eigenbasis of a complex symmetric unitary matrix.

    Re(m) and Im(m) are commuting real symmetric matrices, so a shared
    real eigenbasis exists.  Diagonalize Re(m) first, then diagonalize the
    restriction of Im(m) within each eigenvalue cluster of Re(m); this
    resolves the degeneracies that plain diagonalization of either part
    leaves open.
    """
    re = np.real(m)
    im = np.imag(m)
    vals, basis = np.linalg.eigh(re)
    order = 0
    while order < 4:
        end = order + 1
        while end < 4 and vals[end] - vals[end - 1] <= cluster_tol:
            end += 1
        if end - order > 1:
            block = basis[:, order:end]
            _, rot = np.linalg.eigh(block.T @ im @ block)
            basis[:, order:end] = block @ rot
        order = end
    return basis


def _half_phases(eigvals: np.ndarray) -> np.ndarray:
    """Phases mu with exp(2i mu) = eigvals and sum(mu) = 0.

    Principal branches leave the sum as a multiple of pi (det m = 1); the
    extremal branches are shifted until the sum vanishes.
    """
    mu = np.angle(eigvals) / 2.0
    wraps = round(float(np.sum(mu)) / math.pi)
    while wraps > 0:
        mu[np.argmax(mu)] -= math.pi
        wraps -= 1
    while wraps < 0:
        mu[np.argmin(mu)] += math.pi
        wraps += 1
    return mu


def _kron_sigma(axis: int) -> np.ndarray:
    return tensor_product(SIGMA[axis], SIGMA[axis])


def _axis_rotation(axis: int) -> np.ndarray:
    """exp(-i pi/4 sigma_axis) on both qubits: swaps the other two axes."""
    r = (np.eye(2) - 1j * SIGMA[axis]) / math.sqrt(2.0)
    return tensor_product(r, r)


def _reduce_to_chamber(alpha, left, right):
    """Reduce alpha to the Weyl chamber, folding compensating local
    unitaries into the adjacent local factors.

    Maintains left @ U_d(alpha) @ right invariant up to a global phase.
    Moves: shifts by pi/2 (compensated by sigma_j (x) sigma_j), coordinate
    swaps (compensated by pi/2 single-qubit rotations on both sides) and
    pairwise sign flips (compensated by a Pauli on one side).
    """
    alpha = list(np.asarray(alpha, dtype=float))

    def shift(k, steps):
        nonlocal right
        alpha[k] -= steps * _HALF_PI
        if steps % 2:
            right = _kron_sigma(k) @ right

    def swap(j, k):
        nonlocal left, right
        axis = 3 - j - k
        rot = _axis_rotation(axis)
        alpha[j], alpha[k] = alpha[k], alpha[j]
        left = left @ rot.conj().T
        right = rot @ right

    def negate(j, k):
        nonlocal left, right
        axis = 3 - j - k
        pauli = tensor_product(SIGMA[axis], np.eye(2))
        alpha[j] = -alpha[j]
        alpha[k] = -alpha[k]
        left = left @ pauli
        right = pauli @ right

    for k in range(3):
        shift(k, math.ceil(alpha[k] / _HALF_PI - 0.5))
    if abs(alpha[0]) < abs(alpha[1]):
        swap(0, 1)
    if abs(alpha[1]) < abs(alpha[2]):
        swap(1, 2)
    if abs(alpha[0]) < abs(alpha[1]):
        swap(0, 1)
    if alpha[0] < 0:
        negate(0, 2)
    if alpha[1] < 0:
        negate(1, 2)
    # Chamber boundary a1 = pi/4 identifies +-a3; pick the positive sign.
    if alpha[2] < -1e-15 and alpha[0] >= _QUARTER_PI - 1e-10:
        shift(0, 1)
        negate(0, 2)
    return np.array(alpha), left, right


def decompose(u: np.ndarray) -> CanonicalDecomposition:
    """Canonical decomposition of a two-qubit unitary.

    Returns a :class:`CanonicalDecomposition` whose reconstruction matches
    ``u`` up to the stored global phase within 1e-8 and whose coordinates
    satisfy the Weyl chamber inequalities.  Deterministic per input.

    Raises:
        UnitarityError: if ``u`` is not unitary to 1e-10.
        DecompositionError: if the eigenbasis extraction or the final
            reconstruction check fails.
    """
    u = require_unitary(u, atol=INPUT_UNITARY_ATOL, name="gate")
    if u.shape != (4, 4):
        raise UnitarityError(f"gate must be 4x4, got shape {u.shape}")
    v, _ = normalize_special(u)
    u_magic = MAGIC_H @ v @ MAGIC
    m = u_magic.T @ u_magic
    m = 0.5 * (m + m.T)

    basis = None
    residual = np.inf
    for tol in _CLUSTER_TOLS:
        candidate = _orthogonal_eigenbasis(m, tol)
        diag = candidate.T @ m @ candidate
        off = float(np.linalg.norm(diag - np.diag(np.diagonal(diag))))
        if off < residual:
            basis, residual = candidate, off
        if off <= 1e-10:
            break
    if residual > 1e-8:
        raise DecompositionError("could not diagonalize the magic Gram matrix", residual)

    # Deterministic column signs, then sort by descending eigenphase.
    for k in range(4):
        col = basis[:, k]
        pivot = col[np.argmax(np.abs(col) > 1e-8)]
        if pivot < 0:
            basis[:, k] = -col
    lam = _half_phases(np.diagonal(basis.T @ m @ basis))
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    basis = basis[:, order]
    if np.linalg.det(basis) < 0:
        basis[:, 3] = -basis[:, 3]

    alpha_raw = np.array(
        [(lam[1] + lam[2]) / 2.0, (lam[0] + lam[2]) / 2.0, (lam[0] + lam[1]) / 2.0]
    )
    # Magic-frame factors: u~ = o1 diag(exp(i lam)) o2 with o1, o2 in SO(4).
    o1 = u_magic @ basis @ np.diag(np.exp(-1j * lam))
    imag_leak = float(np.linalg.norm(o1.imag))
    if imag_leak > 1e-6:
        raise DecompositionError("left magic-frame factor is not real orthogonal", imag_leak)
    left = MAGIC @ o1.real @ MAGIC_H
    right = MAGIC @ basis.T @ MAGIC_H

    alpha, left, right = _reduce_to_chamber(alpha_raw, left, right)
    post_a, post_b = nearest_kronecker_factor(left)
    pre_a, pre_b = nearest_kronecker_factor(right)

    bare = tensor_product(post_a, post_b) @ canonical_gate(alpha) @ tensor_product(pre_a, pre_b)
    phase = float(np.angle(np.trace(bare.conj().T @ u)))
    result = CanonicalDecomposition(
        weyl=alpha,
        pre_local=(pre_a, pre_b),
        post_local=(post_a, post_b),
        global_phase=phase,
    )
    check = distance_up_to_phase(bare, u)
    if check > RECONSTRUCTION_ATOL:
        raise DecompositionError("reconstruction check failed", check)
    return result


def reconstruct(d: CanonicalDecomposition) -> np.ndarray:
    """Rebuild the gate exp(i phase) (U_A (x) U_B) U_d (V_A (x) V_B)."""
    return (
        np.exp(1j * d.global_phase)
        * tensor_product(*d.post_local)
        @ canonical_gate(d.weyl)
        @ tensor_product(*d.pre_local)
    )
