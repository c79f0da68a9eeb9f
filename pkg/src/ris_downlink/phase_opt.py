"""Discrete phase optimization of the composite gain via coordinate ascent.

The squared gain |h + g^H diag(conj(gamma)) f|^2 is a quadratic form in the
unit-modulus coefficients; as a function of any single phase theta_nu it is
lambda_nu + 2*|chi_nu|*cos(theta_nu + angle(chi_nu)), so each coordinate step
is an exact grid search over the alphabet and the objective never decreases.
An exhaustive enumerator provides the global optimum at small scale.
"""

from dataclasses import dataclass

import numpy as np

from .reflection import PhaseAlphabet

EXHAUSTIVE_POINT_LIMIT = 2**24
_EXHAUSTIVE_CHUNK = 4096


@dataclass(frozen=True)
class QuadraticFormTerms:
    """Data of the squared-gain quadratic form for one user.

    beta = h * diag(conj(f)) * g, B = diag(conj(f)) * g * g^H * diag(f)
    (Hermitian, rank one), and h_abs_sq = |h|^2.
    """

    beta: np.ndarray    # (Q,)
    B: np.ndarray       # (Q, Q)
    h_abs_sq: float

    @property
    def num_elements(self) -> int:
        return self.beta.size


@dataclass(frozen=True)
class PhaseIterate:
    """Coordinate-ascent output: phase indices, objective, sweeps executed."""

    theta_indices: np.ndarray
    objective: float
    iteration: int


def quadratic_form_terms(h_k: complex, g: np.ndarray, f_k: np.ndarray) -> QuadraticFormTerms:
    """Assemble (beta, B, |h|^2) from one user's channels."""
    g = np.atleast_1d(np.asarray(g, dtype=complex))
    f_k = np.atleast_1d(np.asarray(f_k, dtype=complex))
    u = np.conj(f_k) * g
    beta = h_k * u
    B = np.outer(u, np.conj(u))
    return QuadraticFormTerms(beta=beta, B=B, h_abs_sq=abs(h_k) ** 2)


def objective(terms: QuadraticFormTerms, theta_indices: np.ndarray,
              alphabet: PhaseAlphabet) -> float:
    """Squared composite gain at the given phase indices.

    Equals |overall_gain(...)|^2 from the reflection module; the identity is
    the primary cross-module correctness check.
    """
    e = alphabet.coefficients[np.asarray(theta_indices)]
    value = terms.h_abs_sq
    value += 2.0 * np.real(np.dot(terms.beta, e))
    value += np.real(e @ terms.B @ np.conj(e))
    return max(float(value), 0.0)


def coordinate_update(terms: QuadraticFormTerms, theta_indices: np.ndarray,
                      nu: int, alphabet: PhaseAlphabet) -> int:
    """Exact single-coordinate maximizer for phase nu (0-based).

    Computes chi_nu = beta_nu + sum_{q != nu} B[nu, q] * exp(-j*theta_q) with
    the other coordinates at their current values, then picks the grid phase
    maximizing cos(theta_nu + angle(chi_nu)).  On an exact tie the incumbent
    index is kept, otherwise the lowest index wins; a vanishing chi leaves
    the objective independent of theta_nu and returns the incumbent.
    """
    theta_indices = np.asarray(theta_indices)
    e_conj = alphabet.conj_coefficients[theta_indices]
    chi = terms.beta[nu] + np.dot(terms.B[nu, :], e_conj) - terms.B[nu, nu] * e_conj[nu]
    incumbent = int(theta_indices[nu])
    if chi == 0:
        return incumbent
    scores = np.cos(alphabet.values + np.angle(chi))
    best = int(np.argmax(scores))
    if scores[incumbent] == scores[best]:
        return incumbent
    return best


def optimize_phases(terms: QuadraticFormTerms, alphabet: PhaseAlphabet,
                    i_max: int = 20, rel_tol: float = 1e-9) -> PhaseIterate:
    """Coordinate-ascent sweeps nu = 1..Q starting from the all-zero phases.

    Stops after i_max sweeps or when a full sweep improves the objective by
    less than rel_tol in relative terms.  The returned objective is
    recomputed from the final indices and is never below the initial one.
    """
    q = terms.num_elements
    theta = np.zeros(q, dtype=np.int64)
    current = objective(terms, theta, alphabet)
    sweeps = 0
    for _ in range(i_max):
        sweeps += 1
        for nu in range(q):
            theta[nu] = coordinate_update(terms, theta, nu, alphabet)
        updated = objective(terms, theta, alphabet)
        if updated - current <= rel_tol * max(abs(current), np.finfo(float).tiny):
            current = max(updated, current)
            break
        current = updated
    return PhaseIterate(theta_indices=theta, objective=current, iteration=sweeps)


def exhaustive_oracle(terms: QuadraticFormTerms,
                      alphabet: PhaseAlphabet) -> tuple[np.ndarray, float]:
    """Global maximum of the squared gain by full enumeration.

    Refuses instances with more than 2^24 grid points.
    """
    q = terms.num_elements
    n_points = alphabet.size**q
    if n_points > EXHAUSTIVE_POINT_LIMIT:
        raise ValueError(
            f"instance too large for exhaustive search: {alphabet.size}^{q} "
            f"> {EXHAUSTIVE_POINT_LIMIT} grid points")
    if q == 0:
        return np.zeros(0, dtype=np.int64), max(float(terms.h_abs_sq), 0.0)

    radix = alphabet.size ** np.arange(q - 1, -1, -1)
    best_val = -np.inf
    best_idx = None
    for start in range(0, n_points, _EXHAUSTIVE_CHUNK):
        stop = min(start + _EXHAUSTIVE_CHUNK, n_points)
        codes = np.arange(start, stop)[:, None] // radix[None, :] % alphabet.size
        e = alphabet.coefficients[codes]
        vals = terms.h_abs_sq + 2.0 * np.real(e @ terms.beta)
        vals += np.real(np.einsum("nq,qr,nr->n", e, terms.B, np.conj(e)))
        local = int(np.argmax(vals))
        if vals[local] > best_val:
            best_val = float(vals[local])
            best_idx = codes[local].astype(np.int64)
    return best_idx, max(best_val, 0.0)
