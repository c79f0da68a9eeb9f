"""Discrete phase alphabet, reflection schedules, and the per-slot gain.

Reflection states are stored as integer indices into the alphabet, never as
floats, so schedules are exactly reproducible and alphabet membership is
structural; unit-modulus coefficients are materialized on demand.
"""

import csv
from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class PhaseAlphabet:
    """b-bit phase grid {2*pi*l / 2^b : l = 0..2^b - 1}."""

    bits: int

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("bits must be >= 0")

    @property
    def size(self) -> int:
        return 2**self.bits

    @cached_property
    def values(self) -> np.ndarray:
        values = 2.0 * np.pi * np.arange(self.size) / self.size
        values.setflags(write=False)
        return values

    @cached_property
    def coefficients(self) -> np.ndarray:
        coeffs = np.exp(1j * self.values)
        coeffs.setflags(write=False)
        return coeffs

    @cached_property
    def conj_coefficients(self) -> np.ndarray:
        coeffs = np.conj(self.coefficients)
        coeffs.setflags(write=False)
        return coeffs


@dataclass(frozen=True)
class ReflectionSchedule:
    """Q x M matrix of phase indices; column m drives slot m."""

    indices: np.ndarray
    alphabet: PhaseAlphabet

    def __post_init__(self):
        idx = np.asarray(self.indices)
        if idx.ndim != 2:
            raise ValueError("schedule indices must be a Q x M matrix")
        if idx.shape[1] < 1:
            raise ValueError("schedule needs at least one slot")
        if idx.size and (idx.min() < 0 or idx.max() >= self.alphabet.size):
            raise ValueError("schedule index outside the phase alphabet")
        idx = np.ascontiguousarray(idx, dtype=np.int64)
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    @property
    def num_elements(self) -> int:
        return self.indices.shape[0]

    @property
    def num_slots(self) -> int:
        return self.indices.shape[1]

    def coefficients(self) -> np.ndarray:
        """Unit-modulus reflection coefficients, shape (Q, M)."""
        return self.alphabet.coefficients[self.indices]


def overall_gain(h_k: complex, g: np.ndarray, f_k: np.ndarray,
                 gamma_indices: np.ndarray, alphabet: PhaseAlphabet) -> complex:
    """Composite gain h_k + g^H conj(Gamma) f_k for one user and one slot.

    The reflection matrix enters conjugated; the destructive-cancellation
    identity h=g=f=1 with the pi phase giving exactly 0 pins the convention.
    """
    coeffs = alphabet.coefficients[np.asarray(gamma_indices)]
    return complex(h_k + np.sum(np.conj(g) * np.conj(coeffs) * f_k))


def slot_gains(h: np.ndarray, g: np.ndarray, F: np.ndarray,
               schedule: ReflectionSchedule) -> np.ndarray:
    """Composite gains c_k^(m) for all users and slots, shape (M, K)."""
    weights = np.conj(g)[:, None] * np.conj(schedule.coefficients())  # (Q, M)
    return h[None, :] + weights.T @ F


def random_schedule(q_atoms: int, m_slots: int, alphabet: PhaseAlphabet,
                    rng: np.random.Generator) -> ReflectionSchedule:
    """i.i.d. uniform phase indices over space and time; fresh per block."""
    if q_atoms < 1 or m_slots < 1:
        raise ValueError("schedule dimensions must be >= 1")
    idx = rng.integers(0, alphabet.size, size=(q_atoms, m_slots))
    return ReflectionSchedule(indices=idx, alphabet=alphabet)


def constant_schedule(gamma_indices: np.ndarray, m_slots: int,
                      alphabet: PhaseAlphabet) -> ReflectionSchedule:
    """Replicate one reflection vector across all M slots (slowly-varying surface)."""
    gamma = np.asarray(gamma_indices).reshape(-1)
    idx = np.repeat(gamma[:, None], m_slots, axis=1)
    return ReflectionSchedule(indices=idx, alphabet=alphabet)


def save_schedule_csv(schedule: ReflectionSchedule, path) -> None:
    """Dump the integer index matrix, one surface element per row."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in schedule.indices:
            writer.writerow(int(v) for v in row)


def load_schedule_csv(path, alphabet: PhaseAlphabet) -> ReflectionSchedule:
    with open(path, newline="") as fh:
        rows = [[int(v) for v in row] for row in csv.reader(fh) if row]
    return ReflectionSchedule(indices=np.array(rows, dtype=np.int64), alphabet=alphabet)
