"""Dense, immutable n-qubit statevectors.

Basis index ``i`` is read as a bitstring with qubit 1 as the most significant
bit, so for three qubits index ``0b100 == 4`` is ``|100>`` (qubit 1 excited).
Qubits are addressed 1-based throughout the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .exceptions import (
    BadQubitError,
    BasisIndexError,
    NoBipartitionError,
    ShapeError,
    TooLargeError,
    ZeroStateError,
)

__all__ = [
    "MAX_QUBITS",
    "NORM_TOL",
    "BasisIndex",
    "Statevector",
    "make_state",
    "basis_state",
    "inner_product",
    "fidelity",
    "bipartition_matrix",
    "from_bipartition",
    "permute_qubits",
    "flip_all",
    "hamming_weights",
]

MAX_QUBITS = 20
NORM_TOL = 1e-12


@dataclass(frozen=True)
class BasisIndex:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise BasisIndexError(f"bad basis index: {self.index}")

    @property
    def hamming_weight(self) -> int:
        return self.index.bit_count()

    def bits(self, n: int) -> str:
        return format(self.index, f"0{n}b")


@dataclass(frozen=True, eq=False)
class Statevector:
    """Normalized pure state of ``n_qubits`` qubits.

    The amplitude array is copied and marked read-only on construction.
    """

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = self.n_qubits
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise ShapeError(f"n_qubits must be a positive integer, got {n!r}")
        if n > MAX_QUBITS:
            raise TooLargeError(
                f"{n} qubits is too large for dense engine (cap {MAX_QUBITS}); use closed forms"
            )
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != 2**n:
            raise ShapeError(f"expected {2**n} amplitudes for {n} qubits, got {amps.shape[0]}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ShapeError(f"state is not normalized (|psi|^2 = {norm2!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "n_qubits", int(n))
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex] | np.ndarray) -> "Statevector":
        """Build a state from a raw vector, renormalizing it."""
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        dim = amps.shape[0]
        n = dim.bit_length() - 1
        if dim < 2 or 2**n != dim:
            raise ShapeError(f"amplitude vector length {dim} is not a power of two >= 2")
        norm = math.sqrt(float(np.vdot(amps, amps).real))
        if norm == 0.0:
            raise ZeroStateError("zero state")
        return cls(n, amps / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def support(self, atol: float = 0.0) -> np.ndarray:
        return np.flatnonzero(np.abs(self.amplitudes) > atol)

    def __eq__(self, other):
        if not isinstance(other, Statevector):
            return NotImplemented
        return self.n_qubits == other.n_qubits and np.array_equal(self.amplitudes, other.amplitudes)

    def __hash__(self):
        return hash((self.n_qubits, self.amplitudes.tobytes()))

    def __repr__(self):
        nz = self.support(1e-15)
        if len(nz) > 6:
            return f"Statevector(n_qubits={self.n_qubits}, support={len(nz)} terms)"
        terms = " + ".join(
            f"({self.amplitudes[i]:.4g})|{format(int(i), f'0{self.n_qubits}b')}>" for i in nz
        )
        return f"Statevector({terms})"


def make_state(
    n: int, entries: Mapping[Union[int, BasisIndex], complex]
) -> Statevector:
    """Normalized state with the given (unnormalized) amplitudes on the listed indices."""
    if n < 1:
        raise ShapeError(f"n must be positive, got {n}")
    if n > MAX_QUBITS:
        raise TooLargeError(
            f"{n} qubits is too large for dense engine (cap {MAX_QUBITS}); use closed forms"
        )
    if not entries:
        raise ZeroStateError("zero state: no entries given")
    amps = np.zeros(2**n, dtype=np.complex128)
    for key, value in entries.items():
        idx = key.index if isinstance(key, BasisIndex) else int(key)
        if not 0 <= idx < 2**n:
            raise BasisIndexError(f"bad basis index {idx} for {n} qubits")
        amps[idx] += value
    norm = math.sqrt(float(np.vdot(amps, amps).real))
    if norm == 0.0:
        raise ZeroStateError("zero state: all amplitudes vanish")
    return Statevector(n, amps / norm)


def basis_state(bits: str) -> Statevector:
    """``basis_state("101")`` is ``|101>``."""
    return make_state(len(bits), {int(bits, 2): 1.0})


def inner_product(a: Statevector, b: Statevector) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    if a.n_qubits != b.n_qubits:
        raise ShapeError(f"shape error: {a.n_qubits} vs {b.n_qubits} qubits")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: Statevector, b: Statevector) -> float:
    return abs(inner_product(a, b)) ** 2


def _check_qubit(n: int, qubit: int) -> None:
    if not 1 <= qubit <= n:
        raise BadQubitError(f"bad qubit {qubit}: valid range is 1..{n}")


def bipartition_matrix(state: Statevector, qubit: int) -> np.ndarray:
    """2 x 2**(n-1) matrix splitting ``qubit`` from the rest.

    Row ``m`` collects the amplitudes whose ``qubit`` bit equals ``m``; the
    other qubits keep their relative (MSB-first) order along the columns.
    """
    n = state.n_qubits
    if n < 2:
        raise NoBipartitionError("no bipartition: a single qubit has no cut")
    _check_qubit(n, qubit)
    tensor = state.amplitudes.reshape((2,) * n)
    return np.moveaxis(tensor, qubit - 1, 0).reshape(2, -1)


def from_bipartition(matrix: np.ndarray, qubit: int) -> np.ndarray:
    """Inverse of :func:`bipartition_matrix`, returning the flat amplitude vector."""
    matrix = np.asarray(matrix)
    n = (matrix.shape[1]).bit_length()
    _check_qubit(n, qubit)
    tensor = matrix.reshape((2,) * n)
    return np.moveaxis(tensor, 0, qubit - 1).reshape(-1)


def permute_qubits(state: Statevector, perm: Sequence[int]) -> Statevector:
    """Relabel qubits: qubit ``q`` of the input becomes qubit ``perm[q-1]`` of the output."""
    n = state.n_qubits
    if sorted(perm) != list(range(1, n + 1)):
        raise ShapeError(f"{perm!r} is not a permutation of 1..{n}")
    tensor = state.amplitudes.reshape((2,) * n)
    out = np.moveaxis(tensor, list(range(n)), [p - 1 for p in perm])
    return Statevector(n, out.reshape(-1))


def flip_all(state: Statevector) -> Statevector:
    """Apply X to every qubit (index i -> i XOR 11..1, i.e. reversal of the vector)."""
    return Statevector(state.n_qubits, state.amplitudes[::-1])


def hamming_weights(n: int) -> np.ndarray:
    return np.bitwise_count(np.arange(2**n, dtype=np.uint64)).astype(np.int64)
