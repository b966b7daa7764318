"""Dicke, W and GHZ states plus their exact closed-form profiles.

Everything that depends only on ``(n, k)`` is computed with Python integers
and :class:`fractions.Fraction`, so it stays exact for any ``n``; only
:func:`dicke_state` and :func:`ghz_state` touch the dense engine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .exceptions import ImpossibleOutcomeError, InvalidSpecError, TooLargeError
from .statevector import MAX_QUBITS, Statevector, fidelity, hamming_weights

__all__ = [
    "DickeSpec",
    "ClosedFormProfile",
    "binomial",
    "dicke_state",
    "w_state",
    "inverted_w_state",
    "ghz_state",
    "closed_form_profile",
    "residual_spec",
    "coherence_argmax",
    "recognize_dicke",
]

RECOGNITION_TOL = 1e-10


@dataclass(frozen=True, order=True)
class DickeSpec:
    """Label ``(n, k)`` of the Dicke state with ``k`` excitations on ``n`` qubits.

    ``n == 0`` is allowed and denotes the empty register left at the end of
    a full measurement cascade.
    """

    n: int
    k: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or not isinstance(self.k, (int, np.integer)):
            raise InvalidSpecError(f"n and k must be integers, got ({self.n!r}, {self.k!r})")
        if self.n < 0:
            raise InvalidSpecError(f"n must be non-negative, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise InvalidSpecError(f"need 0 <= k <= n, got n={self.n}, k={self.k}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "k", int(self.k))

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k}


def binomial(n: int, k: int) -> int:
    """Exact C(n, k); zero outside ``0 <= k <= n``."""
    if n < 0:
        raise InvalidSpecError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class ClosedFormProfile:
    spec: DickeSpec
    dim: int
    coherence: int
    p0: Fraction
    p1: Fraction
    schmidt_coeffs: tuple[float, float]
    schmidt_rank: int

    @property
    def max_entangled(self) -> bool:
        return self.p0 == self.p1


def closed_form_profile(spec: DickeSpec) -> ClosedFormProfile:
    """Dimension, coherence, outcome probabilities and Schmidt data of ``|D_n^(k)>``.

    The Schmidt pair is ordered as (outcome-0 branch, outcome-1 branch),
    not sorted.
    """
    n, k = spec.n, spec.k
    if n < 1:
        raise InvalidSpecError("closed-form profile needs at least one qubit")
    dim = binomial(n, k)
    p0 = Fraction(n - k, n)
    p1 = Fraction(k, n)
    return ClosedFormProfile(
        spec=spec,
        dim=dim,
        coherence=dim - 1,
        p0=p0,
        p1=p1,
        schmidt_coeffs=(math.sqrt(p0), math.sqrt(p1)),
        schmidt_rank=1 if k in (0, n) else 2,
    )


def residual_spec(spec: DickeSpec, outcome: int) -> DickeSpec:
    """Label of the state left on the other qubits after measuring one qubit."""
    if outcome not in (0, 1):
        raise InvalidSpecError(f"outcome must be 0 or 1, got {outcome!r}")
    if spec.n < 1:
        raise InvalidSpecError("cannot measure an empty register")
    if outcome == 0 and spec.k == spec.n:
        raise ImpossibleOutcomeError(f"zero-probability branch: outcome 0 on {spec}")
    if outcome == 1 and spec.k == 0:
        raise ImpossibleOutcomeError(f"zero-probability branch: outcome 1 on {spec}")
    return DickeSpec(spec.n - 1, spec.k - outcome)


def coherence_argmax(n: int) -> list[int]:
    """Every k maximizing C(n, k) - 1, found by exhaustive comparison."""
    values = [binomial(n, k) for k in range(n + 1)]
    best = max(values)
    return [k for k, v in enumerate(values) if v == best]


def _check_dense(n: int) -> None:
    if n > MAX_QUBITS:
        raise TooLargeError(
            f"n={n} is too large for dense engine (cap {MAX_QUBITS}); use closed forms"
        )


def dicke_state(spec: DickeSpec) -> Statevector:
    n, k = spec.n, spec.k
    if n < 1:
        raise InvalidSpecError("dicke_state needs at least one qubit")
    _check_dense(n)
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[hamming_weights(n) == k] = 1.0 / math.sqrt(binomial(n, k))
    return Statevector(n, amps)


def w_state(n: int) -> Statevector:
    return dicke_state(DickeSpec(n, 1))


def inverted_w_state(n: int) -> Statevector:
    return dicke_state(DickeSpec(n, n - 1))


def ghz_state(n: int) -> Statevector:
    if n < 2:
        raise InvalidSpecError("GHZ needs >= 2 qubits")
    _check_dense(n)
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    return Statevector(n, amps)


def recognize_dicke(state: Statevector, tol: float = RECOGNITION_TOL) -> Optional[DickeSpec]:
    """Return the Dicke label of ``state`` if it matches one up to global phase."""
    n = state.n_qubits
    weights = hamming_weights(n)
    probs = np.abs(state.amplitudes) ** 2
    # a Dicke state lives entirely in one Hamming-weight sector
    k = int(np.argmax(np.bincount(weights, weights=probs, minlength=n + 1)))
    spec = DickeSpec(n, k)
    if fidelity(dicke_state(spec), state) >= 1.0 - tol:
        return spec
    return None
