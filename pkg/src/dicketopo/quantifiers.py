"""Schmidt decomposition across a single-qubit cut and l1-norm coherence."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import TooLargeError
from .statevector import Statevector, bipartition_matrix

__all__ = [
    "SchmidtResult",
    "Verdict",
    "schmidt",
    "schmidt_all_cuts",
    "l1_coherence",
    "l1_coherence_density",
    "entanglement_verdict",
    "is_product",
]

DEFAULT_RANK_TOL = 1e-10
MAXIMAL_TOL = 1e-9
DENSITY_MAX_QUBITS = 10


class Verdict(str, enum.Enum):
    LINKED = "LINKED"
    UNLINKED = "UNLINKED"


@dataclass(frozen=True)
class SchmidtResult:
    coefficients: tuple[float, ...]
    rank: int
    tolerance_used: float
    is_maximal: bool

    def as_dict(self) -> dict:
        return {
            "coefficients": list(self.coefficients),
            "rank": self.rank,
            "tolerance_used": self.tolerance_used,
            "is_maximal": self.is_maximal,
        }


def _two_row_singular_values(m: np.ndarray) -> tuple[float, float]:
    # Largest value from the 2x2 Gram matrix M M^dagger; the smallest from
    # sigma1 * sigma2 = |a| * |b_perp|, which avoids cancellation in det(G).
    a, b = m[0], m[1]
    na2 = float(np.vdot(a, a).real)
    nb2 = float(np.vdot(b, b).real)
    if nb2 > na2:
        a, b, na2, nb2 = b, a, nb2, na2
    if na2 == 0.0:
        return 0.0, 0.0
    ab = complex(np.vdot(a, b))
    gram = np.array([[na2, ab], [ab.conjugate(), nb2]])
    top = float(np.linalg.eigvalsh(gram)[-1])
    s1 = math.sqrt(max(top, 0.0))
    b_perp = b - (ab / na2) * a
    s2 = math.sqrt(na2) * float(np.linalg.norm(b_perp)) / s1
    return s1, min(s2, s1)


def schmidt(state: Statevector, qubit: int, tolerance: float = DEFAULT_RANK_TOL) -> SchmidtResult:
    """Schmidt coefficients of ``qubit`` versus the remaining qubits.

    Only coefficients above ``tolerance`` are kept, in descending order.
    """
    s1, s2 = _two_row_singular_values(bipartition_matrix(state, qubit))
    kept = tuple(s for s in (s1, s2) if s > tolerance)
    rank = len(kept)
    maximal = rank >= 2 and (kept[0] - kept[-1]) <= MAXIMAL_TOL
    return SchmidtResult(coefficients=kept, rank=rank, tolerance_used=tolerance, is_maximal=maximal)


def schmidt_all_cuts(state: Statevector, tolerance: float = DEFAULT_RANK_TOL) -> list[SchmidtResult]:
    return [schmidt(state, q, tolerance) for q in range(1, state.n_qubits + 1)]


def is_product(state: Statevector, tolerance: float = DEFAULT_RANK_TOL) -> bool:
    """True if every single-qubit cut has Schmidt rank 1 (a one-qubit state counts)."""
    if state.n_qubits == 1:
        return True
    return all(r.rank == 1 for r in schmidt_all_cuts(state, tolerance))


def entanglement_verdict(result: SchmidtResult) -> Verdict:
    return Verdict.UNLINKED if result.rank <= 1 else Verdict.LINKED


def l1_coherence(state: Statevector) -> float:
    """(sum_i |c_i|)**2 - 1 in the computational basis."""
    total = math.fsum(np.abs(state.amplitudes).tolist())
    return total * total - 1.0


def l1_coherence_density(state: Statevector) -> float:
    """Sum of |rho_ij| over i != j for rho = |psi><psi|, built explicitly."""
    if state.n_qubits > DENSITY_MAX_QUBITS:
        raise TooLargeError(
            f"density matrix too large: {state.n_qubits} qubits (cap {DENSITY_MAX_QUBITS})"
        )
    psi = state.amplitudes
    rho = np.outer(psi, psi.conj())
    off = np.abs(rho)
    np.fill_diagonal(off, 0.0)
    return float(math.fsum(off.ravel().tolist()))
