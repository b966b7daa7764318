"""Link classification of multiqubit states and link fluidity of Dicke states.

Two routes reach a class: :func:`classify_dicke` reads it off ``(n, k)``,
while :func:`classify_by_probe` measures a dense state qubit by qubit and
inspects what entanglement survives.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .dicke import DickeSpec, binomial, recognize_dicke
from .exceptions import InvalidSpecError, TooLargeError
from .measurement import ABSORBED, MeasurementRecord, branch_table
from .quantifiers import is_product
from .statevector import MAX_QUBITS, Statevector

__all__ = [
    "LinkKind",
    "Density",
    "Regime",
    "TopologyClass",
    "FluidityReport",
    "ProbeBranch",
    "ProbeResult",
    "fluidity",
    "density_of",
    "classify_dicke",
    "probe",
    "classify_by_probe",
]


class LinkKind(str, enum.Enum):
    UNLINK = "UNLINK"
    BORROMEAN_FRAGILE = "BORROMEAN_FRAGILE"
    HOPF_LINKED = "HOPF_LINKED"


class Density(str, enum.Enum):
    ZERO = "ZERO"
    SPARSE = "SPARSE"
    MAXIMAL = "MAXIMAL"
    INTERMEDIATE = "INTERMEDIATE"


class Regime(str, enum.Enum):
    RIGID = "RIGID"
    FLUID = "FLUID"


@dataclass(frozen=True)
class TopologyClass:
    kind: LinkKind
    density: Density

    def __post_init__(self):
        if (self.kind is LinkKind.UNLINK) != (self.density is Density.ZERO):
            raise ValueError(f"inconsistent class: {self.kind.value} with density {self.density.value}")

    def as_dict(self) -> dict:
        return {"class": self.kind.value, "density": self.density.value}


@dataclass(frozen=True)
class FluidityReport:
    fluidity: int
    regime: Regime
    residual_fluidities: dict[int, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "fluidity": self.fluidity,
            "regime": self.regime.value,
            "residual_fluidities": {str(o): v for o, v in self.residual_fluidities.items()},
        }


def fluidity(spec: DickeSpec) -> FluidityReport:
    n, k = spec.n, spec.k
    value = binomial(n, k) - 1
    residuals = {}
    if n >= 1:
        if k < n:
            residuals[0] = binomial(n - 1, k) - 1
        if k > 0:
            residuals[1] = binomial(n - 1, k - 1) - 1
    return FluidityReport(value, Regime.FLUID if value > 0 else Regime.RIGID, residuals)


def density_of(spec: DickeSpec) -> Density:
    n, k = spec.n, spec.k
    if k in (0, n):
        return Density.ZERO
    # exact balance wins over sparsity, so (2, 1) is MAXIMAL while (3, 1) is SPARSE
    if 2 * k == n:
        return Density.MAXIMAL
    if k in (1, n - 1):
        return Density.SPARSE
    if k in (n // 2, (n + 1) // 2):
        return Density.MAXIMAL
    return Density.INTERMEDIATE


def classify_dicke(spec: DickeSpec) -> TopologyClass:
    density = density_of(spec)
    kind = LinkKind.UNLINK if density is Density.ZERO else LinkKind.HOPF_LINKED
    return TopologyClass(kind, density)


@dataclass(frozen=True)
class ProbeBranch:
    record: MeasurementRecord
    entangled: bool


@dataclass(frozen=True)
class ProbeResult:
    """Per-qubit branch outcomes gathered by :func:`probe`."""

    state_is_product: bool
    branches: dict[int, tuple[ProbeBranch, ...]]
    recognized: Optional[DickeSpec]

    @property
    def fragile_qubits(self) -> list[int]:
        return [q for q, bs in self.branches.items() if not any(b.entangled for b in bs)]

    @property
    def kind(self) -> LinkKind:
        if self.state_is_product:
            return LinkKind.UNLINK
        survives = [any(b.entangled for b in bs) for bs in self.branches.values()]
        if all(survives):
            return LinkKind.HOPF_LINKED
        # any cut that can sever everything counts as fragile
        return LinkKind.BORROMEAN_FRAGILE


def probe(state: Statevector) -> ProbeResult:
    """Measure every qubit in turn and record which branches stay entangled."""
    n = state.n_qubits
    if n > MAX_QUBITS:
        raise TooLargeError("too large for the probe; use classify_dicke")
    if n < 3:
        raise InvalidSpecError(f"the probe needs at least 3 qubits, got {n}")
    product = is_product(state)
    branches: dict[int, tuple[ProbeBranch, ...]] = {}
    if not product:
        for q in range(1, n + 1):
            found = []
            for rec in branch_table(state, q):
                if not rec.possible:
                    continue
                post = rec.post_state
                entangled = post is not ABSORBED and not is_product(post)
                found.append(ProbeBranch(rec, entangled))
            branches[q] = tuple(found)
    return ProbeResult(product, branches, recognize_dicke(state))


def classify_by_probe(state: Statevector) -> TopologyClass:
    result = probe(state)
    kind = result.kind
    if kind is LinkKind.UNLINK:
        return TopologyClass(kind, Density.ZERO)
    if result.recognized is None:
        return TopologyClass(kind, Density.INTERMEDIATE)
    return TopologyClass(kind, density_of(result.recognized))
