"""Computational-basis projective measurement and recursive measurement cascades.

Cascades draw from numpy's PCG64 bit generator seeded directly with the
64-bit cascade seed (``Generator(PCG64(seed))``). Each step consumes one
``random()`` double ``u`` and yields outcome 1 iff ``u < k/n`` for the
current register. Independent streams for batches come from
:func:`spawn_seeds` (``SeedSequence.spawn``).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Union

import numpy as np

from .dicke import DickeSpec, closed_form_profile, recognize_dicke, residual_spec
from .exceptions import BadQubitError, ImpossibleOutcomeError, InvalidSpecError
from .statevector import Statevector, bipartition_matrix

__all__ = [
    "ABSORBED",
    "ZERO_PROB_TOL",
    "MeasurementRecord",
    "CascadeTrace",
    "TreePath",
    "project",
    "branch_table",
    "sample_cascade",
    "enumerate_tree",
    "spawn_seeds",
    "format_float",
]

ZERO_PROB_TOL = 1e-14
MAX_TREE_DEPTH = 30
SEED_MAX = 2**64 - 1


class _Absorbed:
    """Marker for the post-state of measuring the last remaining qubit."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ABSORBED"


ABSORBED = _Absorbed()

PostState = Union[Statevector, _Absorbed]


def format_float(x: float) -> str:
    """Decimal string with 17 significant digits (round-trips any double)."""
    return format(float(x), ".17g")


def _check_outcome(outcome: int) -> None:
    if outcome not in (0, 1):
        raise InvalidSpecError(f"outcome must be 0 or 1, got {outcome!r}")


def _branch(state: Statevector, qubit: int, outcome: int) -> tuple[float, Optional[PostState]]:
    if not 1 <= qubit <= state.n_qubits:
        raise BadQubitError(f"bad qubit {qubit}: valid range is 1..{state.n_qubits}")
    _check_outcome(outcome)
    if state.n_qubits == 1:
        amp = state.amplitudes[outcome]
        prob = float(abs(amp) ** 2)
        return prob, (ABSORBED if prob >= ZERO_PROB_TOL else None)
    row = bipartition_matrix(state, qubit)[outcome]
    prob = float(np.vdot(row, row).real)
    if prob < ZERO_PROB_TOL:
        return prob, None
    return prob, Statevector(state.n_qubits - 1, row / math.sqrt(prob))


def project(state: Statevector, qubit: int, outcome: int) -> tuple[float, PostState]:
    """Born probability of ``outcome`` on ``qubit`` and the renormalized remainder.

    The measured qubit is removed from the returned state; measuring the last
    qubit returns :data:`ABSORBED`.
    """
    prob, post = _branch(state, qubit, outcome)
    if post is None:
        raise ImpossibleOutcomeError(
            f"impossible outcome {outcome} on qubit {qubit} (probability {prob:.3g})"
        )
    return prob, post


@dataclass(frozen=True)
class MeasurementRecord:
    qubit: int
    outcome: int
    probability: float
    residual_n: int
    residual_is_dicke: bool
    residual_spec: Optional[DickeSpec]
    possible: bool = True
    post_state: Optional[PostState] = field(default=None, compare=False, repr=False)

    def as_dict(self) -> dict:
        return {
            "qubit": self.qubit,
            "outcome": self.outcome,
            "probability": format_float(self.probability),
            "residual": None if self.residual_spec is None else self.residual_spec.as_dict(),
        }


def branch_table(state: Statevector, qubit: int) -> list[MeasurementRecord]:
    """Both outcome records for measuring ``qubit``; zero-probability ones have ``possible=False``."""
    records = []
    for outcome in (0, 1):
        prob, post = _branch(state, qubit, outcome)
        if post is None:
            records.append(
                MeasurementRecord(qubit, outcome, prob, state.n_qubits - 1, False, None, possible=False)
            )
            continue
        if post is ABSORBED:
            spec: Optional[DickeSpec] = DickeSpec(0, 0)
        else:
            spec = recognize_dicke(post)
        records.append(
            MeasurementRecord(
                qubit, outcome, prob, state.n_qubits - 1, spec is not None, spec, post_state=post
            )
        )
    return records


@dataclass(frozen=True)
class CascadeTrace:
    initial: DickeSpec
    seed: int
    records: tuple[MeasurementRecord, ...]
    final_spec: DickeSpec

    @property
    def excitations_removed(self) -> int:
        return sum(r.outcome for r in self.records)

    def as_dict(self) -> dict:
        return {
            "initial": self.initial.as_dict(),
            "seed": self.seed,
            "records": [r.as_dict() for r in self.records],
            "final": self.final_spec.as_dict(),
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent)

    @classmethod
    def from_dict(cls, doc: dict) -> "CascadeTrace":
        initial = DickeSpec(**doc["initial"])
        records = []
        n = initial.n
        for r in doc["records"]:
            res = DickeSpec(**r["residual"])
            n -= 1
            records.append(MeasurementRecord(
                qubit=r["qubit"], outcome=r["outcome"], probability=float(r["probability"]),
                residual_n=n, residual_is_dicke=True, residual_spec=res,
            ))
        return cls(initial, int(doc["seed"]), tuple(records), DickeSpec(**doc["final"]))


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise InvalidSpecError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def sample_cascade(spec: DickeSpec, steps: int, seed: int) -> CascadeTrace:
    """Measure qubit 1 of the current register ``steps`` times.

    Works on labels only: every residual of a Dicke state is again a Dicke
    state, so no dense vector is needed and ``n`` is unbounded.
    """
    if steps < 0:
        raise InvalidSpecError(f"steps must be non-negative, got {steps}")
    if steps > spec.n:
        raise InvalidSpecError(f"cascade longer than system: {steps} steps on {spec.n} qubits")
    seed = _check_seed(seed)
    rng = np.random.Generator(np.random.PCG64(seed))
    current = spec
    records = []
    for _ in range(steps):
        profile = closed_form_profile(current)
        u = rng.random()
        outcome = 1 if u < float(profile.p1) else 0
        prob = profile.p1 if outcome else profile.p0
        nxt = residual_spec(current, outcome)
        records.append(MeasurementRecord(1, outcome, float(prob), nxt.n, True, nxt))
        current = nxt
    return CascadeTrace(spec, seed, tuple(records), current)


def spawn_seeds(root_seed: int, count: int) -> list[int]:
    """``count`` independent 64-bit cascade seeds derived from one root seed."""
    children = np.random.SeedSequence(_check_seed(root_seed)).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


class TreePath(NamedTuple):
    outcomes: tuple[int, ...]
    probability: Fraction
    leaf: DickeSpec

    @property
    def label(self) -> str:
        return "".join(map(str, self.outcomes))


def _walk(spec: DickeSpec, depth: int, prefix: tuple[int, ...], prob: Fraction) -> Iterator[TreePath]:
    if depth == 0:
        yield TreePath(prefix, prob, spec)
        return
    profile = closed_form_profile(spec)
    for outcome, p in ((0, profile.p0), (1, profile.p1)):
        if p == 0:
            continue
        yield from _walk(residual_spec(spec, outcome), depth - 1, prefix + (outcome,), prob * p)


def enumerate_tree(spec: DickeSpec, depth: int) -> list[TreePath]:
    """Every nonzero-probability outcome path of length ``depth``, with exact probabilities."""
    if depth > MAX_TREE_DEPTH:
        raise InvalidSpecError(f"tree too deep: depth {depth} > {MAX_TREE_DEPTH}")
    if not 0 <= depth <= spec.n:
        raise InvalidSpecError(f"depth must be in 0..{spec.n}, got {depth}")
    return list(_walk(spec, depth, (), Fraction(1)))
