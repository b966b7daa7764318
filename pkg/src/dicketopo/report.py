"""Aggregated per-state reports shared by the command-line front end."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .dicke import (
    ClosedFormProfile,
    DickeSpec,
    closed_form_profile,
    dicke_state,
    ghz_state,
    residual_spec,
    w_state,
)
from .exceptions import TooLargeError
from .measurement import MeasurementRecord, branch_table, format_float
from .quantifiers import SchmidtResult, l1_coherence, schmidt, schmidt_all_cuts
from .statevector import Statevector, fidelity
from .topology import (
    FluidityReport,
    TopologyClass,
    classify_by_probe,
    classify_dicke,
    fluidity,
)

__all__ = [
    "ORACLE_MAX_QUBITS",
    "DISCREPANCY_TOL",
    "SWEEP_COLUMNS",
    "Discrepancy",
    "OracleResult",
    "AnalysisReport",
    "analyze",
    "sweep_rows",
    "write_sweep_csv",
    "read_sweep_csv",
    "compare",
]

ORACLE_MAX_QUBITS = 12
DISCREPANCY_TOL = 1e-9
SWEEP_COLUMNS = (
    "n", "k", "dim", "coherence", "p0", "p1", "lambda1", "lambda2", "rank", "class", "density",
)


@dataclass(frozen=True)
class Discrepancy:
    field: str
    closed_form: float
    oracle: float
    delta: float

    def as_dict(self) -> dict:
        return {
            "field": self.field,
            "closed_form": format_float(self.closed_form),
            "oracle": format_float(self.oracle),
            "abs_delta": format_float(self.delta),
        }


@dataclass(frozen=True)
class OracleResult:
    coherence: float
    schmidt: SchmidtResult
    branch_table: tuple[MeasurementRecord, ...]
    probe_class: Optional[TopologyClass] = None

    def as_dict(self) -> dict:
        return {
            "coherence": format_float(self.coherence),
            "schmidt": {
                **self.schmidt.as_dict(),
                "coefficients": [format_float(c) for c in self.schmidt.coefficients],
            },
            "branch_table": [
                {**r.as_dict(), "possible": r.possible} for r in self.branch_table
            ],
            "probe_class": None if self.probe_class is None else self.probe_class.as_dict(),
        }


def _profile_dict(p: ClosedFormProfile) -> dict:
    return {
        "dim": p.dim,
        "coherence": p.coherence,
        "p0": format_float(p.p0),
        "p1": format_float(p.p1),
        "p0_exact": str(p.p0),
        "p1_exact": str(p.p1),
        "lambda1": format_float(p.schmidt_coeffs[0]),
        "lambda2": format_float(p.schmidt_coeffs[1]),
        "schmidt_rank": p.schmidt_rank,
    }


@dataclass(frozen=True)
class AnalysisReport:
    spec: DickeSpec
    closed_form: ClosedFormProfile
    topology: TopologyClass
    fluidity: FluidityReport
    oracle: Optional[OracleResult] = None
    discrepancies: tuple[Discrepancy, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def as_dict(self) -> dict:
        return {
            "spec": self.spec.as_dict(),
            "closed_form": _profile_dict(self.closed_form),
            "oracle": None if self.oracle is None else self.oracle.as_dict(),
            "topology": self.topology.as_dict(),
            "fluidity": self.fluidity.as_dict(),
            "discrepancies": [d.as_dict() for d in self.discrepancies],
        }

    def sweep_row(self) -> dict:
        p = self.closed_form
        return {
            "n": p.spec.n,
            "k": p.spec.k,
            "dim": p.dim,
            "coherence": p.coherence,
            "p0": format_float(p.p0),
            "p1": format_float(p.p1),
            "lambda1": format_float(p.schmidt_coeffs[0]),
            "lambda2": format_float(p.schmidt_coeffs[1]),
            "rank": p.schmidt_rank,
            "class": self.topology.kind.value,
            "density": self.topology.density.value,
        }


def _run_oracle(spec: DickeSpec, profile: ClosedFormProfile, topo: TopologyClass):
    state = dicke_state(spec)
    coh = l1_coherence(state)
    table = tuple(branch_table(state, 1)) if spec.n >= 1 else ()
    sch = schmidt(state, 1) if spec.n >= 2 else None
    probe_cls = classify_by_probe(state) if spec.n >= 3 else None

    found: list[Discrepancy] = []

    def check(name: str, expected: float, got: float) -> None:
        delta = abs(expected - got)
        if not delta < DISCREPANCY_TOL:
            found.append(Discrepancy(name, float(expected), float(got), delta))

    check("coherence", profile.coherence, coh)
    check("p0", float(profile.p0), table[0].probability)
    check("p1", float(profile.p1), table[1].probability)
    for rec in table:
        if not rec.possible or rec.residual_n == 0:
            continue
        expected = residual_spec(spec, rec.outcome)
        check(f"residual[{rec.outcome}].fidelity", 1.0, fidelity(rec.post_state, dicke_state(expected)))
    if sch is not None:
        expected_coeffs = sorted((c for c in profile.schmidt_coeffs if c > sch.tolerance_used), reverse=True)
        check("schmidt_rank", profile.schmidt_rank, sch.rank)
        for i, (e, g) in enumerate(zip(expected_coeffs, sch.coefficients)):
            check(f"lambda[{i}]", e, g)
    else:
        # one-qubit register: no cut; keep a placeholder result
        sch = SchmidtResult((1.0,), 1, 0.0, False)
    if probe_cls is not None and probe_cls.kind is not topo.kind:
        check("topology.class", 0.0, 1.0)
    return OracleResult(coh, sch, table, probe_cls), tuple(found)


def analyze(spec: DickeSpec, oracle: bool = False) -> AnalysisReport:
    profile = closed_form_profile(spec)
    topo = classify_dicke(spec)
    flu = fluidity(spec)
    if not oracle:
        return AnalysisReport(spec, profile, topo, flu)
    if spec.n > ORACLE_MAX_QUBITS:
        raise TooLargeError(
            f"oracle limited to n <= {ORACLE_MAX_QUBITS}, got n={spec.n}; drop --oracle"
        )
    result, found = _run_oracle(spec, profile, topo)
    return AnalysisReport(spec, profile, topo, flu, result, found)


def sweep_rows(n_max: int, verify: bool = False) -> list[AnalysisReport]:
    return [
        analyze(DickeSpec(n, k), oracle=verify and n <= ORACLE_MAX_QUBITS)
        for n in range(1, n_max + 1)
        for k in range(n + 1)
    ]


def write_sweep_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def read_sweep_csv(text: str) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != SWEEP_COLUMNS:
        raise ValueError(f"unexpected sweep columns: {reader.fieldnames}")
    rows = []
    for raw in reader:
        row = dict(raw)
        for key in ("n", "k", "dim", "coherence", "rank"):
            row[key] = int(row[key])
        rows.append(row)
    return rows


def _state_summary(name: str, state: Statevector, spec: Optional[DickeSpec]) -> dict:
    initial = schmidt(state, 1)
    branches = []
    for rec in branch_table(state, 1):
        entry = {"outcome": rec.outcome, "probability": format_float(rec.probability), "possible": rec.possible}
        if rec.possible and isinstance(rec.post_state, Statevector):
            post = rec.post_state
            ranks = [r.rank for r in schmidt_all_cuts(post)] if post.n_qubits >= 2 else [1]
            entry["residual_ranks"] = ranks
            entry["residual_coherence"] = format_float(l1_coherence(post))
            entry["residual"] = None if rec.residual_spec is None else rec.residual_spec.as_dict()
        branches.append(entry)
    probe_cls = classify_by_probe(state)
    out = {
        "name": name,
        "initial_coherence": format_float(l1_coherence(state)),
        "initial_rank": initial.rank,
        "branches": branches,
        "topology": probe_cls.as_dict(),
    }
    if spec is not None:
        closed = classify_dicke(spec)
        out["spec"] = spec.as_dict()
        out["closed_form_class"] = closed.as_dict()
        out["agrees"] = closed.kind is probe_cls.kind
    return out


def compare(n: int) -> list[dict]:
    """Fragility summary of GHZ_n, W_n and the balanced Dicke state on ``n`` qubits."""
    if not 3 <= n <= ORACLE_MAX_QUBITS:
        raise ValueError(f"compare needs 3 <= n <= {ORACLE_MAX_QUBITS}, got {n}")
    balanced = DickeSpec(n, n // 2)
    return [
        _state_summary(f"GHZ_{n}", ghz_state(n), None),
        _state_summary(f"W_{n}", w_state(n), DickeSpec(n, 1)),
        _state_summary(f"D_{n}^({n // 2})", dicke_state(balanced), balanced),
    ]


def table_text(header: list[str], rows: list[list]) -> str:
    cells = [[str(c) for c in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"

