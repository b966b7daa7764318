"""Exact simulation and link classification of symmetric Dicke states."""
from .dicke import (
    ClosedFormProfile,
    DickeSpec,
    binomial,
    closed_form_profile,
    coherence_argmax,
    dicke_state,
    ghz_state,
    inverted_w_state,
    recognize_dicke,
    residual_spec,
    w_state,
)
from .measurement import (
    ABSORBED,
    CascadeTrace,
    MeasurementRecord,
    branch_table,
    enumerate_tree,
    project,
    sample_cascade,
)
from .quantifiers import (
    SchmidtResult,
    Verdict,
    entanglement_verdict,
    l1_coherence,
    l1_coherence_density,
    schmidt,
)
from .statevector import (
    BasisIndex,
    Statevector,
    bipartition_matrix,
    fidelity,
    inner_product,
    make_state,
)
from .topology import (
    Density,
    FluidityReport,
    LinkKind,
    TopologyClass,
    classify_by_probe,
    classify_dicke,
    fluidity,
)

__version__ = "0.1.0"
