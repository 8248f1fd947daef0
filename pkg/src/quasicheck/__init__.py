"""Finite-model engine for quasigroup identities and the N1-implies-loop theorem."""

from .magma import (
    CayleyTable,
    EndoAnalysis,
    EndoMap,
    LatinVerdict,
    Quasigroup,
    analyze_endomap,
    check_latin,
    identity_element,
    j_map,
    k_map,
    ldiv,
    mul,
    rdiv,
)
from .identities import (
    HoldsVerdict,
    Identity,
    IdentitySyntaxError,
    Node,
    Op,
    Term,
    Var,
    builtin_n1,
    eval_term,
    format_identity,
    format_term,
    holds,
    parse_identity,
)
from .collapse import (
    BijectionFamily,
    CollapseVerdict,
    Partition,
    check_regularity,
    collapse_check,
    generated_partition,
    left_translations,
    right_translations,
)
from .kunen import (
    KunenReport,
    ScanSummary,
    StepResult,
    STEP_ORDER,
    check_left_invariance,
    check_right_involution,
    check_star_step,
    exhaustive_scan,
    verify_kunen,
)
from .search import (
    CountResult,
    SearchSpec,
    canonical_form,
    count_models,
    enumerate_tables,
    find_witness,
    random_latin_square,
)
from .tableio import (
    TableFormatError,
    format_table,
    format_table_stream,
    parse_table_stream,
    parse_table_text,
    read_table,
    write_table,
)

__all__ = [name for name in dir() if not name.startswith("_")]
