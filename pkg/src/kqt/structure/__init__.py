"""Frame analysis: forced arcs, witnesses, classification and the outside partition."""

from .classify import (
    BIPARTITE,
    EMPTY,
    FN,
    OTHER,
    SEMICOMPLETE,
    StructureClass,
    classify_frame,
    classify_induced,
    classify_outside,
    fn_arcs,
    fn_digraph,
    is_Fn,
)
from .frame import (
    ShortestPathFrame,
    WitnessPath,
    check_bipartite_subdigraph,
    check_hypotheses,
    check_lemma4,
    check_outside_forcing,
    check_proposition2,
    find_frame,
    frame_from_path,
    locate_frame,
    proposition2_arcs,
    semicomplete_trigger,
    witness_path,
    witness_path_diff_parity,
    witness_path_same_parity,
)
from .outside import (
    OutsidePartition,
    check_lemma10,
    check_lemma11,
    check_outside_claims,
    check_rotation,
    partition_outside,
)
from .pipeline import Classification, check_witnesses, classify_all
from .report import Check, Report
from .semicomplete import (
    cycle_adjacency_check,
    cycle_rotation_step,
    propagate_adjacency_check,
    rotation_orbit,
    semicomplete_backpath,
)
