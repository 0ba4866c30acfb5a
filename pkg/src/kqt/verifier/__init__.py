"""Brute-force oracles and the reproducible verification suites."""

from .oracles import oracle_classify, oracle_is_kqt
from .suites import (
    FailureRecord,
    InstanceRecipe,
    SuiteReport,
    check_theorem3_instance,
    instance_seed,
    random_digraph,
    run_converse_suite,
    run_lemma6_suite,
    run_oracle_suite,
    run_theorem2_scan,
    run_theorem3_suite,
    semicomplete_path_instance,
    splitmix64,
    theorem3_recipe,
)
