"""Integer set pairs with identical representation functions.

Core objects: dense bit-vector sets (:class:`IntSet`), representation
profiles with a fast convolution path and a naive oracle, the certified
doubling step with its translation schedules, finite-prefix claim
checkers, and exhaustive interval-cover searches with a step inverse.
"""

from ._kernels import available_backends, current_backend, set_backend, use_backend
from .construct import (
    BuildResult,
    LemmaStepCert,
    Schedule,
    attempt_lemma_step,
    build_prefix,
    lemma_step,
    step_log,
    untruncated_bound,
)
from .errors import BoundExceeded, PreconditionViolated, SetFileError
from .intset import IntSet, parse_set_text, read_set_file, write_set_file
from .repcore import (
    RepProfile,
    cross_pair_counts,
    difference_witness,
    in_difference,
    in_self_difference,
    ordered_pair_counts,
    rep_profile,
    rep_profile_naive,
    set_difference,
    set_intersection,
    set_union,
    translate,
)
from .search import (
    SearchReport,
    decompose,
    decompose_fully,
    enumerate_p2,
    replay_chain,
)
from .verify import (
    PairReport,
    StepCondition,
    detect_intersection_ap,
    detect_interval_union,
    union_covered_prefix,
    verify_equal_rep,
    verify_lemma_claims,
    verify_pair,
    verify_theorem,
)

__version__ = "0.1.0"
