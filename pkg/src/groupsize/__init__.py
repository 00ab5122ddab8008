"""Size properties (large, thick, small, thin, sparse, P-small, ...) of
describable subsets of finitely generated groups, with bounded three-valued
evaluation, exact rules for eventually periodic subsets of Z, and
replayable certificates."""

from .borel import GLOBAL, TO_DEPTH, TV, Budget, Verdict, evaluate, replay
from .checkers import (
    ClassificationReport, InconsistencyError, check_almost_psmall, check_extralarge, check_large,
    check_near_psmall, check_prethick, check_psmall, check_scattered, check_small, check_sparse,
    check_T, check_thick, check_thin, check_weakly_psmall, classify, replay_verdict,
    tamper_verdict, tree_large, tree_prethick, tree_thick, tree_thin,
)
from .dsl import DSLError, parse, parse_file
from .fp import contains_fp, contains_pws_fp, fp_elements, hindman_check, hindman_sweep
from .groups import Group, ball, parse_element, parse_group
from .oracle import brute_force, classify_periodic, oracle_verdicts
from .periodic import PeriodicSpec
from .subsets import (
    Blocks, Complement, Cylinder, EventuallyPeriodic, Finite, FPSet, Intersection, Residues,
    Sequence, Translate, Union, cylinder_contains, finiteness, member, translate, window,
)
from .tags import Prop

__version__ = "0.1.0"
