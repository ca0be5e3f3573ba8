from chein_helper.classifier import Condition, classify_identity, classify_set, condition_holds, default_battery
from chein_helper.engine import collect_identities, delta_usage, evaluate_term
from chein_helper.error import CheinError, log
from chein_helper.group import FiniteGroup, StarMap, enumerate_star_maps, load_group
from chein_helper.loop import LoopTable, build_loop, check_isomorphism
from chein_helper.search import diff_against_golden, enumerate_quadruples, load_goldens, run_search
from chein_helper.term import builtin_identities, parse_identity
from chein_helper.theta import MultQuadruple, ThetaElem
from chein_helper.word import GroupIdentity, GroupWord, canonicalize

__all__ = [
    "Condition",
    "classify_identity",
    "classify_set",
    "condition_holds",
    "default_battery",
    "collect_identities",
    "delta_usage",
    "evaluate_term",
    "CheinError",
    "log",
    "FiniteGroup",
    "StarMap",
    "enumerate_star_maps",
    "load_group",
    "LoopTable",
    "build_loop",
    "check_isomorphism",
    "diff_against_golden",
    "enumerate_quadruples",
    "load_goldens",
    "run_search",
    "builtin_identities",
    "parse_identity",
    "MultQuadruple",
    "ThetaElem",
    "GroupIdentity",
    "GroupWord",
    "canonicalize",
]
