"""Vanishing and high-weight criteria for Kleshchev lowering operators on
costandard GL(n)-modules in characteristic p, with a brute-force module
oracle to check them against."""

from .criteria import (
    Classification,
    GoodSet,
    Injection,
    Kind,
    classify,
    enumerate_good_A,
    exists,
    thm2_vanishes,
    thm4_vanishes,
)
from .errors import ConsistencyError, DomainError, InputError, LoweringError
from .seqgraph import Quad, closure, make_seq, transitions, vanishes_thm1
from .weights import BranchingPair

__all__ = [
    "BranchingPair",
    "Classification",
    "ConsistencyError",
    "DomainError",
    "GoodSet",
    "InputError",
    "Injection",
    "Kind",
    "LoweringError",
    "Quad",
    "classify",
    "closure",
    "enumerate_good_A",
    "exists",
    "make_seq",
    "thm2_vanishes",
    "thm4_vanishes",
    "transitions",
    "vanishes_thm1",
]

__version__ = "0.1.0"
