"""Exact computation with automorphisms of the regular n-ary rooted tree.

The package centres on the adding machine ``tau`` and its n-adic powers.
Elements are evaluated lazily through wreath recursion and compared either
level by level or exactly by bisimulation.
"""

from .nadic import NAdic, NAdicError, delta2, delta3, parse_rational
from .perms import Perm, from_cycles, full_cycle, parse_cycles
from .treeaut import (
    TreeAut,
    TreeAutError,
    Verdict,
    apply_vertex,
    commutator,
    compose,
    conj,
    equal_bisim,
    equal_to_depth,
    first_difference,
    identity,
    inverse,
    portrait,
    power_int,
    rigid,
    section,
    state_graph,
    tau_pow_adic,
    wreath,
)
from .elements import (
    ConjugationError,
    build_normalizer_conjugator,
    conjugate_to_tau,
    eps,
    iota,
    lambda_,
    psi4,
    tau,
    theta4,
)
from .exprlang import EvalError, ParseError, evaluate, parse, unparse
from .relations import SuiteReport, run_suite

__version__ = "0.1.0"
