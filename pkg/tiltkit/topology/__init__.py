# -*- coding: utf-8 -*-
# flake8: noqa: F401

from .colimit import ColimitModule, EndomorphismProRing, endo_topology_colim
from .endomorphisms import (
    AlgebraInvariants,
    EndomorphismAlgebra,
    algebra_invariants,
    endo_topology_fp,
    endomorphism_algebra,
    invariants_match,
)
from .equivalence import AddEquivalenceReport, LevelMatch, add_equiv_check
from .convergence import ConvergenceSample, sample_zero_convergence
