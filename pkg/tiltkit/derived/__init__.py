# -*- coding: utf-8 -*-
# flake8: noqa: F401

from .replacement import (
    REPLACEMENT_CAP,
    Replacement,
    coresolving_replacement,
    derived_hom_dim,
    hom_complex_dim,
    homotopy_matches,
    resolving_replacement,
)
from .functors import DerivedImage, TiltingPair, hom_map, homology, ltensor_t, rhom_t
from .roundtrip import Direction, RoundTripCertificate, roundtrip_check
from .tstructure import (
    HeartTest,
    TStructureDecomposition,
    heart_test,
    theta_check,
    tilting_truncate,
    truncate_above,
    truncate_below,
    vanishing_holds,
)
from .sampling import TOTAL_DIM_CAP, complex_suite, random_add_complex, random_complex
