# -*- coding: utf-8 -*-
# flake8: noqa: F401

from .conditions import (
    Coresolution,
    ExtCheck,
    PdCheck,
    Preenvelope,
    add_coresolution,
    check_coresolution,
    check_pd,
    check_self_ext,
    preenvelope_step,
)
from .classes import (
    GenerationCertificate,
    GenerationCheck,
    check_generated_by_t,
    check_quotients_of_l,
    ext_table,
    generation_certificate,
    in_tilting_class,
    lift_from_l,
    sample_modules,
)
from .approximation import ApproxPair, cotorsion_approx
from .check import TiltingReport, tilting_check
from .good import GoodTiltingReport, counit, good_tilting_check, hom_module, tilting_bimodule
from .gorenstein import (
    POWER_BOUND,
    CotiltingReport,
    GorensteinReport,
    cotilting_check_findim,
    cotilting_dual,
    gorenstein_check,
)
