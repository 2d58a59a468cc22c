# -*- coding: utf-8 -*-
# flake8: noqa: F401

from .report import SCHEMA_VERSION, Report
from .scenario import (
    KINDS,
    AdelicScenario,
    GorensteinScenario,
    MatlisScenario,
    MonadFuzzScenario,
    ProRingSpec,
    RoundTripScenario,
    Scenario,
    TiltingCheckScenario,
    TruncateScenario,
    default_seed,
    load_scenario,
    resolve_algebra,
    resolve_module,
)
from .cli import EXIT_INPUT_ERROR, EXIT_NEGATIVE, EXIT_VERIFIED, RUNNERS, run
