# -*- coding: utf-8 -*-
# flake8: noqa: F401

from .matlis import (
    INDEX_SIZES,
    MatlisReport,
    TowerCheck,
    crt_split,
    ext_identification,
    ext_tower,
    matlis_verify,
    w_tower,
)
from .adelic import (
    AdelicReport,
    SequenceLevel,
    TriangularElement,
    TriangularLevel,
    adelic_verify,
    multiplication_check,
    principal_part,
    sequence_level,
)
