# -*- coding: utf-8 -*-
# flake8: noqa: F401

from .levels import AlgebraRing, Integers, IntegersMod, LevelRing, MatrixRing, ProductRing
from .elements import CountableIndex, FreeContraElement, ProElement, make_index
from .pro_ring import (
    AdicProRing,
    DiscreteProRing,
    MatrixProRing,
    ProductProRing,
    ProRing,
    levels_match,
    make_discrete,
    make_matrix_pro_ring,
    make_product,
    make_s_completion,
)
from .monad import (
    LawCheck,
    assert_monad_laws,
    check_monad_laws,
    flatten,
    inside,
    level_quotient,
    monad_mult,
    monad_unit,
    random_combination,
    random_free_element,
)
