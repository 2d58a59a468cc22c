# -*- coding: utf-8 -*-
# flake8: noqa: F401

from .types import IntMatrix, IntVector, Side, VerificationError
from .linear import Field, make_field, field_name
from .integers import (
    HomGroup,
    SmithForm,
    ZMap,
    ZModule,
    direct_sum as z_direct_sum,
    integer_nullspace,
    smith_decomposition,
    smith_normal_form,
)
from .fd_algebra import Arrow, FdAlgebra, Quiver, dual_numbers, linear_quiver, path_algebra
from .modules import (
    Module,
    ModuleMap,
    direct_sum,
    dual_map,
    injective,
    map_from_components,
    map_into_components,
    power,
    projective,
    pullback,
    pushout,
    simple,
    vector_dual,
    vertex_module,
)
from .complexes import BoundedComplex, ChainMap, Homology, cone, direct_sum_complex
from .homological import (
    Bimodule,
    Cover,
    HomSpace,
    Resolution,
    TensorProduct,
    Universal,
    dual_regular,
    ext,
    ext_from_resolution,
    hom_dim,
    hom_space,
    injective_dimension,
    injective_envelope,
    is_isomorphic,
    is_projective,
    projective_cover,
    projective_dimension,
    projective_resolution,
    resolve,
    summand_test,
    tensor_map,
    tensor_product,
    tor,
    universal_epi,
    universal_map,
)
from .sequences import ShortExact, cyclic_span, random_module, random_short_exact
from .parser import FormatError, load_complex, load_module, load_quiver, parse_complex, parse_module, parse_quiver
