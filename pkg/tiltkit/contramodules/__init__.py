# -*- coding: utf-8 -*-
# flake8: noqa: F401

from .presentation import Contramodule
from .discrete import (
    AdjunctionCertificate,
    Contratensor,
    DiscreteModule,
    HomContramodule,
    adjunction_check,
    contratensor,
    hom_action,
    hom_contramodule,
)
from .completion import (
    CompletionReport,
    IdealQuotient,
    ProLimit,
    Tower,
    completion_map_check,
    ideal_action_subgroup,
    pl_limit,
)
from .morita import MoritaTransport, morita_transport
