"""
Scenario
--------
Scenario files: YAML documents with a ``kind`` key and the parameters of that kind.

Files are loaded with `OmegaConf`, merged with dot-list overrides from the command line
and validated into one of the models below. Unknown keys are rejected.

Algebras and modules are given either as a path to a file in the text formats of
:py:mod:`tiltkit.algebra.parser` or as the name of a built-in fixture
(see :py:mod:`tiltkit.utils.testing.fixtures`).
"""

from __future__ import annotations
import logging
import os
from pathlib import Path
from typing import List, Literal, Optional, Sequence, Union

from omegaconf import OmegaConf
from pydantic import BaseModel, Field, TypeAdapter
from typing_extensions import Annotated

from tiltkit.algebra.complexes import BoundedComplex
from tiltkit.algebra.fd_algebra import FdAlgebra
from tiltkit.algebra.modules import Module
from tiltkit.algebra.parser import load_complex, load_module, load_quiver
from tiltkit.derived import Direction
from tiltkit.pro import IntegersMod, ProRing, make_discrete, make_matrix_pro_ring, make_s_completion
from tiltkit.utils.testing.fixtures import ALGEBRAS, MODULES

logger = logging.getLogger(__name__)

SEED_VARIABLE = "TILTKIT_SEED"


def default_seed() -> int:
    """
    The seed used when a scenario names none: ``TILTKIT_SEED`` if set, else 0.
    """
    value = os.getenv(SEED_VARIABLE)
    if value is None:
        return 0
    try:
        return int(value)
    except ValueError as error:
        raise ValueError(f"{SEED_VARIABLE} must be an integer, got {value!r}") from error


def resolve_algebra(source: str) -> FdAlgebra:
    if source in ALGEBRAS:
        return ALGEBRAS[source]()
    return load_quiver(source, name=Path(source).stem)


def resolve_module(source: str, algebra: FdAlgebra) -> Module:
    if source in MODULES:
        return MODULES[source](algebra)
    return load_module(source, algebra)


class ProRingSpec(BaseModel, extra="forbid"):
    """
    ``{kind: s-adic, s: 2}``, ``{kind: discrete, modulus: 6}`` or ``{kind: matrix, base: {...}, size: 2}``.
    """

    kind: Literal["s-adic", "discrete", "matrix"]
    s: Optional[int] = Field(None, ge=2)
    modulus: Optional[int] = Field(None, ge=1)
    base: Optional[ProRingSpec] = None
    size: int = Field(2, ge=1)

    def build(self) -> ProRing:
        if self.kind == "s-adic":
            if self.s is None:
                raise ValueError("An s-adic pro-ring needs 's'")
            return make_s_completion(self.s)
        if self.kind == "discrete":
            if self.modulus is None:
                raise ValueError("A discrete pro-ring needs 'modulus'")
            return make_discrete(IntegersMod(self.modulus))
        if self.base is None:
            raise ValueError("A matrix pro-ring needs 'base'")
        return make_matrix_pro_ring(self.base.build(), range(self.size))


class ScenarioBase(BaseModel, extra="forbid"):
    seed: int = Field(default_factory=default_seed)
    precision: int = Field(8, ge=1)


class TiltingCheckScenario(ScenarioBase):
    kind: Literal["tilting-check"] = "tilting-check"
    algebra: str = "a2"
    module: str = "T"
    degree: int = Field(1, ge=0)
    samples: int = Field(4, ge=0)
    """
    Random modules added to the indecomposables when testing generation.
    """
    good: bool = False
    """
    Also run the good tilting check when the module is tilting.
    """


class ComplexScenario(ScenarioBase):
    algebra: str = "a2"
    tilting: str = "T"
    degree: int = Field(1, ge=0)
    complex: Optional[str] = None
    """
    Path to a complex file; when omitted, `count` random complexes are drawn from `seed`.
    """
    count: int = Field(20, ge=1)

    def complexes(self, algebra: FdAlgebra) -> Optional[List[BoundedComplex]]:
        if self.complex is None:
            return None
        return [load_complex(self.complex, algebra)]


class TruncateScenario(ComplexScenario):
    kind: Literal["truncate"] = "truncate"


class RoundTripScenario(ComplexScenario):
    kind: Literal["roundtrip"] = "roundtrip"
    direction: Direction = Direction.ALGEBRA


class MatlisScenario(ScenarioBase):
    kind: Literal["matlis"] = "matlis"
    s: int = Field(2, ge=2)


class AdelicScenario(ScenarioBase):
    kind: Literal["adelic"] = "adelic"
    primes: List[int] = [2, 3]
    precision: int = Field(4, ge=1)


class MonadFuzzScenario(ScenarioBase):
    kind: Literal["monad-fuzz"] = "monad-fuzz"
    proring: ProRingSpec = ProRingSpec(kind="s-adic", s=2)
    index: List[str] = ["x", "y"]
    instances: int = Field(100, ge=1)


class GorensteinScenario(ScenarioBase):
    kind: Literal["gorenstein"] = "gorenstein"
    algebra: str = "dual-numbers"
    degree: int = Field(1, ge=0)


Scenario = Annotated[
    Union[
        TiltingCheckScenario,
        TruncateScenario,
        RoundTripScenario,
        MatlisScenario,
        AdelicScenario,
        MonadFuzzScenario,
        GorensteinScenario,
    ],
    Field(discriminator="kind"),
]

KINDS = ("tilting-check", "truncate", "roundtrip", "matlis", "adelic", "monad-fuzz", "gorenstein")


def load_scenario(
    path: Optional[Union[str, Path]] = None, overrides: Sequence[str] = (), kind: Optional[str] = None
) -> Scenario:
    """
    Load a scenario file, apply dot-list overrides and validate the result.

    :param path: YAML file; when omitted, the scenario is built from `overrides` alone.
    :param overrides: Items such as ``precision=4`` or ``proring.s=3``.
    :param kind: Kind implied by the subcommand; must agree with the file if both name one.
    :raises pydantic.ValidationError: On unknown keys or invalid values.
    """
    config = OmegaConf.load(path) if path is not None else OmegaConf.create({})
    config = OmegaConf.merge(config, OmegaConf.from_dotlist(list(overrides)))
    data = OmegaConf.to_container(config, resolve=True)
    if not isinstance(data, dict):
        raise ValueError(f"Scenario {path} must be a mapping")
    if kind is not None:
        if data.setdefault("kind", kind) != kind:
            raise ValueError(f"Scenario {path} is of kind {data['kind']!r}, not {kind!r}")
    scenario = TypeAdapter(Scenario).validate_python(data)
    logger.debug(f"Loaded scenario {scenario!r}")
    return scenario
