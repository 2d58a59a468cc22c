"""
Runner
------
Runs a validated scenario and assembles its report.

Every kind maps to one runner returning the serialized result, the verdict and the proxies
the result relies on. Suites are evaluated item by item, in suite order.
"""

from __future__ import annotations
import logging
import time
from typing import Any, Callable, Dict, List, Tuple

from tqdm import tqdm

from tiltkit.algebra.complexes import BoundedComplex
from tiltkit.algebra.types import VerificationError
from tiltkit.derived import (
    TiltingPair,
    complex_suite,
    heart_test,
    roundtrip_check,
    tilting_truncate,
    vanishing_holds,
)
from tiltkit.pro import check_monad_laws
from tiltkit.scenarios import adelic_verify, matlis_verify
from tiltkit.tilting import good_tilting_check, gorenstein_check, sample_modules, tilting_check
from .report import Report
from .scenario import (
    AdelicScenario,
    ComplexScenario,
    GorensteinScenario,
    MatlisScenario,
    MonadFuzzScenario,
    RoundTripScenario,
    Scenario,
    TiltingCheckScenario,
    TruncateScenario,
    resolve_algebra,
    resolve_module,
)

logger = logging.getLogger(__name__)

Outcome = Tuple[Dict[str, Any], bool, List[str]]

EXIT_VERIFIED = 0
EXIT_INPUT_ERROR = 1
EXIT_NEGATIVE = 2


def _run_tilting_check(scenario: TiltingCheckScenario) -> Outcome:
    algebra = resolve_algebra(scenario.algebra)
    module = resolve_module(scenario.module, algebra)
    report = tilting_check(module, scenario.degree, scenario.seed, scenario.samples)
    result = report.model_dump(mode="json")
    verdict = report.verdict
    if scenario.good and verdict:
        good = good_tilting_check(module, scenario.degree, sample_modules(algebra, scenario.seed, scenario.samples))
        result["good"] = {**good.model_dump(mode="json"), "verdict": good.verdict}
    return result, verdict, report.proxies


def _suite(scenario: ComplexScenario, pair: TiltingPair, over_endomorphisms: bool = False) -> List[BoundedComplex]:
    algebra = pair.ring if over_endomorphisms else pair.algebra
    loaded = scenario.complexes(algebra)
    if loaded is not None:
        return loaded
    return list(complex_suite(algebra, scenario.seed, scenario.count))


def _pair(scenario: ComplexScenario) -> TiltingPair:
    algebra = resolve_algebra(scenario.algebra)
    return TiltingPair(resolve_module(scenario.tilting, algebra), scenario.degree)


def _run_truncate(scenario: TruncateScenario) -> Outcome:
    pair = _pair(scenario)
    items = []
    for x in tqdm(_suite(scenario, pair), desc="truncate", leave=False, disable=None):
        decomposition = tilting_truncate(pair, x)
        lower, upper = decomposition.homology_degrees()
        heart = heart_test(pair, x)
        items.append(
            {
                "complex": repr(x),
                "homology": x.homology_dims(),
                "lower": lower,
                "upper": upper,
                "exact": decomposition.is_exact(),
                "euler": decomposition.euler_matches(),
                "vanishing": vanishing_holds(pair, decomposition),
                "heart": heart.verdict,
                "image_homology": heart.homology,
            }
        )
    verdict = all(item["exact"] and item["euler"] and item["vanishing"] for item in items)
    return {"tilting": repr(pair.tilting), "items": items}, verdict, []


def _run_roundtrip(scenario: RoundTripScenario) -> Outcome:
    pair = _pair(scenario)
    items = []
    suite = _suite(scenario, pair, over_endomorphisms=scenario.direction.value == "B")
    for x in tqdm(suite, desc="roundtrip", leave=False, disable=None):
        try:
            certificate = roundtrip_check(pair, x, scenario.direction)
            items.append({"complex": repr(x), **certificate.model_dump(mode="json")})
        except VerificationError as error:
            logger.warning(f"{error}")
            items.append({"complex": repr(x), "certified": False, "failure": str(error), "witness": error.witness})
    verdict = all(item["certified"] for item in items)
    return {"tilting": repr(pair.tilting), "direction": scenario.direction.value, "items": items}, verdict, []


def _run_matlis(scenario: MatlisScenario) -> Outcome:
    report = matlis_verify(scenario.s, scenario.precision, scenario.seed)
    return report.model_dump(mode="json"), report.verified, []


def _run_adelic(scenario: AdelicScenario) -> Outcome:
    report = adelic_verify(scenario.primes, scenario.precision, scenario.seed)
    proxies = ["the ring of adeles is modelled as a tower of level quotients only"]
    return report.model_dump(mode="json"), report.verified, proxies


def _run_monad_fuzz(scenario: MonadFuzzScenario) -> Outcome:
    ring = scenario.proring.build()
    check = check_monad_laws(ring, scenario.index, scenario.seed, scenario.precision, scenario.instances)
    result = {
        "ring": ring.name,
        "instances": check.instances,
        "failures": [{"instance": k, "law": law, "level": n} for k, law, n in check.failures],
    }
    return result, check.passed, []


def _run_gorenstein(scenario: GorensteinScenario) -> Outcome:
    report = gorenstein_check(resolve_algebra(scenario.algebra), scenario.degree)
    return report.model_dump(mode="json"), report.verdict, []


RUNNERS: Dict[str, Callable[[Scenario], Outcome]] = {
    "tilting-check": _run_tilting_check,
    "truncate": _run_truncate,
    "roundtrip": _run_roundtrip,
    "matlis": _run_matlis,
    "adelic": _run_adelic,
    "monad-fuzz": _run_monad_fuzz,
    "gorenstein": _run_gorenstein,
}


def run(scenario: Scenario) -> Tuple[Report, int]:
    """
    Run `scenario` and return its report with the exit code: 0 when verified, 2 on a negative verdict.

    Input errors (unreadable files, malformed formats, invalid parameters) propagate to the caller.
    """
    start = time.perf_counter()
    result, verdict, proxies = RUNNERS[scenario.kind](scenario)
    report = Report(
        kind=scenario.kind,
        seed=scenario.seed,
        precision=scenario.precision,
        verdict=verdict,
        result=result,
        proxies=proxies,
        timing=round(time.perf_counter() - start, 3),
    )
    logger.info(f"Scenario {scenario.kind} with seed {scenario.seed}: {'verified' if verdict else 'negative'}")
    return report, EXIT_VERIFIED if verdict else EXIT_NEGATIVE
