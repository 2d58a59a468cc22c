import pytest

from tiltkit.algebra.fd_algebra import dual_numbers
from tiltkit.algebra.modules import Module
from tiltkit.tilting import (
    check_coresolution,
    check_pd,
    check_self_ext,
    cotilting_check_findim,
    ext_table,
    gorenstein_check,
    in_tilting_class,
    preenvelope_step,
    sample_modules,
    tilting_check,
)
from tiltkit.utils.testing import a2_algebra, a2_modules, a2_semisimple, a2_tilting


@pytest.fixture
def algebra():
    return a2_algebra()


def test_projective_dimensions(algebra):
    modules = a2_modules(algebra)
    assert check_pd(modules["P1"], 0).verdict
    assert check_pd(modules["S1"], 1).dimension == 1
    failed = check_pd(modules["S1"], 0)
    assert not failed.verdict
    assert failed.witness is not None


def test_self_extensions(algebra):
    assert check_self_ext(a2_tilting(algebra), 1).verdict
    semisimple = check_self_ext(a2_semisimple(algebra), 1)
    assert not semisimple.verdict
    assert semisimple.failing_degree == 1
    assert semisimple.table == {1: 1}


def test_coresolution_of_the_regular_module(algebra):
    coresolution = check_coresolution(a2_tilting(algebra), 1)
    assert coresolution.verdict
    assert coresolution.length <= 1
    assert coresolution.is_exact()
    assert not check_coresolution(a2_modules(algebra)["S1"], 1).verdict


def test_the_tilting_module(algebra):
    report = tilting_check(a2_tilting(algebra), 1)
    assert report.verdict
    assert report.conditions == {"i": True, "ii": True, "iii_m": True}
    assert report.projective_dimension == 1
    assert report.agrees
    assert report.endomorphism_invariants == [3, 1, 1, 0]
    assert "coresolution" in report.witnesses
    assert report.certificates
    assert all(certificate.verified for certificate in report.certificates.values())


def test_simple_fails_the_coresolution(algebra):
    report = tilting_check(a2_modules(algebra)["S1"], 1)
    assert not report.verdict
    assert report.conditions["i"] and report.conditions["ii"]
    assert not report.conditions["iii_m"]
    assert report.failed_stage == 0
    assert report.witnesses["stage"]["index"] == 0
    assert report.endomorphism_invariants is None


def test_semisimple_has_self_extensions(algebra):
    report = tilting_check(a2_semisimple(algebra), 1)
    assert not report.verdict
    assert not report.conditions["ii"]
    assert report.ext_table == {1: 1}
    assert report.witnesses["ext_degree"] == 1


def test_regular_module_is_zero_tilting(algebra):
    report = tilting_check(Module.regular(algebra), 0)
    assert report.verdict
    assert report.coresolution_length == 0


def test_report_excludes_certificates(algebra):
    dumped = tilting_check(a2_tilting(algebra), 1).model_dump()
    assert "endomorphisms" not in dumped
    assert "certificates" not in dumped
    assert dumped["proxies"]


def test_tilting_class(algebra):
    modules = a2_modules(algebra)
    tilting = a2_tilting(algebra)
    assert in_tilting_class(modules["P1"], tilting, 1)
    assert in_tilting_class(modules["S1"], tilting, 1)
    assert not in_tilting_class(modules["S2"], tilting, 1)
    assert ext_table(tilting, modules["P2"], 1) == {1: 1}


def test_sample_modules(algebra):
    samples = sample_modules(algebra, seed=3, count=2)
    assert list(samples) == ["P1", "I1", "S1", "P2", "I2", "S2", "random0", "random1"]
    assert list(sample_modules(dual_numbers(), count=0)) == ["P1", "I1", "S1"]


@pytest.mark.parametrize(["degree", "verdict"], [(0, False), (1, True), (2, True)])
def test_gorenstein_path_algebra(algebra, degree, verdict):
    report = gorenstein_check(algebra, degree)
    assert report.verdict is verdict
    assert report.tilting is verdict


def test_dual_numbers_are_self_injective():
    report = gorenstein_check(dual_numbers(), 0)
    assert report.verdict
    assert report.injectives_pd == 0


def test_cotilting(algebra):
    report = cotilting_check_findim(a2_tilting(algebra), 1)
    assert report.verdict
    assert report.conditions == {"i*": True, "ii*": True, "iii*": True}
    assert report.proxies

    semisimple = cotilting_check_findim(a2_semisimple(algebra), 1, power_bound=2)
    assert not semisimple.conditions["ii*"]
    assert sorted(semisimple.ext_table) == [1, 2]


def test_preenvelope_step(algebra):
    tilting = a2_tilting(algebra)
    step = preenvelope_step(Module.regular(algebra), tilting)
    assert step.is_injective
    assert step.power == 3
    assert step.cokernel.compose(step.map).is_zero()
    zero = preenvelope_step(Module.zero(algebra), tilting)
    assert zero.power == 0
    assert zero.cokernel.target.is_zero
