import pytest

from tiltkit.tilting import cotorsion_approx, generation_certificate, good_tilting_check, sample_modules
from tiltkit.utils.testing import a2_algebra, a2_modules, a2_tilting

ALGEBRA = a2_algebra()
TILTING = a2_tilting(ALGEBRA)
MODULES = a2_modules(ALGEBRA)


@pytest.mark.parametrize("name", sorted(MODULES))
def test_approximation_sequences(name):
    pair = cotorsion_approx(MODULES[name], TILTING, 1)
    assert pair.is_exact()
    assert pair.certified
    assert not any(pair.orthogonality().values())


def test_members_approximate_themselves():
    pair = cotorsion_approx(MODULES["P1"], TILTING, 1)
    assert pair.preenvelope.right.is_zero
    assert pair.preenvelope.middle.dim == MODULES["P1"].dim


def test_generation_certificate():
    certificate = generation_certificate(MODULES["I1"], TILTING, 1)
    assert certificate.verified
    assert certificate.is_exact()
    assert certificate.maps[0].target.dim == 1


def test_good_tilting():
    report = good_tilting_check(TILTING, 1, sample_modules(ALGEBRA, seed=0, count=2))
    assert report.perfect
    assert report.verdict
    assert "S2" in report.skipped
    assert "P1" in report.counit
