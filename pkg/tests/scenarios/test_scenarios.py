import json
from fractions import Fraction

import pytest

from tiltkit.algebra import integers
from tiltkit.scenarios import (
    TriangularElement,
    TriangularLevel,
    adelic_verify,
    crt_split,
    matlis_verify,
    multiplication_check,
    principal_part,
    sequence_level,
)
from tiltkit.scenarios.adelic import in_localization, modulo_one
from tiltkit.scenarios.matlis import w_tower
from tiltkit.topology import ColimitModule


def test_matlis_two():
    report = matlis_verify(2, precision=4, seed=0)
    assert report.verified
    assert report.level_moduli == [2, 4, 8, 16]
    assert report.crt_split is None
    assert all(report.ext_identification.values())
    assert report.convergence["agreements"] == report.convergence["families"]


def test_matlis_composite():
    report = matlis_verify(6, precision=3, seed=1, sizes=(1, 2))
    assert report.verified
    assert report.crt_split == {2: 1, 3: 1}
    assert report.crt_verified
    assert sorted(report.ext_identification) == [1, 2]


def test_crt_split():
    assert crt_split(12, 3)
    assert crt_split(30, 2, seed=4)


def test_matlis_errors():
    with pytest.raises(ValueError):
        matlis_verify(1)
    with pytest.raises(ValueError):
        matlis_verify(2, precision=0)


@pytest.mark.slow
@pytest.mark.parametrize("s", [2, 3, 10])
def test_matlis_at_full_precision(s):
    assert matlis_verify(s, precision=8).verified


@pytest.mark.parametrize("s", [2, 3, 10])
def test_w_tower_restrictions(s):
    module = ColimitModule.matlis_torsion(s)
    tower = w_tower(module, 8)
    assert all(group.is_isomorphic(integers.ZModule.cyclic(s**n)) for n, group in enumerate(tower.groups, start=1))
    assert all(structure.is_surjective() for structure in tower.maps)
    for n in range(1, 4):
        upper, lower = module.endomorphisms(n + 1), module.endomorphisms(n)
        inclusion = module.inclusion(n)
        middle = integers.hom(module.stage(n), module.stage(n + 1))
        (factor,) = tower.maps[n - 1].matrix[0]
        restricted = upper.to_map((1,)).compose(inclusion)
        assert middle.coordinates(inclusion.compose(lower.to_map((factor,)))) == middle.coordinates(restricted)


def test_principal_parts():
    assert principal_part(Fraction(5, 12), 2) == Fraction(3, 4)
    assert principal_part(Fraction(5, 12), 3) == Fraction(2, 3)
    assert principal_part(Fraction(3), 2) == 0
    assert modulo_one(Fraction(7, 4)) == Fraction(3, 4)
    assert modulo_one(Fraction(-1, 4)) == Fraction(3, 4)
    assert in_localization(Fraction(1, 6), [2, 3])
    assert not in_localization(Fraction(1, 5), [2, 3])


def test_triangular_unit():
    level = TriangularLevel((2, 3), 2)
    one = TriangularElement(Fraction(1), (Fraction(0), Fraction(0)), (1, 1))
    element = TriangularElement(Fraction(5, 6), (Fraction(1, 4), Fraction(2, 9)), (3, 7))
    assert level.multiply(one, element) == element
    assert level.act((Fraction(2), Fraction(1, 6)), one) == (Fraction(2), Fraction(1, 6))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_multiplication(n):
    assert multiplication_check((2, 3), n, seed=n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sequence_levels(n):
    level = sequence_level(ColimitModule([2, 3]), (2, 3), n)
    assert level.level == n
    assert level.exact


def test_adelic():
    report = adelic_verify([3, 2], precision=3, seed=0)
    assert report.verified
    assert report.primes == [2, 3]
    assert [level.level for level in report.sequence] == [1, 2, 3]
    assert report.multiplication == {1: True, 2: True, 3: True}


def test_adelic_two_three_end_to_end():
    report = adelic_verify([2, 3], precision=4, seed=0)
    assert report.verified
    assert json.loads(report.model_dump_json())["verified"]
    assert all(type(a) is int for a in (principal_part(Fraction(7, 72), p).numerator for p in (2, 3)))


def test_single_prime_adelic():
    assert adelic_verify([5], precision=2).verified


@pytest.mark.parametrize(["primes", "precision"], [([], 2), ([2, 2], 2), ([4], 2), ([2, 3], 0)])
def test_adelic_errors(primes, precision):
    with pytest.raises(ValueError):
        adelic_verify(primes, precision)


@pytest.mark.slow
def test_adelic_at_higher_precision():
    assert adelic_verify([2, 3, 5], precision=4).verified
