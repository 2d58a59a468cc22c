"""
Adelic
------
The good 1-tilting module ``T = S^-1 Z + S^-1 Z/Z`` for the multiplicative set ``S`` generated by a finite
set of primes ``P``, and its endomorphism ring, the triangular matrix ring

    | S^-1 Z    A_S          |
    | 0         prod_p Z_p   |

with ``A_S = Hom(S^-1 Z, S^-1 Z/Z)``, a ring of finite adeles over ``P``.

``S^-1 Z`` is handled with exact rationals whose denominators are products of primes in ``P``.
Level ``n`` of ``A_S`` is ``N^-n prod_p Z_p / N^n prod_p Z_p`` for ``N`` the product of ``P``; an
element is stored as one rational per prime with only that prime in its denominator, known modulo
``p^n``.
"""

from __future__ import annotations
import logging
from fractions import Fraction
from math import prod
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np
from pydantic import BaseModel
from sympy import isprime

from tiltkit.algebra import integers
from tiltkit.algebra.integers import ZMap, ZModule
from tiltkit.pro import make_product, make_s_completion
from tiltkit.topology import ColimitModule, endo_topology_colim

logger = logging.getLogger(__name__)

SAMPLES = 32
"""
Sampled elements per level for the checks that are not exhaustive.
"""


def _rng(seed: int, k: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed).jumped(k))


def in_localization(value: Fraction, primes: Sequence[int]) -> bool:
    """
    Whether the denominator of `value` is a product of primes in `primes`.
    """
    denominator = value.denominator
    for p in primes:
        while denominator % p == 0:
            denominator //= p
    return denominator == 1


def principal_part(value: Fraction, p: int) -> Fraction:
    """
    The image of `value` in ``Q_p/Z_p``, written as ``a/p^k`` with ``0 <= a < p^k``.
    """
    denominator, k = value.denominator, 0
    while denominator % p == 0:
        denominator //= p
        k += 1
    if not k:
        return Fraction(0)
    modulus = p**k
    return Fraction(value.numerator * pow(denominator, -1, modulus) % modulus, modulus)


def modulo_one(value: Fraction) -> Fraction:
    return value - (value.numerator // value.denominator)


class TriangularElement(NamedTuple):
    """
    An element of level ``n`` of the triangular ring.

    :param diagonal: ``a`` in ``S^-1 Z``.
    :param adeles: ``x`` in ``A_S``, one rational per prime.
    :param completion: ``c`` in ``prod_p Z/p^n``, one residue per prime.
    """

    diagonal: Fraction
    adeles: Tuple[Fraction, ...]
    completion: Tuple[int, ...]


class TriangularLevel:
    """
    Level ``n`` of ``End(T)^rop`` acting on the right of row vectors ``(r, t)`` with ``r`` in ``S^-1 Z``
    and ``t`` in ``S^-1 Z/Z``: ``(r, t)·(a, x, c) = (r a, x(r) + c t)``.

    ``x(r)`` is the sum over ``p`` of the principal parts of ``x_p r``; it is well defined as long as the
    ``p``-denominator of ``r`` does not exceed the precision ``p^n`` of ``x_p``.
    """

    def __init__(self, primes: Sequence[int], n: int):
        self.primes = tuple(primes)
        self.n = n
        self.modulus = prod(self.primes)

    def multiply(self, left: TriangularElement, right: TriangularElement) -> TriangularElement:
        """
        The matrix product ``[[a, x], [0, c]]·[[a', x'], [0, c']] = [[a a', a x' + x c'], [0, c c']]``.
        """
        adeles = tuple(
            left.diagonal * x_right + x_left * c_right
            for x_left, x_right, c_right in zip(left.adeles, right.adeles, right.completion)
        )
        completion = tuple(
            c_left * c_right % p**self.n for c_left, c_right, p in zip(left.completion, right.completion, self.primes)
        )
        return TriangularElement(left.diagonal * right.diagonal, adeles, completion)

    def evaluate(self, adeles: Sequence[Fraction], r: Fraction) -> Fraction:
        return modulo_one(sum((principal_part(x * r, p) for x, p in zip(adeles, self.primes)), Fraction(0)))

    def act(self, vector: Tuple[Fraction, Fraction], element: TriangularElement) -> Tuple[Fraction, Fraction]:
        r, t = vector
        scaled = sum(
            (c * principal_part(t, p) for c, p in zip(element.completion, self.primes)),
            Fraction(0),
        )
        return r * element.diagonal, modulo_one(self.evaluate(element.adeles, r) + scaled)

    def sample(self, rng: np.random.Generator) -> TriangularElement:
        """
        A random element whose diagonal entry has at most one factor of each prime in its denominator.
        """
        diagonal = Fraction(int(rng.integers(-(self.modulus**self.n), self.modulus**self.n + 1)))
        diagonal /= self.modulus ** int(rng.integers(0, 2))
        adeles = tuple(Fraction(int(rng.integers(0, p ** (2 * self.n))), p**self.n) for p in self.primes)
        completion = tuple(int(rng.integers(0, p**self.n)) for p in self.primes)
        return TriangularElement(diagonal, adeles, completion)

    def sample_vector(self, rng: np.random.Generator) -> Tuple[Fraction, Fraction]:
        """
        ``r`` an integer and ``t`` in ``M_n``, the range where both sides of the product are defined.
        """
        r = Fraction(int(rng.integers(-(self.modulus**self.n), self.modulus**self.n + 1)))
        t = modulo_one(Fraction(int(rng.integers(0, self.modulus**self.n)), self.modulus**self.n))
        return r, t


class SequenceLevel(BaseModel, extra="forbid"):
    """
    ``0 -> prod_p Z_p -> A_S -> S^-1 Z/Z -> 0`` at one level, by elementary divisors.
    """

    level: int
    left: str
    middle: str
    right: str
    exact: bool


class AdelicReport(BaseModel, extra="forbid"):
    primes: List[int]
    precision: int
    localization_endomorphisms: bool
    """
    ``Hom(S^-1 Z, S^-1 Z) = S^-1 Z``: the limit of ``Hom((1/N^n)Z, S^-1 Z)`` has invertible transitions.
    """
    torsion_hom_vanishes: bool
    """
    ``Hom(S^-1 Z/Z, S^-1 Z) = 0``: every stage is killed by ``N^n`` and ``S^-1 Z`` is torsion-free.
    """
    decomposition: bool
    """
    ``S^-1 Z/Z`` splits into the ``p``-primary towers at every level.
    """
    endomorphism_tower: bool
    """
    ``End(S^-1 Z/Z)`` agrees with the product of the ``p``-adic chains.
    """
    sequence: List[SequenceLevel]
    multiplication: Dict[int, bool]
    """
    Whether the triangular product agrees with composition at each level.
    """
    verified: bool


def _check_primes(primes: Sequence[int]) -> Tuple[int, ...]:
    primes = tuple(int(p) for p in primes)
    if not primes:
        raise ValueError("The prime set must be nonempty")
    if len(set(primes)) != len(primes):
        raise ValueError(f"Primes must be distinct, got {primes}")
    for p in primes:
        if not isprime(p):
            raise ValueError(f"{p} is not a prime")
    return tuple(sorted(primes))


def localization_endomorphisms(primes: Sequence[int], precision: int, seed: int = 0) -> bool:
    """
    A map ``S^-1 Z -> S^-1 Z`` is a coherent family of values ``v_n`` at ``1/N^n`` with ``v_n = N v_(n+1)``;
    the transitions are bijective on ``S^-1 Z``, so the family is determined by ``v_0 = f(1)``.
    """
    modulus = prod(primes)
    rng = _rng(seed, 0)
    for _ in range(SAMPLES):
        value = Fraction(int(rng.integers(-1000, 1001)), modulus ** int(rng.integers(0, precision + 1)))
        family = [value / modulus**n for n in range(precision + 1)]
        if not all(in_localization(v, primes) for v in family):
            return False
        if any(family[n] != modulus * family[n + 1] for n in range(precision)):
            return False
        if not in_localization(value * modulus, primes):
            return False
    return True


def torsion_hom_vanishes(module: ColimitModule, primes: Sequence[int], precision: int, seed: int = 0) -> bool:
    modulus = prod(primes)
    for n in range(1, precision + 1):
        if any(modulus**n % order for order in module.stage(n).orders):
            return False
    rng = _rng(seed, 1)
    for _ in range(SAMPLES):
        value = Fraction(int(rng.integers(1, 1001)), modulus ** int(rng.integers(0, precision + 1)))
        if value * modulus**precision == 0:
            return False
    return True


def decomposition(module: ColimitModule, primes: Sequence[int], precision: int) -> bool:
    """
    ``M_n`` of ``Z[1/N]/Z`` against the sum of the ``p``-primary stages.
    """
    whole = ColimitModule.matlis_torsion(prod(primes))
    for n in range(1, precision + 1):
        parts = integers.direct_sum([ColimitModule.matlis_torsion(p).stage(n) for p in primes])[0]
        if not (whole.stage(n).is_isomorphic(parts) and module.stage(n).is_isomorphic(parts)):
            return False
    return True


def endomorphism_tower(module: ColimitModule, primes: Sequence[int], precision: int, seed: int = 0) -> bool:
    """
    The residue map ``Z/N^n -> prod_p Z/p^n`` is a ring isomorphism compatible with the transitions.
    """
    ring = endo_topology_colim(module)
    product = make_product([make_s_completion(p) for p in primes])
    rng = _rng(seed, 2)
    for n in range(1, precision + 1):
        level, target = ring.level(n), product.level(n)

        def residues(a: int, n: int = n) -> Tuple[int, ...]:
            return tuple(a % p**n for p in primes)

        if level.modulus != prod(target.additive_orders):
            return False
        one = residues(1)
        if any(target.is_zero(target.scalar(level.modulus // p)) for p in primes) or one != target.one:
            return False
        for _ in range(SAMPLES):
            a, b = (int(value) for value in rng.integers(0, level.modulus, size=2))
            if residues(level.mul(a, b)) != target.mul(residues(a), residues(b)):
                return False
            if residues(level.add(a, b)) != target.add(residues(a), residues(b)):
                return False
            if n < precision:
                upper = int(rng.integers(0, ring.level(n + 1).modulus))
                if residues(ring.reduce(upper, n)) != product.reduce(residues(upper, n + 1), n):
                    return False
    return True


def sequence_level(module: ColimitModule, primes: Sequence[int], n: int) -> SequenceLevel:
    """
    ``0 -> Z/N^n --N^n--> Z/N^(2n) -> M_n -> 0``, the middle term generated by ``N^-n``, which maps to
    ``1/N^n = sum over p of a_p/p^n`` in ``S^-1 Z/Z``.
    """
    modulus = prod(primes)
    left = ZModule.cyclic(modulus**n)
    middle = ZModule.cyclic(modulus ** (2 * n))
    right = module.stage(n)
    coefficients = [pow((modulus // p) ** n, -1, p**n) for p in primes]
    remainder = Fraction(1, modulus**n) - sum(Fraction(a, p**n) for a, p in zip(coefficients, primes))
    if remainder.denominator != 1:
        raise ValueError(f"Partial fractions of 1/{modulus}^{n} do not add up")
    inclusion = ZMap(left, middle, [[modulus**n]])
    projection = ZMap(middle, right, [[a] for a in coefficients])
    expected = integers.direct_sum([ZModule.cyclic(p ** (2 * n)) for p in primes])[0]
    exact = (
        inclusion.is_injective()
        and projection.is_surjective()
        and projection.compose(inclusion).is_zero()
        and middle.size() == left.size() * right.size()
        and middle.is_isomorphic(expected)
    )
    return SequenceLevel(
        level=n,
        left=str(left.elementary_divisors),
        middle=str(middle.elementary_divisors),
        right=str(right.elementary_divisors),
        exact=exact,
    )


def multiplication_check(primes: Sequence[int], n: int, seed: int = 0, samples: int = SAMPLES) -> bool:
    """
    ``(v·φ)·φ' = v·(φ φ')`` for sampled elements and row vectors at level `n`, and associativity of the product.
    """
    level = TriangularLevel(primes, n)
    rng = _rng(seed, 3 + n)
    for _ in range(samples):
        first, second, third = level.sample(rng), level.sample(rng), level.sample(rng)
        vector = level.sample_vector(rng)
        if level.act(level.act(vector, first), second) != level.act(vector, level.multiply(first, second)):
            return False
        left = level.multiply(level.multiply(first, second), third)
        right = level.multiply(first, level.multiply(second, third))
        if level.act(vector, left) != level.act(vector, right):
            return False
    return True


def adelic_verify(primes: Sequence[int], precision: int = 4, seed: int = 0) -> AdelicReport:
    """
    Run all checks for ``T = S^-1 Z + S^-1 Z/Z`` up to `precision`.
    """
    primes = _check_primes(primes)
    if precision < 1:
        raise ValueError(f"Precision must be positive, got {precision}")
    module = ColimitModule(primes)
    module.check(precision)
    sequence = [sequence_level(module, primes, n) for n in range(1, precision + 1)]
    multiplication = {n: multiplication_check(primes, n, seed) for n in range(1, precision + 1)}
    checks = {
        "localization_endomorphisms": localization_endomorphisms(primes, precision, seed),
        "torsion_hom_vanishes": torsion_hom_vanishes(module, primes, precision, seed),
        "decomposition": decomposition(module, primes, precision),
        "endomorphism_tower": endomorphism_tower(module, primes, precision, seed),
    }
    verified = all(checks.values()) and all(level.exact for level in sequence) and all(multiplication.values())
    verdict = "verified" if verified else "FAILED"
    logger.info(f"Adelic scenario for P = {list(primes)} at precision {precision}: {verdict}")
    return AdelicReport(
        primes=list(primes),
        precision=precision,
        sequence=sequence,
        multiplication=multiplication,
        verified=verified,
        **checks,
    )
