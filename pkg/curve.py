#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Elliptic curve group law for ecvsig

Affine arithmetic on y^2 = x^3 + ax + b over F_p, double-and-add scalar
multiplication and the desk-scale oracles (exhaustive point counting,
point orders, prime-order generator search).
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from sympy import divisors, factorint
from sympy.ntheory.residue_ntheory import sqrt_mod

from config import MAX_COUNT_MODULUS
from modmath import field_inv, gen_prime, is_probable_prime, mod_pow
from utils import (
    CompositeModulusError, EcvsigError, InvalidModulusError, ModulusTooLargeError,
    NoPrimeFactorError, OrderHypothesisError, PointNotOnCurveError,
    SingularCurveError, RandomSource, op_tracker,
)

logger = logging.getLogger(__name__)

# Group-law cases. IDENTITY means one operand was the point at infinity.
CASE_IDENTITY = 0
CASE_CHORD = 1
CASE_INVERSE_PAIR = 2
CASE_VERTICAL_TANGENT = 3
CASE_TANGENT = 4

# Random points tried before giving up on a generator
GENERATOR_DRAW_LIMIT = 1000


# ============================================================================
# TYPES
# ============================================================================

@dataclass(frozen=True)
class CurveParams:
    """y^2 = x^3 + ax + b mod p"""
    p: int
    a: int
    b: int

    def rhs(self, x: int) -> int:
        return (x * x * x + self.a * x + self.b) % self.p

    def discriminant_term(self) -> int:
        """4a^3 + 27b^2 mod p; zero means the curve is singular"""
        return (4 * self.a ** 3 + 27 * self.b ** 2) % self.p

    def __str__(self):
        return f"y^2 = x^3 + {self.a}x + {self.b} mod {self.p}"


@dataclass(frozen=True)
class Point:
    """Affine point, or the point at infinity when both coordinates are None"""
    x: Optional[int] = None
    y: Optional[int] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        return "O" if self.is_infinity else f"({self.x},{self.y})"


INFINITY = Point()


@dataclass(frozen=True)
class AdditionTrace:
    """Which group-law case fired, and the slope when a line was drawn"""
    case_id: int
    lam: Optional[int] = None


# ============================================================================
# VALIDATION
# ============================================================================

def validate_params(params: CurveParams) -> None:
    """Raise unless p is a prime > 3, a and b are reduced, and the curve is nonsingular"""
    if params.p <= 3:
        raise InvalidModulusError(f"Curve modulus must be a prime > 3, got {params.p}")
    if not is_probable_prime(params.p):
        raise CompositeModulusError(f"Curve modulus {params.p} is composite")
    if not (0 <= params.a < params.p and 0 <= params.b < params.p):
        raise EcvsigError(f"Coefficients must lie in [0, {params.p}): a={params.a}, b={params.b}")
    if params.discriminant_term() == 0:
        raise SingularCurveError(f"Singular curve: 4a^3 + 27b^2 = 0 mod {params.p}")


def is_on_curve(params: CurveParams, point: Point) -> bool:
    if point.is_infinity:
        return True
    x, y = point.x, point.y
    if not (0 <= x < params.p and 0 <= y < params.p):
        return False
    return (y * y - params.rhs(x)) % params.p == 0


def _require_on_curve(params: CurveParams, point: Point):
    if not is_on_curve(params, point):
        raise PointNotOnCurveError(f"Point {point} is not on {params}")


# ============================================================================
# GROUP LAW
# ============================================================================

def negate(params: CurveParams, point: Point) -> Point:
    if point.is_infinity:
        return INFINITY
    return Point(point.x, (params.p - point.y) % params.p)


def _chord_tangent(params: CurveParams, P: Point, Q: Point) -> Tuple[Point, AdditionTrace]:
    if P.is_infinity:
        return Q, AdditionTrace(CASE_IDENTITY)
    if Q.is_infinity:
        return P, AdditionTrace(CASE_IDENTITY)

    p = params.p
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y

    if x1 != x2:
        lam = (y2 - y1) * field_inv(x2 - x1, p) % p
        case = CASE_CHORD
    elif P == Q and y1 == 0:
        return INFINITY, AdditionTrace(CASE_VERTICAL_TANGENT)
    elif (y1 + y2) % p == 0:
        return INFINITY, AdditionTrace(CASE_INVERSE_PAIR)
    else:
        lam = (3 * x1 * x1 + params.a) * field_inv(2 * y1, p) % p
        case = CASE_TANGENT

    x3 = (lam * lam - x1 - x2) % p
    y3 = (lam * (x1 - x3) - y1) % p
    return Point(x3, y3), AdditionTrace(case, lam)


def add(params: CurveParams, P: Point, Q: Point) -> Tuple[Point, AdditionTrace]:
    """
    Group sum with a trace of the case that fired.

    Vertical pairs (x1 = x2, y1 = -y2) sum to O, which also covers P = Q with
    y1 = 0. Doubling with y1 != 0 uses the tangent slope (3x1^2 + a) / 2y1.
    """
    _require_on_curve(params, P)
    _require_on_curve(params, Q)
    return _chord_tangent(params, P, Q)


def point_add(params: CurveParams, P: Point, Q: Point) -> Point:
    return add(params, P, Q)[0]


def scalar_mul(params: CurveParams, n: int, point: Point) -> Point:
    """n * point by left-to-right double-and-add. n is not reduced by the point order."""
    if n < 0:
        raise ValueError(f"Scalar must be non-negative, got {n}")
    _require_on_curve(params, point)
    op_tracker.record('ec_scalar_mults')

    result = INFINITY
    for bit in bin(n)[2:]:
        result = _chord_tangent(params, result, result)[0]
        if bit == '1':
            result = _chord_tangent(params, result, point)[0]
    return result


# ============================================================================
# DESK-SCALE ORACLES
# ============================================================================

def _require_countable(params: CurveParams, limit: int):
    if params.p > limit:
        raise ModulusTooLargeError(
            f"p = {params.p} exceeds the exhaustive-counting cutoff {limit}"
        )


def count_points(params: CurveParams, limit: int = MAX_COUNT_MODULUS) -> int:
    """#E(F_p) including O, one Euler-criterion test per x"""
    _require_countable(params, limit)
    p = params.p
    half = (p - 1) // 2
    total = 1
    for x in range(p):
        value = params.rhs(x)
        if value == 0:
            total += 1
        elif mod_pow(value, half, p) == 1:
            total += 2
    logger.debug(f"Counted {total} points on {params}")
    return total


def enumerate_points(params: CurveParams, limit: int = MAX_COUNT_MODULUS) -> Iterator[Point]:
    """Every affine point of the curve, in increasing x"""
    _require_countable(params, limit)
    p = params.p
    roots: Dict[int, List[int]] = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    for x in range(p):
        for y in roots.get(params.rhs(x), ()):
            yield Point(x, y)


def hasse_bound_ok(params: CurveParams, count: int) -> bool:
    """|count - (p + 1)| <= 2 sqrt(p)"""
    delta = count - (params.p + 1)
    return delta * delta <= 4 * params.p


def factor_order(n: int) -> Dict[int, int]:
    return factorint(n)


def point_order(params: CurveParams, point: Point, group_order: int) -> int:
    """Least divisor d of group_order with d * point = O"""
    if not scalar_mul(params, group_order, point).is_infinity:
        raise OrderHypothesisError(f"{group_order} * {point} is not the point at infinity")
    for d in divisors(group_order):
        if scalar_mul(params, d, point).is_infinity:
            return d
    return group_order


def random_point(params: CurveParams, rng: RandomSource) -> Point:
    """Uniformly chosen x, retried until x^3 + ax + b is a square"""
    p = params.p
    while True:
        x = rng.randrange(p)
        value = params.rhs(x)
        if value == 0:
            return Point(x, 0)
        if mod_pow(value, (p - 1) // 2, p) != 1:
            continue
        y = int(sqrt_mod(value, p))
        if rng.randrange(2):
            y = p - y
        return Point(x, y)


def find_prime_order_generator(params: CurveParams, rng: RandomSource,
                               min_order: int = 2) -> Tuple[Point, int, int]:
    """
    (G, q, cofactor): q is the largest prime factor of #E and cofactor = #E / q.

    A random point is pushed into the q-primary part (times #E / q^e) and then
    multiplied by q until one more step would give O. This also handles a
    non-cyclic q-part such as Z_q x Z_q.
    """
    n = count_points(params)
    factors = factor_order(n)
    q = int(max(factors))
    if q < min_order:
        raise NoPrimeFactorError(f"Largest prime factor of #E = {n} is {q} < {min_order}")
    cofactor = n // q
    q_free = n // q ** factors[q]

    for _ in range(GENERATOR_DRAW_LIMIT):
        G = scalar_mul(params, q_free, random_point(params, rng))
        if G.is_infinity:
            continue
        step = scalar_mul(params, q, G)
        while not step.is_infinity:
            G, step = step, scalar_mul(params, q, step)
        logger.debug(f"Generator {G} of order {q} (cofactor {cofactor}) on {params}")
        return G, q, cofactor
    raise NoPrimeFactorError(f"No point of order {q} found on {params} after {GENERATOR_DRAW_LIMIT} draws")


def random_curve(bits: int, rng: RandomSource) -> CurveParams:
    """Random nonsingular curve over a fresh `bits`-bit prime"""
    p = gen_prime(bits, rng)
    while True:
        params = CurveParams(p, rng.randrange(p), rng.randrange(p))
        if params.discriminant_term() != 0:
            return params


def find_supersingular_curve(bits: int, rng: RandomSource) -> Tuple[CurveParams, Point, int, int]:
    """
    Random search for p = 6q - 1 with p and q prime. Since p = 2 mod 3 the
    curve y^2 = x^3 + b has exactly p + 1 = 6q points, so (G, q) is known
    without counting. Returns (params, G, q, cofactor).
    """
    if bits < 10:
        raise ValueError(f"bits must be >= 10, got {bits}")

    while True:
        q = gen_prime(bits - 2, rng)
        p = 6 * q - 1
        if p.bit_length() != bits or not is_probable_prime(p):
            continue
        params = CurveParams(p, 0, rng.randrange(1, p))
        while True:
            G = scalar_mul(params, 6, random_point(params, rng))
            if not G.is_infinity:
                break
        if not scalar_mul(params, q, G).is_infinity:
            raise OrderHypothesisError(f"q * G != O on supersingular curve {params}")
        logger.info(f"✅ Supersingular curve found: {bits}-bit p, subgroup order q of {q.bit_length()} bits")
        return params, G, q, 6


__all__ = [
    'CurveParams', 'Point', 'INFINITY', 'AdditionTrace',
    'CASE_IDENTITY', 'CASE_CHORD', 'CASE_INVERSE_PAIR', 'CASE_VERTICAL_TANGENT', 'CASE_TANGENT',
    'validate_params', 'is_on_curve', 'negate', 'add', 'point_add', 'scalar_mul',
    'count_points', 'enumerate_points', 'hasse_bound_ok', 'factor_order', 'point_order',
    'random_point', 'find_prime_order_generator', 'random_curve', 'find_supersingular_curve',
]
