#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Tests for the elliptic curve group law and desk-scale oracles"""

import random

import pytest
from sympy import isprime

from curve import (
    CASE_CHORD, CASE_IDENTITY, CASE_INVERSE_PAIR, CASE_TANGENT, CASE_VERTICAL_TANGENT,
    INFINITY, CurveParams, Point, add, count_points, enumerate_points,
    find_prime_order_generator, find_supersingular_curve, hasse_bound_ok, is_on_curve,
    negate, point_add, point_order, random_curve, random_point, scalar_mul, validate_params,
)
from utils import (
    CompositeModulusError, InvalidModulusError, ModulusTooLargeError,
    OrderHypothesisError, PointNotOnCurveError, SingularCurveError,
)

G = Point(529, 566)


def _random_small_curves(rng, count, bound=1000):
    """Random nonsingular curves over primes in [11, bound)"""
    primes = [p for p in range(11, bound) if isprime(p)]
    curves = []
    while len(curves) < count:
        p = rng.choice(primes)
        params = CurveParams(p, rng.randrange(p), rng.randrange(p))
        if params.discriminant_term() != 0:
            curves.append(params)
    return curves


def _naive_sum(params, P, Q):
    """Independent chord-tangent evaluation using Fermat inverses"""
    p = params.p
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x and (P.y + Q.y) % p == 0:
        return INFINITY
    if P == Q:
        slope = (3 * P.x ** 2 + params.a) * pow(2 * P.y, p - 2, p) % p
    else:
        slope = (Q.y - P.y) * pow(Q.x - P.x, p - 2, p) % p
    x3 = (slope ** 2 - P.x - Q.x) % p
    return Point(x3, (slope * (P.x - x3) - P.y) % p)


# ============================================================================
# VALIDATION
# ============================================================================

def test_validate_reference_curve(params):
    validate_params(params)
    assert params.discriminant_term() == 215


def test_validate_rejects_singular_curve():
    with pytest.raises(SingularCurveError):
        validate_params(CurveParams(7, 0, 0))


def test_validate_rejects_bad_modulus():
    with pytest.raises(CompositeModulusError):
        validate_params(CurveParams(791, 1, 1))
    with pytest.raises(InvalidModulusError):
        validate_params(CurveParams(3, 1, 1))


def test_is_on_curve(params):
    assert is_on_curve(params, G)
    assert is_on_curve(params, INFINITY)
    assert not is_on_curve(params, Point(0, 0))


# ============================================================================
# GROUP LAW
# ============================================================================

def test_identity_and_inverse(params):
    total, trace = add(params, G, INFINITY)
    assert total == G and trace.case_id == CASE_IDENTITY
    total, trace = add(params, G, Point(G.x, params.p - G.y))
    assert total == INFINITY and trace.case_id == CASE_INVERSE_PAIR
    assert trace.lam is None


def test_chord_and_tangent_cases_carry_slope(params):
    _, trace = add(params, G, Point(319, 629))
    assert trace.case_id == CASE_CHORD and trace.lam is not None
    _, trace = add(params, G, G)
    assert trace.case_id == CASE_TANGENT and trace.lam is not None


def test_vertical_tangent_at_two_torsion_point():
    # y^2 = x^3 + x over F_13 has (0, 0)
    params = CurveParams(13, 1, 0)
    total, trace = add(params, Point(0, 0), Point(0, 0))
    assert total == INFINITY
    assert trace.case_id == CASE_VERTICAL_TANGENT


def test_reference_verification_sum(params):
    total = point_add(params, point_add(params, Point(555, 601), Point(292, 266)), Point(26, 319))
    assert total == Point(555, 156)


def test_add_rejects_off_curve_points(params):
    with pytest.raises(PointNotOnCurveError):
        add(params, G, Point(0, 0))


def test_negate(params):
    assert negate(params, INFINITY) == INFINITY
    assert negate(params, negate(params, G)) == G
    assert point_add(params, G, negate(params, G)) == INFINITY


def test_group_axioms_on_random_curves():
    rng = random.Random(99)
    for params in _random_small_curves(rng, 20):
        for _ in range(200):
            P, Q, R = (random_point(params, rng) for _ in range(3))
            assert point_add(params, point_add(params, P, Q), R) == point_add(params, P, point_add(params, Q, R))
            assert point_add(params, P, Q) == point_add(params, Q, P)
            assert point_add(params, P, INFINITY) == P
            assert point_add(params, P, negate(params, P)) == INFINITY


def test_addition_table_matches_naive_oracle():
    rng = random.Random(5)
    primes = [p for p in range(5, 50) if isprime(p)]
    for p in primes:
        params = CurveParams(p, rng.randrange(p), rng.randrange(p))
        if params.discriminant_term() == 0:
            continue
        points = [INFINITY] + list(enumerate_points(params))
        for P in points:
            for Q in points:
                assert point_add(params, P, Q) == _naive_sum(params, P, Q)


# ============================================================================
# SCALAR MULTIPLICATION
# ============================================================================

def test_scalar_mul_reference_values(params):
    assert scalar_mul(params, 78, G) == Point(319, 629)
    assert scalar_mul(params, 81, G) == Point(248, 195)
    assert scalar_mul(params, 63, G) == Point(157, 326)
    assert scalar_mul(params, 0, G) == INFINITY
    assert scalar_mul(params, 113, G) == INFINITY


def test_scalar_mul_is_linear(params, rng):
    for _ in range(200):
        m, n = rng.randrange(113), rng.randrange(113)
        left = scalar_mul(params, m + n, G)
        assert left == point_add(params, scalar_mul(params, m, G), scalar_mul(params, n, G))
        assert is_on_curve(params, left)


def test_scalar_mul_rejects_negative(params):
    with pytest.raises(ValueError):
        scalar_mul(params, -1, G)


# ============================================================================
# ORACLES
# ============================================================================

def test_count_points_reference(params):
    n = count_points(params)
    assert n == 791
    assert hasse_bound_ok(params, n)


def test_enumerated_points_match_count(params):
    points = list(enumerate_points(params))
    assert len(points) + 1 == 791
    assert all(is_on_curve(params, P) for P in points)


def test_lagrange_on_reference_curve(params):
    for P in enumerate_points(params):
        assert scalar_mul(params, 791, P) == INFINITY


def test_count_points_cutoff():
    with pytest.raises(ModulusTooLargeError):
        count_points(CurveParams(1000003, 1, 1))


def test_point_order(params):
    assert point_order(params, G, 791) == 113
    assert point_order(params, INFINITY, 791) == 1
    assert point_order(params, Point(319, 629), 791) == 113


def test_point_order_hypothesis_checked(params):
    with pytest.raises(OrderHypothesisError):
        point_order(params, G, 790)


def test_find_prime_order_generator(params, rng):
    found, q, cofactor = find_prime_order_generator(params, rng)
    assert (q, cofactor) == (113, 7)
    assert not found.is_infinity
    assert scalar_mul(params, q, found) == INFINITY


@pytest.mark.parametrize('curve', [(7, 0, 2), (5, 1, 0), (11, 1, 2)])
def test_generator_on_non_cyclic_prime_part(curve):
    # q^2 divides #E and the q-part is not cyclic; (#E / q) * P can be O for every P
    params = CurveParams(*curve)
    n = count_points(params)
    found, q, cofactor = find_prime_order_generator(params, random.Random(1))
    assert n % (q * q) == 0
    assert cofactor == n // q
    assert not found.is_infinity
    assert is_on_curve(params, found)
    assert scalar_mul(params, q, found) == INFINITY


def test_generator_on_z3_x_z3_curve():
    params = CurveParams(7, 0, 2)
    assert count_points(params) == 9
    assert all(scalar_mul(params, 3, P) == INFINITY for P in enumerate_points(params))
    found, q, _ = find_prime_order_generator(params, random.Random(7))
    assert q == 3
    assert point_order(params, found, 9) == 3


def test_random_curve_is_nonsingular():
    params = random_curve(12, random.Random(4))
    validate_params(params)
    assert params.p.bit_length() == 12


def test_supersingular_curve_has_known_order():
    params, generator, q, cofactor = find_supersingular_curve(16, random.Random(8))
    assert params.a == 0 and params.p == 6 * q - 1
    assert cofactor == 6
    assert count_points(params) == params.p + 1
    assert scalar_mul(params, q, generator) == INFINITY
    assert not generator.is_infinity
