#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Modular integer arithmetic for ecvsig

Square-and-multiply exponentiation, extended Euclid, inverses, Miller-Rabin
and prime generation. Python ints are the arbitrary-precision Natural type;
a Residue is an int already reduced into [0, modulus).

Nothing here is constant-time. This is a research toolkit, not production crypto.
"""

import logging
import random
from typing import Optional, Tuple

from config import MR_ROUNDS, PRIME_GEN_ROUNDS, SMALL_PRIME_BOUND
from utils import (
    InvalidModulusError, NotInvertibleError, UndefinedGcdError,
    RandomSource, op_tracker,
)

logger = logging.getLogger(__name__)


def _small_primes(bound: int) -> Tuple[int, ...]:
    sieve = bytearray([1]) * bound
    sieve[0:2] = b'\x00\x00'
    for i in range(2, int(bound ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


SMALL_PRIMES = _small_primes(SMALL_PRIME_BOUND)


def _check_modulus(modulus: int):
    if modulus < 2:
        raise InvalidModulusError(f"Modulus must be >= 2, got {modulus}")


# ============================================================================
# RING OPERATIONS
# ============================================================================

def mod_pow(base: int, exp: int, modulus: int) -> int:
    """base^exp mod modulus by left-to-right square-and-multiply"""
    _check_modulus(modulus)
    if exp < 0:
        raise ValueError(f"Exponent must be non-negative, got {exp}")
    op_tracker.record('modular_exps')

    base %= modulus
    result = 1
    for bit in bin(exp)[2:]:
        result = result * result % modulus
        if bit == '1':
            result = result * base % modulus
    return result % modulus


def mod_mul(a: int, b: int, modulus: int) -> int:
    """One counted modular multiplication"""
    _check_modulus(modulus)
    op_tracker.record('modular_mults')
    return a * b % modulus


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended Euclid.
    Returns (g, u, v) with g = gcd(a, b) > 0 and u*a + v*b = g.
    """
    if a == 0 and b == 0:
        raise UndefinedGcdError("gcd(0, 0) is undefined")

    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_u, u = u, old_u - quotient * u
        old_v, v = v, old_v - quotient * v

    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def field_inv(a: int, modulus: int) -> int:
    """Uncounted inverse for point formulas, whose cost belongs to the EC unit"""
    _check_modulus(modulus)
    g, u, _ = ext_gcd(a % modulus, modulus)
    if g != 1:
        raise NotInvertibleError(a, modulus, g)
    return u % modulus


def mod_inv(a: int, modulus: int) -> int:
    """Inverse of a modulo modulus; NotInvertibleError carries the gcd otherwise"""
    op_tracker.record('modular_inversions')
    return field_inv(a, modulus)


# ============================================================================
# PRIMALITY
# ============================================================================

def is_probable_prime(n: int, rounds: int = MR_ROUNDS, rng: Optional[RandomSource] = None) -> bool:
    """
    Trial division by the primes below SMALL_PRIME_BOUND, then Miller-Rabin
    with `rounds` random witnesses. Below SMALL_PRIME_BOUND^2 the answer is exact.
    Witnesses come from `rng`, or from a PRNG seeded with n so the result is a
    pure function of its inputs.
    """
    if rounds < 1:
        raise ValueError(f"rounds must be >= 1, got {rounds}")
    if n < 2:
        return False

    for prime in SMALL_PRIMES:
        if n == prime:
            return True
        if n % prime == 0:
            return False
        if prime * prime > n:
            return True
    if n < SMALL_PRIME_BOUND * SMALL_PRIME_BOUND:
        return True

    witness_rng = rng if rng is not None else random.Random(n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for _ in range(rounds):
        a = witness_rng.randrange(2, n - 1)
        x = mod_pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def gen_prime(bits: int, rng: RandomSource) -> int:
    """Odd probable prime with exactly `bits` bits (top bit set)"""
    if bits < 8:
        raise ValueError(f"bits must be >= 8, got {bits}")

    attempts = 0
    while True:
        attempts += 1
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(candidate, PRIME_GEN_ROUNDS, rng):
            logger.debug(f"Found {bits}-bit prime after {attempts} candidates")
            return candidate


def gen_safe_prime(bits: int, rng: RandomSource) -> int:
    """Prime p = 2q' + 1 with q' prime, so p - 1 factors as 2 * q'"""
    if bits < 9:
        raise ValueError(f"bits must be >= 9 for a safe prime, got {bits}")

    while True:
        half = gen_prime(bits - 1, rng)
        candidate = 2 * half + 1
        if is_probable_prime(candidate, PRIME_GEN_ROUNDS, rng):
            return candidate


__all__ = [
    'SMALL_PRIMES', 'mod_pow', 'mod_mul', 'ext_gcd', 'field_inv', 'mod_inv',
    'is_probable_prime', 'gen_prime', 'gen_safe_prime',
]
