#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Discrete-log signature schemes over (Z/pZ)* for ecvsig

Classical ElGamal:   alpha^m = y^r r^s (mod p),      s = (m - xr) / k  (mod p-1)
Two-nonce variant:   alpha^t = y^r r^s s^m (mod p),  t = rx + ks + lm  (mod p-1)

The variant needs no inverse modulo p-1, so k and l may be even.
Digests m are integers already reduced modulo p-1 (see ec_scheme.digest_message).
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from sympy import factorint

from config import FACTOR_LIMIT, NONCE_RESAMPLE_LIMIT, SMALL_GENERATOR_WARNING
from modmath import ext_gcd, is_probable_prime, mod_inv, mod_mul, mod_pow
from utils import (
    AlphaNotPrimitiveRootError, CompositeModulusError, DegenerateNonceError,
    EcvsigError, NonceNotInvertibleError, RandomSource,
)

logger = logging.getLogger(__name__)


# ============================================================================
# TYPES
# ============================================================================

@dataclass(frozen=True)
class DlPublicKey:
    p: int
    alpha: int
    y: int
    # False when p - 1 could not be factored, so alpha was not checked
    generator_verified: bool = True


@dataclass(frozen=True)
class DlPrivateKey:
    x: int


@dataclass(frozen=True)
class ClassicSignature:
    r: int
    s: int


@dataclass(frozen=True)
class VariantSignature:
    r: int
    s: int
    t: int


@dataclass(frozen=True)
class NoncePair:
    """Ephemeral secrets (k, l); never persisted"""
    k: int
    l: int


# ============================================================================
# GENERATORS
# ============================================================================

def factor_group_order(p: int) -> Optional[Dict[int, int]]:
    """Factorisation of p - 1, or None above FACTOR_LIMIT"""
    if p - 1 > FACTOR_LIMIT:
        return None
    return {int(f): e for f, e in factorint(p - 1).items()}


def is_primitive_root(alpha: int, p: int, factors: Dict[int, int]) -> bool:
    """alpha generates (Z/pZ)* iff alpha^((p-1)/f) != 1 for every prime f | p-1"""
    if not 1 <= alpha < p:
        return False
    return all(mod_pow(alpha, (p - 1) // f, p) != 1 for f in factors)


def find_primitive_root(p: int, factors: Optional[Dict[int, int]] = None) -> int:
    """Smallest primitive root modulo p"""
    factors = factors or factor_group_order(p)
    if factors is None:
        raise EcvsigError("Cannot search for a primitive root: p - 1 is too large to factor")
    for alpha in range(2, p):
        if is_primitive_root(alpha, p, factors):
            return alpha
    raise AlphaNotPrimitiveRootError(f"No primitive root modulo {p}")


# ============================================================================
# KEY GENERATION
# ============================================================================

def dl_keygen(p: int, alpha: int, rng: RandomSource, x: Optional[int] = None,
              factors: Optional[Dict[int, int]] = None) -> Tuple[DlPublicKey, DlPrivateKey]:
    """
    y = alpha^x mod p with x uniform in [1, p-1] (or the given x).
    alpha is checked to be a primitive root whenever p - 1 can be factored;
    otherwise the key is flagged generator_verified=False.
    """
    if not is_probable_prime(p):
        raise CompositeModulusError(f"Group modulus {p} is composite")
    if not 2 <= alpha < p:
        raise AlphaNotPrimitiveRootError(f"alpha must lie in [2, {p}), got {alpha}")

    factors = factors or factor_group_order(p)
    verified = factors is not None
    if verified:
        if not is_primitive_root(alpha, p, factors):
            raise AlphaNotPrimitiveRootError(f"{alpha} is not a primitive root modulo {p}")
    else:
        logger.warning(f"⚠️ p - 1 not factored; primitive-root check for alpha={alpha} skipped")

    if alpha < SMALL_GENERATOR_WARNING:
        logger.warning(f"⚠️ Small generator alpha={alpha}: its effect on security is not established")

    if x is None:
        x = rng.randint(1, p - 1)
    elif not 1 <= x <= p - 1:
        raise EcvsigError(f"Private exponent must lie in [1, {p - 1}], got {x}")

    public = DlPublicKey(p, alpha, mod_pow(alpha, x, p), verified)
    logger.debug(f"DL key generated for {p.bit_length()}-bit p")
    return public, DlPrivateKey(x)


# ============================================================================
# CLASSICAL SCHEME
# ============================================================================

def classic_sign(m: int, priv: DlPrivateKey, pub: DlPublicKey,
                 k: Optional[int] = None, rng: Optional[RandomSource] = None) -> ClassicSignature:
    """r = alpha^k mod p, s = (m - x r) k^-1 mod (p-1); k must be invertible mod p-1"""
    n = pub.p - 1
    m %= n

    if k is None:
        if rng is None:
            raise ValueError("Either a nonce k or a random source is required")
        for _ in range(NONCE_RESAMPLE_LIMIT):
            k = rng.randint(1, n - 1)
            if ext_gcd(k, n)[0] == 1:
                break
        else:
            raise NonceNotInvertibleError("Could not draw an invertible nonce")
    elif ext_gcd(k, n)[0] != 1:
        raise NonceNotInvertibleError(f"Nonce k={k} is not invertible modulo {n}")

    r = mod_pow(pub.alpha, k, pub.p)
    s = mod_mul((m - mod_mul(priv.x, r, n)) % n, mod_inv(k, n), n)
    return ClassicSignature(r, s)


def classic_verify(m: int, sig: ClassicSignature, pub: DlPublicKey) -> bool:
    """alpha^m == y^r r^s (mod p), with 0 < r < p"""
    p = pub.p
    if not 0 < sig.r < p or sig.s < 0 or m < 0:
        return False
    left = mod_pow(pub.alpha, m, p)
    right = mod_pow(pub.y, sig.r, p) * mod_pow(sig.r, sig.s, p) % p
    return left == right


# ============================================================================
# TWO-NONCE VARIANT
# ============================================================================

def variant_sign(m: int, priv: DlPrivateKey, pub: DlPublicKey,
                 nonces: Optional[NoncePair] = None,
                 rng: Optional[RandomSource] = None) -> VariantSignature:
    """r = alpha^k, s = alpha^l, t = r x + k s + l m mod (p-1). No inverse is computed."""
    p, n = pub.p, pub.p - 1
    m %= n

    if nonces is None:
        if rng is None:
            raise ValueError("Either a nonce pair or a random source is required")
        nonces = NoncePair(rng.randint(1, n), rng.randint(1, n))
    if not (1 <= nonces.k <= n and 1 <= nonces.l <= n):
        raise DegenerateNonceError(f"Nonces must lie in [1, {n}]")

    r = mod_pow(pub.alpha, nonces.k, p)
    s = mod_pow(pub.alpha, nonces.l, p)
    t = (mod_mul(r, priv.x, n) + mod_mul(nonces.k, s, n) + mod_mul(nonces.l, m, n)) % n
    return VariantSignature(r, s, t)


def variant_sides(m: int, sig: VariantSignature, pub: DlPublicKey) -> Tuple[int, int]:
    """(alpha^t, y^r r^s s^m) mod p"""
    p = pub.p
    left = mod_pow(pub.alpha, sig.t, p)
    right = mod_pow(pub.y, sig.r, p) * mod_pow(sig.r, sig.s, p) % p
    right = right * mod_pow(sig.s, m, p) % p
    return left, right


def variant_verify(m: int, sig: VariantSignature, pub: DlPublicKey) -> bool:
    """alpha^t == y^r r^s s^m (mod p), with 0 < r, s < p"""
    p = pub.p
    if not (0 < sig.r < p and 0 < sig.s < p) or sig.t < 0 or m < 0:
        return False
    left, right = variant_sides(m, sig, pub)
    return left == right


__all__ = [
    'DlPublicKey', 'DlPrivateKey', 'ClassicSignature', 'VariantSignature', 'NoncePair',
    'factor_group_order', 'is_primitive_root', 'find_primitive_root', 'dl_keygen',
    'classic_sign', 'classic_verify', 'variant_sign', 'variant_sides', 'variant_verify',
]
