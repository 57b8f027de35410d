#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Two-nonce elliptic-curve signature scheme for ecvsig

Public key (p, a, b, G, B) with B = alpha*G, plus the prime order q of G.
A signature on digest m is (R, S, t) with R = kG, S = lG and

    t = s*k + r*l + m*alpha  (mod q)        r = x(R), s = x(S)

and it verifies when  t*G == s*R + r*S + m*B.  No modular inverse is needed.
The private key is called alpha throughout; t is only ever the signature scalar.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

from Crypto.Hash import SHA1, SHA256, SHA512, SHA3_256
from Crypto.Util.number import bytes_to_long

from config import DEFAULT_HASH, NONCE_RESAMPLE_LIMIT
from curve import (
    CurveParams, Point, is_on_curve, point_add, scalar_mul, validate_params,
)
from dlog_schemes import NoncePair
from modmath import is_probable_prime, mod_mul
from utils import (
    BadGeneratorError, DegenerateNonceError, DigestOutOfRangeError, EcvsigError,
    RandomSource, op_tracker,
)

logger = logging.getLogger(__name__)

HASH_MODULES = {
    'sha1': SHA1,
    'sha256': SHA256,
    'sha512': SHA512,
    'sha3_256': SHA3_256,
}


# ============================================================================
# TYPES
# ============================================================================

@dataclass(frozen=True)
class EcPublicKey:
    params: CurveParams
    G: Point
    q: int
    B: Point


@dataclass(frozen=True)
class EcPrivateKey:
    alpha: int


@dataclass(frozen=True)
class EcKeyPair:
    public: EcPublicKey
    private: EcPrivateKey


@dataclass(frozen=True)
class EcSignature:
    R: Point
    S: Point
    t: int


@dataclass(frozen=True)
class MessageDigest:
    """A digest m with 0 <= m < modulus"""
    value: int
    modulus: int

    def __post_init__(self):
        if not 0 <= self.value < self.modulus:
            raise DigestOutOfRangeError(f"Digest {self.value} is outside [0, {self.modulus})")


DigestLike = Union[MessageDigest, int]


# ============================================================================
# DIGESTS
# ============================================================================

def digest_message(message: Union[bytes, int], q: int, hashfn: Optional[str] = None) -> MessageDigest:
    """
    Hash the message, read the digest as a big-endian integer and reduce mod q.
    An int message is a raw digest: it skips hashing and is only reduced.
    """
    if q < 2:
        raise EcvsigError(f"Digest modulus must be >= 2, got {q}")
    if isinstance(message, int):
        return MessageDigest(message % q, q)

    name = (hashfn or DEFAULT_HASH).lower()
    if name not in HASH_MODULES:
        raise EcvsigError(f"Unknown hash function {name!r}")
    op_tracker.record('hash_calls')
    digest = HASH_MODULES[name].new(bytes(message)).digest()
    return MessageDigest(bytes_to_long(digest) % q, q)


def _digest_value(m: DigestLike, q: int) -> int:
    value = m.value if isinstance(m, MessageDigest) else m
    if not 0 <= value < q:
        raise DigestOutOfRangeError(f"Digest {value} is outside [0, {q})")
    return value


# ============================================================================
# KEY GENERATION
# ============================================================================

def check_generator(params: CurveParams, G: Point, q: int) -> None:
    """Raise BadGeneratorError unless G is a curve point of prime order q"""
    if G.is_infinity or not is_on_curve(params, G):
        raise BadGeneratorError(f"Generator {G} is not an affine point of {params}")
    if q < 2 or not is_probable_prime(q):
        raise BadGeneratorError(f"Subgroup order {q} is not prime")
    if not scalar_mul(params, q, G).is_infinity:
        raise BadGeneratorError(f"{q} * G is not the point at infinity")


def ec_keygen(params: CurveParams, G: Point, q: int, rng: RandomSource,
              alpha: Optional[int] = None) -> Tuple[EcPublicKey, EcPrivateKey]:
    """B = alpha*G with alpha uniform in [1, q-1] (or the given alpha)"""
    validate_params(params)
    check_generator(params, G, q)

    if alpha is None:
        alpha = rng.randint(1, q - 1)
    elif not 1 <= alpha < q:
        raise EcvsigError(f"Private key must lie in [1, {q - 1}], got {alpha}")

    B = scalar_mul(params, alpha, G)
    logger.info(f"🔑 EC key generated: q has {q.bit_length()} bits, p has {params.p.bit_length()} bits")
    return EcPublicKey(params, G, q, B), EcPrivateKey(alpha)


# ============================================================================
# SIGNING
# ============================================================================

def _sign_with_nonces(m: int, keypair: EcKeyPair, nonces: NoncePair) -> EcSignature:
    pub, q = keypair.public, keypair.public.q
    if not (1 <= nonces.k < q and 1 <= nonces.l < q):
        raise DegenerateNonceError(f"Nonces must lie in [1, {q - 1}]")

    R = scalar_mul(pub.params, nonces.k, pub.G)
    S = scalar_mul(pub.params, nonces.l, pub.G)
    if R.is_infinity or S.is_infinity:
        raise DegenerateNonceError("Nonce produced the point at infinity")
    r, s = R.x, S.x
    if r % q == 0 or s % q == 0:
        raise DegenerateNonceError("x-coordinate of R or S is 0 mod q")

    t = (mod_mul(s, nonces.k, q) + mod_mul(r, nonces.l, q)
         + mod_mul(m, keypair.private.alpha, q)) % q
    return EcSignature(R, S, t)


def ec_sign(m: DigestLike, keypair: EcKeyPair, nonces: Optional[NoncePair] = None,
            rng: Optional[RandomSource] = None) -> EcSignature:
    """
    Sign a digest m < q. Explicit nonces that are degenerate raise
    DegenerateNonceError; drawn nonces are resampled.
    """
    q = keypair.public.q
    value = _digest_value(m, q)

    if nonces is not None:
        return _sign_with_nonces(value, keypair, nonces)
    if rng is None:
        raise ValueError("Either a nonce pair or a random source is required")

    for _ in range(NONCE_RESAMPLE_LIMIT):
        try:
            return _sign_with_nonces(value, keypair, NoncePair(rng.randint(1, q - 1), rng.randint(1, q - 1)))
        except DegenerateNonceError:
            logger.debug("Degenerate nonce pair drawn, resampling")
    raise DegenerateNonceError(f"No usable nonce pair after {NONCE_RESAMPLE_LIMIT} draws")


def sign_message(message: Union[bytes, int], keypair: EcKeyPair,
                 nonces: Optional[NoncePair] = None, rng: Optional[RandomSource] = None,
                 hashfn: Optional[str] = None) -> EcSignature:
    """Hash-then-sign"""
    m = digest_message(message, keypair.public.q, hashfn)
    return ec_sign(m, keypair, nonces, rng)


# ============================================================================
# VERIFICATION
# ============================================================================

def verification_terms(m: DigestLike, sig: EcSignature, pub: EcPublicKey) -> Dict[str, Point]:
    """The four points tG, sR, rS, mB of the verification equation"""
    value = m.value if isinstance(m, MessageDigest) else m
    params = pub.params
    return {
        'tG': scalar_mul(params, sig.t, pub.G),
        'sR': scalar_mul(params, sig.S.x, sig.R),
        'rS': scalar_mul(params, sig.R.x, sig.S),
        'mB': scalar_mul(params, value, pub.B),
    }


def ec_verify(m: DigestLike, sig: EcSignature, pub: EcPublicKey) -> bool:
    """t*G == s*R + r*S + m*B; malformed input is rejected, never raised"""
    value = m.value if isinstance(m, MessageDigest) else m
    if not 0 <= value < pub.q or not 0 <= sig.t < pub.q:
        return False
    for point in (sig.R, sig.S):
        if point.is_infinity or not is_on_curve(pub.params, point):
            return False

    terms = verification_terms(value, sig, pub)
    right = point_add(pub.params, point_add(pub.params, terms['sR'], terms['rS']), terms['mB'])
    return terms['tG'] == right


def verify_message(message: Union[bytes, int], sig: EcSignature, pub: EcPublicKey,
                   hashfn: Optional[str] = None) -> bool:
    """Hash-then-verify"""
    return ec_verify(digest_message(message, pub.q, hashfn), sig, pub)


__all__ = [
    'HASH_MODULES', 'EcPublicKey', 'EcPrivateKey', 'EcKeyPair', 'EcSignature',
    'MessageDigest', 'NoncePair', 'digest_message', 'check_generator',
    'ec_keygen', 'ec_sign', 'sign_message', 'verification_terms', 'ec_verify', 'verify_message',
]
