#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Text serialization of keys and signatures for ecvsig

Block layout: the header tag on the first line, an optional '#' banner line
(mandatory for private keys), then one `label=hexvalue` line per field in a
fixed order. Values are lowercase big-endian hex without leading zeros
("0" for zero). Every line ends with a newline; no trailing whitespace.
"""

import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from curve import CurveParams, Point, is_on_curve, scalar_mul, validate_params
from dlog_schemes import (
    ClassicSignature, DlPrivateKey, DlPublicKey, VariantSignature,
    factor_group_order, is_primitive_root,
)
from ec_scheme import EcKeyPair, EcPrivateKey, EcPublicKey, EcSignature, check_generator
from modmath import is_probable_prime, mod_pow
from utils import EcvsigError, HeaderMismatchError, InvalidKeyError, MalformedBlockError

logger = logging.getLogger(__name__)

PUB_HEADER = 'ECVSIG-PUB-1'
PRIV_HEADER = 'ECVSIG-PRIV-1'
SIG_HEADER = 'ECVSIG-SIG-1'
DL_PUB_HEADER = 'ECVSIG-DLPUB-1'
DL_PRIV_HEADER = 'ECVSIG-DLPRIV-1'
DL_SIG_HEADER = 'ECVSIG-DLSIG-1'
VARIANT_SIG_HEADER = 'ECVSIG-VSIG-1'

KNOWN_HEADERS = (
    PUB_HEADER, PRIV_HEADER, SIG_HEADER,
    DL_PUB_HEADER, DL_PRIV_HEADER, DL_SIG_HEADER, VARIANT_SIG_HEADER,
)
PRIVATE_HEADERS = (PRIV_HEADER, DL_PRIV_HEADER)

PRIVATE_BANNER = '# WARNING: PRIVATE KEY. Anyone holding this file can sign as you.'

PUB_FIELDS = ('p', 'a', 'b', 'Gx', 'Gy', 'q', 'Bx', 'By')
PRIV_FIELDS = PUB_FIELDS + ('alpha',)
SIG_FIELDS = ('Rx', 'Ry', 'Sx', 'Sy', 't')
DL_PUB_FIELDS = ('p', 'alpha', 'y')
DL_PRIV_FIELDS = DL_PUB_FIELDS + ('x',)
DL_SIG_FIELDS = ('r', 's')
VARIANT_SIG_FIELDS = ('r', 's', 't')

# Number of field-sized integers in (p, a, b, G, B) + (R, S, t)
IDEALIZED_FIELD_COUNT = 12

_HEX_RE = re.compile(r'^(0|[1-9a-f][0-9a-f]*)$')
_LABEL_RE = re.compile(r'^[A-Za-z]+$')


# ============================================================================
# BLOCKS
# ============================================================================

@dataclass(frozen=True)
class EncodedBlock:
    header: str
    fields: Tuple[Tuple[str, int], ...]
    banner: Optional[str] = None

    def to_text(self) -> str:
        lines = [self.header]
        if self.banner:
            lines.append(self.banner)
        lines.extend(f"{label}={_to_hex(value)}" for label, value in self.fields)
        return '\n'.join(lines) + '\n'

    def values(self) -> List[int]:
        return [value for _, value in self.fields]


def _to_hex(value: int) -> str:
    if value < 0:
        raise EcvsigError(f"Cannot encode negative value {value}")
    return format(value, 'x')


def parse_block(text: str) -> EncodedBlock:
    """Strict parse of a block; anything non-canonical is malformed"""
    if not text or not text.endswith('\n'):
        raise MalformedBlockError("Block must be newline-terminated")
    lines = text[:-1].split('\n')

    header = lines[0]
    if header not in KNOWN_HEADERS:
        raise HeaderMismatchError(f"Unknown header {header!r}")

    body = lines[1:]
    banner = None
    if body and body[0].startswith('#'):
        banner, body = body[0], body[1:]
    if banner is not None and header not in PRIVATE_HEADERS:
        raise MalformedBlockError(f"{header} blocks carry no banner line")
    if not body:
        raise MalformedBlockError(f"{header} block has no fields")

    if banner is not None and banner != banner.rstrip():
        raise MalformedBlockError("Trailing whitespace in block")

    fields = []
    for line in body:
        label, sep, value = line.partition('=')
        if not sep or not _LABEL_RE.match(label) or not _HEX_RE.match(value):
            raise MalformedBlockError(f"Malformed field line {line!r}")
        fields.append((label, int(value, 16)))
    return EncodedBlock(header, tuple(fields), banner)


def _as_block(block: Union[str, EncodedBlock]) -> EncodedBlock:
    return parse_block(block) if isinstance(block, str) else block


def _expect(block: Union[str, EncodedBlock], header: str, labels: Sequence[str]) -> List[int]:
    block = _as_block(block)
    if block.header != header:
        raise HeaderMismatchError(f"Expected {header}, got {block.header}")
    if header in PRIVATE_HEADERS and block.banner != PRIVATE_BANNER:
        raise MalformedBlockError("Private key block is missing its warning banner")
    found = tuple(label for label, _ in block.fields)
    if found != tuple(labels):
        raise MalformedBlockError(f"Expected fields {', '.join(labels)}; got {', '.join(found)}")
    return block.values()


# ============================================================================
# EC KEYS AND SIGNATURES
# ============================================================================

def _public_fields(pub: EcPublicKey) -> List[Tuple[str, int]]:
    values = (pub.params.p, pub.params.a, pub.params.b, pub.G.x, pub.G.y, pub.q, pub.B.x, pub.B.y)
    return list(zip(PUB_FIELDS, values))


def encode_public_key(pub: EcPublicKey) -> EncodedBlock:
    return EncodedBlock(PUB_HEADER, tuple(_public_fields(pub)))


def _build_public_key(values: Sequence[int]) -> EcPublicKey:
    p, a, b, gx, gy, q, bx, by = values
    params = CurveParams(p, a, b)
    G, B = Point(gx, gy), Point(bx, by)
    try:
        validate_params(params)
        check_generator(params, G, q)
    except EcvsigError as e:
        raise InvalidKeyError(f"Invalid public key: {e}") from e
    if not is_on_curve(params, B):
        raise InvalidKeyError(f"Invalid public key: B = {B} is not on the curve")
    return EcPublicKey(params, G, q, B)


def decode_public_key(block: Union[str, EncodedBlock]) -> EcPublicKey:
    return _build_public_key(_expect(block, PUB_HEADER, PUB_FIELDS))


def encode_private_key(keypair: EcKeyPair) -> EncodedBlock:
    fields = _public_fields(keypair.public) + [('alpha', keypair.private.alpha)]
    return EncodedBlock(PRIV_HEADER, tuple(fields), PRIVATE_BANNER)


def decode_private_key(block: Union[str, EncodedBlock]) -> EcKeyPair:
    values = _expect(block, PRIV_HEADER, PRIV_FIELDS)
    pub = _build_public_key(values[:-1])
    alpha = values[-1]
    if not 1 <= alpha < pub.q or scalar_mul(pub.params, alpha, pub.G) != pub.B:
        raise InvalidKeyError("Invalid private key: alpha * G does not match B")
    return EcKeyPair(pub, EcPrivateKey(alpha))


def encode_signature(sig: EcSignature) -> EncodedBlock:
    values = (sig.R.x, sig.R.y, sig.S.x, sig.S.y, sig.t)
    return EncodedBlock(SIG_HEADER, tuple(zip(SIG_FIELDS, values)))


def decode_signature(block: Union[str, EncodedBlock]) -> EcSignature:
    """Range checks against q happen at verification, not here"""
    rx, ry, sx, sy, t = _expect(block, SIG_HEADER, SIG_FIELDS)
    return EcSignature(Point(rx, ry), Point(sx, sy), t)


# ============================================================================
# DISCRETE-LOG KEYS AND SIGNATURES
# ============================================================================

def encode_dl_public_key(pub: DlPublicKey) -> EncodedBlock:
    return EncodedBlock(DL_PUB_HEADER, tuple(zip(DL_PUB_FIELDS, (pub.p, pub.alpha, pub.y))))


def _build_dl_public_key(p: int, alpha: int, y: int) -> DlPublicKey:
    if not is_probable_prime(p) or not 2 <= alpha < p or not 1 <= y < p:
        raise InvalidKeyError(f"Invalid DL public key (p={p}, alpha={alpha}, y={y})")
    factors = factor_group_order(p)
    if factors is not None and not is_primitive_root(alpha, p, factors):
        raise InvalidKeyError(f"Invalid DL public key: {alpha} is not a primitive root modulo {p}")
    return DlPublicKey(p, alpha, y, factors is not None)


def decode_dl_public_key(block: Union[str, EncodedBlock]) -> DlPublicKey:
    return _build_dl_public_key(*_expect(block, DL_PUB_HEADER, DL_PUB_FIELDS))


def encode_dl_private_key(pub: DlPublicKey, priv: DlPrivateKey) -> EncodedBlock:
    values = (pub.p, pub.alpha, pub.y, priv.x)
    return EncodedBlock(DL_PRIV_HEADER, tuple(zip(DL_PRIV_FIELDS, values)), PRIVATE_BANNER)


def decode_dl_private_key(block: Union[str, EncodedBlock]) -> Tuple[DlPublicKey, DlPrivateKey]:
    p, alpha, y, x = _expect(block, DL_PRIV_HEADER, DL_PRIV_FIELDS)
    pub = _build_dl_public_key(p, alpha, y)
    if not 1 <= x <= p - 1 or mod_pow(alpha, x, p) != y:
        raise InvalidKeyError("Invalid DL private key: alpha^x does not match y")
    return pub, DlPrivateKey(x)


def encode_classic_signature(sig: ClassicSignature) -> EncodedBlock:
    return EncodedBlock(DL_SIG_HEADER, tuple(zip(DL_SIG_FIELDS, (sig.r, sig.s))))


def decode_classic_signature(block: Union[str, EncodedBlock]) -> ClassicSignature:
    return ClassicSignature(*_expect(block, DL_SIG_HEADER, DL_SIG_FIELDS))


def encode_variant_signature(sig: VariantSignature) -> EncodedBlock:
    return EncodedBlock(VARIANT_SIG_HEADER, tuple(zip(VARIANT_SIG_FIELDS, (sig.r, sig.s, sig.t))))


def decode_variant_signature(block: Union[str, EncodedBlock]) -> VariantSignature:
    return VariantSignature(*_expect(block, VARIANT_SIG_HEADER, VARIANT_SIG_FIELDS))


# ============================================================================
# COMMUNICATION COST
# ============================================================================

def idealized_payload(pub: EcPublicKey, sig: EcSignature) -> Tuple[int, ...]:
    """(p, a, b, Gx, Gy, Bx, By, Rx, Ry, Sx, Sy, t); q is metadata and not counted"""
    params = pub.params
    return (params.p, params.a, params.b, pub.G.x, pub.G.y, pub.B.x, pub.B.y,
            sig.R.x, sig.R.y, sig.S.x, sig.S.y, sig.t)


def transmission_size_bits(pub: Optional[EcPublicKey], sig: Optional[EcSignature],
                           p: Optional[int] = None) -> int:
    """12 |p|: twelve field-sized integers, |p| the bit-length of p"""
    if p is None:
        if pub is None:
            raise EcvsigError("Either a public key or p is required")
        p = pub.params.p
    return IDEALIZED_FIELD_COUNT * p.bit_length()


def serialized_payload_bits(pub: EcPublicKey, sig: EcSignature) -> int:
    """Bits actually carried by the public-key and signature blocks (q included)"""
    values = encode_public_key(pub).values() + encode_signature(sig).values()
    return sum(value.bit_length() for value in values)


__all__ = [
    'EncodedBlock', 'parse_block', 'KNOWN_HEADERS', 'PRIVATE_BANNER',
    'encode_public_key', 'decode_public_key', 'encode_private_key', 'decode_private_key',
    'encode_signature', 'decode_signature',
    'encode_dl_public_key', 'decode_dl_public_key', 'encode_dl_private_key', 'decode_dl_private_key',
    'encode_classic_signature', 'decode_classic_signature',
    'encode_variant_signature', 'decode_variant_signature',
    'idealized_payload', 'transmission_size_bits', 'serialized_payload_bits',
]
