#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Utility functions and shared components for ecvsig
"""

import re
import random
import secrets
import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, fields
from typing import Iterator, List, Optional, Union

logger = logging.getLogger(__name__)

RandomSource = Union[random.Random, secrets.SystemRandom]


# ============================================================================
# ERRORS
# ============================================================================

class EcvsigError(ValueError):
    """Base class for every error raised by the toolkit"""


class InvalidModulusError(EcvsigError):
    pass


class UndefinedGcdError(EcvsigError):
    pass


class NotInvertibleError(EcvsigError):
    """Raised when an element has no inverse; carries the offending gcd"""

    def __init__(self, value: int, modulus: int, gcd: int):
        super().__init__(f"{value} is not invertible modulo {modulus} (gcd = {gcd})")
        self.value = value
        self.modulus = modulus
        self.gcd = gcd


class SingularCurveError(EcvsigError):
    pass


class CompositeModulusError(EcvsigError):
    pass


class PointNotOnCurveError(EcvsigError):
    pass


class ModulusTooLargeError(EcvsigError):
    pass


class OrderHypothesisError(EcvsigError):
    pass


class NoPrimeFactorError(EcvsigError):
    pass


class AlphaNotPrimitiveRootError(EcvsigError):
    pass


class NonceNotInvertibleError(EcvsigError):
    pass


class BadGeneratorError(EcvsigError):
    pass


class DegenerateNonceError(EcvsigError):
    pass


class DigestOutOfRangeError(EcvsigError):
    pass


class OrderTooLargeError(EcvsigError):
    pass


class NoncesDifferError(EcvsigError):
    pass


class DigestsEqualError(EcvsigError):
    pass


class CodecError(EcvsigError):
    pass


class MalformedBlockError(CodecError):
    pass


class HeaderMismatchError(CodecError):
    pass


class InvalidKeyError(CodecError):
    pass


# ============================================================================
# INPUT PARSING
# ============================================================================

_NUMBER_RE = re.compile(r'^(0x[0-9a-fA-F]+|[0-9]+)$')


def parse_number(text: str) -> int:
    """Parse a non-negative integer given in decimal or 0x-hex"""
    cleaned = text.strip().replace('_', '')
    if not _NUMBER_RE.match(cleaned):
        raise ValueError(f"Invalid number {text!r} (expected decimal or 0x-hex)")
    return int(cleaned, 0)


def parse_number_list(text: str, count: Optional[int] = None) -> List[int]:
    """Parse 'a,b,c' into integers, optionally enforcing how many"""
    values = [parse_number(part) for part in text.split(',') if part.strip()]
    if count is not None and len(values) != count:
        raise ValueError(f"Expected {count} comma-separated numbers, got {len(values)} in {text!r}")
    return values


# ============================================================================
# RANDOMNESS
# ============================================================================

def make_rng(seed: Optional[int] = None) -> RandomSource:
    """Seeded PRNG for reproducible runs, OS entropy otherwise"""
    if seed is None:
        return secrets.SystemRandom()
    return random.Random(seed)


# ============================================================================
# OPERATION COUNTING
# ============================================================================

@dataclass
class OpCountReport:
    """Operation counts in the units of the cost model"""
    ec_scalar_mults: int = 0
    modular_mults: int = 0
    hash_calls: int = 0
    modular_inversions: int = 0
    modular_exps: int = 0

    def cost_in_modmults(self, ec_mult_cost: int = 240) -> int:
        """Total cost with scalar multiplications converted to modular multiplications"""
        return self.ec_scalar_mults * ec_mult_cost + self.modular_mults

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


class OpTracker:
    """Per-context operation counters (one active report per thread / task)"""

    def __init__(self):
        self._active: ContextVar[Optional[OpCountReport]] = ContextVar('ecvsig_op_report', default=None)

    def record(self, counter: str, amount: int = 1):
        report = self._active.get()
        if report is not None:
            setattr(report, counter, getattr(report, counter) + amount)

    @contextmanager
    def measuring(self) -> Iterator[OpCountReport]:
        report = OpCountReport()
        token = self._active.set(report)
        try:
            yield report
        finally:
            self._active.reset(token)


# Global instances
op_tracker = OpTracker()
