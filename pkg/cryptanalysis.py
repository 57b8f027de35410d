#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Cryptanalysis harness for ecvsig

Desk-scale discrete-log oracles, the reduction of key recovery and
fixed-point forgery to ECDLP, exhaustive forgery search with R or S fixed
together with t, nonce-reuse key recovery for both two-nonce
schemes, the shape of the linear system an eavesdropper collects, and
operation counting for the cost model.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from config import MAX_BRUTE_FORCE_ORDER, MAX_BSGS_ORDER
from curve import INFINITY, CurveParams, Point, is_on_curve, negate, point_add, scalar_mul
from dlog_schemes import DlPublicKey, VariantSignature
from ec_scheme import DigestLike, EcPublicKey, EcSignature, MessageDigest
from modmath import ext_gcd, mod_inv, mod_pow
from utils import (
    DigestsEqualError, EcvsigError, NoncesDifferError, OpCountReport,
    OrderTooLargeError, PointNotOnCurveError, op_tracker,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DlogInstance:
    """Find n with n * base = target, where order * base = O"""
    params: CurveParams
    base: Point
    target: Point
    order: int


def _value(m: DigestLike) -> int:
    return m.value if isinstance(m, MessageDigest) else m


# ============================================================================
# DISCRETE LOG ORACLES
# ============================================================================

def _check_instance(instance: DlogInstance, limit: int):
    if instance.order > limit:
        raise OrderTooLargeError(f"Order {instance.order} exceeds the search cutoff {limit}")
    for point in (instance.base, instance.target):
        if not is_on_curve(instance.params, point):
            raise PointNotOnCurveError(f"{point} is not on {instance.params}")
    if not scalar_mul(instance.params, instance.order, instance.base).is_infinity:
        raise EcvsigError(f"{instance.order} * base is not the point at infinity")


def brute_force_ecdlp(instance: DlogInstance, limit: int = MAX_BRUTE_FORCE_ORDER) -> Optional[int]:
    """Least n >= 0 with n * base = target by repeated addition; None when target is outside <base>"""
    _check_instance(instance, limit)
    current = INFINITY
    for n in range(instance.order):
        if current == instance.target:
            return n
        current = point_add(instance.params, current, instance.base)
    return None


def bsgs_ecdlp(instance: DlogInstance, limit: int = MAX_BSGS_ORDER) -> Optional[int]:
    """Baby-step giant-step: O(sqrt(order)) group operations and memory"""
    _check_instance(instance, limit)
    params = instance.params
    m = math.isqrt(instance.order) + 1

    baby: Dict[Point, int] = {}
    current = INFINITY
    for j in range(m):
        baby.setdefault(current, j)
        current = point_add(params, current, instance.base)

    giant = negate(params, scalar_mul(params, m, instance.base))
    current = instance.target
    for i in range(m + 1):
        j = baby.get(current)
        if j is not None:
            return i * m + j
        current = point_add(params, current, giant)
    return None


# ============================================================================
# REDUCTIONS
# ============================================================================

def key_recovery_instance(pub: EcPublicKey) -> DlogInstance:
    """Recovering alpha from a public key is exactly the ECDLP B = alpha * G"""
    return DlogInstance(pub.params, pub.G, pub.B, pub.q)


def forge_with_fixed_points(pub: EcPublicKey, m: DigestLike, R: Point, S: Point,
                            solver: Callable[[DlogInstance], Optional[int]] = bsgs_ecdlp) -> Optional[EcSignature]:
    """
    Fix R and S, then solve t * G = s*R + r*S + m*B for t. This is an ECDLP
    instance, so it only succeeds where the solver is feasible (desk scale).
    """
    params = pub.params
    value = _value(m)
    target = point_add(params, point_add(params, scalar_mul(params, S.x, R), scalar_mul(params, R.x, S)),
                       scalar_mul(params, value, pub.B))
    t = solver(DlogInstance(params, pub.G, target, pub.q))
    if t is None:
        logger.info("Forgery target outside <G>; no t exists for these points")
        return None
    return EcSignature(R, S, t)


def _search_free_point(pub: EcPublicKey, m: DigestLike, fixed: Point, t: int,
                       fixed_is_R: bool, limit: int) -> Optional[EcSignature]:
    params, q = pub.params, pub.q
    if q > limit:
        raise OrderTooLargeError(f"Order {q} exceeds the search cutoff {limit}")
    if fixed.is_infinity or not is_on_curve(params, fixed):
        raise PointNotOnCurveError(f"{fixed} is not an affine point of {params}")
    if not 0 <= t < q:
        raise EcvsigError(f"t must lie in [0, {q - 1}], got {t}")

    # t*G - m*B is the side that does not depend on the free point
    target = point_add(params, scalar_mul(params, t, pub.G),
                       negate(params, scalar_mul(params, _value(m), pub.B)))
    candidate = INFINITY
    for _ in range(1, q):
        candidate = point_add(params, candidate, pub.G)
        R, S = (fixed, candidate) if fixed_is_R else (candidate, fixed)
        if point_add(params, scalar_mul(params, S.x, R), scalar_mul(params, R.x, S)) == target:
            return EcSignature(R, S, t)
    logger.info(f"No point of <G> completes the forgery for t={t}")
    return None


def forge_with_fixed_R_and_t(pub: EcPublicKey, m: DigestLike, R: Point, t: int,
                             limit: int = MAX_BRUTE_FORCE_ORDER) -> Optional[EcSignature]:
    """
    Fix R and t, then look for S in <G> with x(S)*R + x(R)*S = t*G - m*B.

    S enters both as a point and through its x-coordinate, so this is not an
    ECDLP instance; the only generic route is walking all of <G>. Returns
    None when no multiple of G works.
    """
    return _search_free_point(pub, m, R, t, True, limit)


def forge_with_fixed_S_and_t(pub: EcPublicKey, m: DigestLike, S: Point, t: int,
                             limit: int = MAX_BRUTE_FORCE_ORDER) -> Optional[EcSignature]:
    """Same search with S and t fixed and R free"""
    return _search_free_point(pub, m, S, t, False, limit)


# ============================================================================
# NONCE REUSE
# ============================================================================

def nonce_reuse_recover_alpha(sig1: EcSignature, m1: DigestLike, sig2: EcSignature,
                              m2: DigestLike, q: int) -> int:
    """
    Two signatures sharing (k, l) give t1 - t2 = (m1 - m2) * alpha (mod q),
    so alpha = (t1 - t2) / (m1 - m2) mod q.
    """
    if sig1.R != sig2.R or sig1.S != sig2.S:
        raise NoncesDifferError("Signatures do not share the same (R, S)")
    d = (_value(m1) - _value(m2)) % q
    if d == 0:
        raise DigestsEqualError("Digests are equal modulo q; the system is degenerate")
    alpha = (sig1.t - sig2.t) * mod_inv(d, q) % q
    logger.warning("⚠️ Nonce reuse detected: private key recovered from two signatures")
    return alpha


def variant_nonce_reuse_recover_l(sig1: VariantSignature, m1: int, sig2: VariantSignature,
                                  m2: int, p: int) -> List[int]:
    """
    Same (k, l) in the (Z/pZ)* variant gives t1 - t2 = l (m1 - m2) (mod p-1).
    Returns every solution l mod p-1 (gcd(m1 - m2, p-1) of them when solvable).
    x and k stay underdetermined.
    """
    if sig1.r != sig2.r or sig1.s != sig2.s:
        raise NoncesDifferError("Signatures do not share the same (r, s)")
    n = p - 1
    d = (m1 - m2) % n
    if d == 0:
        raise DigestsEqualError("Digests are equal modulo p-1")

    delta = (sig1.t - sig2.t) % n
    g = ext_gcd(d, n)[0]
    if delta % g != 0:
        return []
    reduced = n // g
    base = 0 if reduced == 1 else (delta // g) * mod_inv(d // g, reduced) % reduced
    return [base + i * reduced for i in range(g)]


def confirm_l_candidates(candidates: Sequence[int], sig: VariantSignature, pub: DlPublicKey) -> List[int]:
    """Keep the candidates with alpha^l = s (mod p)"""
    return [l for l in candidates if mod_pow(pub.alpha, l, pub.p) == sig.s]


# ============================================================================
# SYSTEM SHAPE
# ============================================================================

@dataclass
class SystemRankReport:
    equations: int
    unknowns: int
    rank: int
    solution_dimension: int
    distinct_nonce_pairs: int
    alpha_determined: bool
    recovered_alpha: Optional[int] = None

    def summary(self) -> str:
        return f"{self.equations} equations, {self.unknowns} unknowns"


def _rank_mod(rows: List[List[int]], q: int) -> int:
    matrix = [[value % q for value in row] for row in rows]
    rank = 0
    columns = len(matrix[0]) if matrix else 0
    for col in range(columns):
        pivot = next((i for i in range(rank, len(matrix)) if matrix[i][col]), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        inverse = mod_inv(matrix[rank][col], q)
        matrix[rank] = [value * inverse % q for value in matrix[rank]]
        for i in range(len(matrix)):
            if i != rank and matrix[i][col]:
                factor = matrix[i][col]
                matrix[i] = [(a - factor * b) % q for a, b in zip(matrix[i], matrix[rank])]
        rank += 1
    return rank


def attack_system_rank(signatures: Sequence[Tuple[EcSignature, DigestLike]], q: int) -> SystemRankReport:
    """
    Shape of the system t_i = s_i k_j + r_i l_j + m_i alpha (mod q) that z
    signatures give an attacker, with one (k_j, l_j) per distinct (R, S).
    alpha is pinned down exactly when dropping its column lowers the rank.
    """
    pair_index: Dict[Tuple[Point, Point], int] = {}
    by_pair: Dict[int, List[Tuple[EcSignature, DigestLike]]] = defaultdict(list)
    for sig, m in signatures:
        index = pair_index.setdefault((sig.R, sig.S), len(pair_index))
        by_pair[index].append((sig, m))

    distinct = len(pair_index)
    unknowns = 2 * distinct + 1
    rows = []
    for sig, m in signatures:
        row = [0] * unknowns
        j = pair_index[(sig.R, sig.S)]
        row[0] = _value(m)
        row[1 + 2 * j] = sig.S.x
        row[2 + 2 * j] = sig.R.x
        rows.append(row)

    rank = _rank_mod(rows, q)
    rank_without_alpha = _rank_mod([row[1:] for row in rows], q)
    report = SystemRankReport(
        equations=len(rows),
        unknowns=unknowns,
        rank=rank,
        solution_dimension=unknowns - rank,
        distinct_nonce_pairs=distinct,
        alpha_determined=rank - rank_without_alpha == 1,
    )

    if report.alpha_determined:
        for group in by_pair.values():
            for (sig1, m1), (sig2, m2) in zip(group, group[1:]):
                if (_value(m1) - _value(m2)) % q:
                    report.recovered_alpha = nonce_reuse_recover_alpha(sig1, m1, sig2, m2, q)
                    return report
    return report


# ============================================================================
# OPERATION COUNTS
# ============================================================================

def measure_ops(call: Callable, *args, **kwargs) -> OpCountReport:
    """Run call(*args, **kwargs) in a fresh counting context and return the counts"""
    with op_tracker.measuring() as report:
        call(*args, **kwargs)
    return report


__all__ = [
    'DlogInstance', 'brute_force_ecdlp', 'bsgs_ecdlp', 'key_recovery_instance',
    'forge_with_fixed_points', 'forge_with_fixed_R_and_t', 'forge_with_fixed_S_and_t',
    'nonce_reuse_recover_alpha', 'variant_nonce_reuse_recover_l',
    'confirm_l_candidates', 'SystemRankReport', 'attack_system_rank', 'measure_ops',
]
