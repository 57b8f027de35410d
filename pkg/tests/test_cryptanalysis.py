#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Tests for discrete-log oracles, forgery searches, nonce-reuse recovery and the system-rank report"""

import random

import pytest

from cryptanalysis import (
    DlogInstance, attack_system_rank, brute_force_ecdlp, bsgs_ecdlp, confirm_l_candidates,
    forge_with_fixed_points, forge_with_fixed_R_and_t, forge_with_fixed_S_and_t, key_recovery_instance,
    nonce_reuse_recover_alpha, variant_nonce_reuse_recover_l,
)
from curve import (
    INFINITY, Point, enumerate_points, find_prime_order_generator, random_curve, scalar_mul,
)
from dlog_schemes import dl_keygen, variant_sign
from ec_scheme import EcKeyPair, EcSignature, NoncePair, ec_keygen, ec_sign, ec_verify
from utils import (
    DegenerateNonceError, DigestsEqualError, EcvsigError, NoncesDifferError, NoPrimeFactorError,
    OrderTooLargeError, PointNotOnCurveError,
)

G = Point(529, 566)


# ============================================================================
# DISCRETE LOG ORACLES
# ============================================================================

def test_brute_force_reference(params):
    assert brute_force_ecdlp(DlogInstance(params, G, Point(319, 629), 113)) == 78
    assert brute_force_ecdlp(DlogInstance(params, G, INFINITY, 113)) == 0
    assert brute_force_ecdlp(DlogInstance(params, G, Point(248, 195), 113)) == 81


def test_bsgs_reference(params):
    assert bsgs_ecdlp(DlogInstance(params, G, scalar_mul(params, 63, G), 113)) == 63


def test_target_outside_subgroup_not_found(params):
    # 791 = 7 * 113: a point of order 7 is not a multiple of G
    target = next(scalar_mul(params, 113, P) for P in enumerate_points(params)
                  if not scalar_mul(params, 113, P).is_infinity)
    instance = DlogInstance(params, G, target, 113)
    assert bsgs_ecdlp(instance) is None
    assert brute_force_ecdlp(instance) is None


def test_order_cutoff(params):
    with pytest.raises(OrderTooLargeError):
        brute_force_ecdlp(DlogInstance(params, G, G, 113), limit=100)


def test_oracles_agree_up_to_order_10000():
    rng = random.Random(12)
    checked = 0
    while checked < 30:
        params = random_curve(rng.randrange(8, 15), rng)
        try:
            base, q, _ = find_prime_order_generator(params, rng, min_order=3)
        except NoPrimeFactorError:
            continue
        if q > 10 ** 4:
            continue
        target = scalar_mul(params, rng.randrange(q), base)
        instance = DlogInstance(params, base, target, q)
        assert brute_force_ecdlp(instance) == bsgs_ecdlp(instance)
        checked += 1


def test_key_recovery_reduction(pub):
    instance = key_recovery_instance(pub)
    assert (instance.base, instance.target, instance.order) == (G, pub.B, 113)
    assert bsgs_ecdlp(instance) == 78


def test_forgery_with_fixed_points_at_desk_scale(pub):
    sig = forge_with_fixed_points(pub, 56, Point(248, 195), Point(157, 326))
    assert sig.t == 52
    assert ec_verify(56, sig, pub)


def test_forgery_with_fixed_R_and_t_reference(pub):
    R = Point(248, 195)
    sig = forge_with_fixed_R_and_t(pub, 56, R, 52)
    assert sig is not None
    assert (sig.R, sig.t) == (R, 52)
    assert ec_verify(56, sig, pub)


def test_forgery_with_fixed_S_and_t_reference(pub):
    S = Point(157, 326)
    sig = forge_with_fixed_S_and_t(pub, 56, S, 52)
    assert sig is not None
    assert (sig.S, sig.t) == (S, 52)
    assert ec_verify(56, sig, pub)


def test_forgery_with_fixed_R_and_t_over_every_t(pub):
    R = Point(248, 195)
    outcomes = [forge_with_fixed_R_and_t(pub, 10, R, t) for t in range(113)]
    assert any(sig is not None for sig in outcomes)
    for t, sig in enumerate(outcomes):
        assert sig is None or (sig.t == t and ec_verify(10, sig, pub))


def test_forgery_search_rejects_bad_input(pub):
    with pytest.raises(PointNotOnCurveError):
        forge_with_fixed_R_and_t(pub, 56, Point(0, 0), 52)
    with pytest.raises(EcvsigError):
        forge_with_fixed_S_and_t(pub, 56, Point(157, 326), 113)
    with pytest.raises(OrderTooLargeError):
        forge_with_fixed_R_and_t(pub, 56, Point(248, 195), 52, limit=100)


# ============================================================================
# NONCE REUSE
# ============================================================================

def test_nonce_reuse_reference(keypair, reference_nonces):
    sig1 = ec_sign(56, keypair, reference_nonces)
    sig2 = ec_sign(10, keypair, reference_nonces)
    assert (sig1.t, sig2.t) == (52, 80)
    assert nonce_reuse_recover_alpha(sig1, 56, sig2, 10, 113) == 78


def test_nonce_reuse_errors(keypair, reference_nonces):
    sig1 = ec_sign(56, keypair, reference_nonces)
    with pytest.raises(DigestsEqualError):
        nonce_reuse_recover_alpha(sig1, 56, sig1, 56, 113)
    other = EcSignature(Point(319, 629), sig1.S, 80)
    with pytest.raises(NoncesDifferError):
        nonce_reuse_recover_alpha(sig1, 56, other, 10, 113)


def test_nonce_reuse_randomized():
    rng = random.Random(2024)
    trials = 0
    while trials < 200:
        params = random_curve(rng.randrange(8, 14), rng)
        try:
            base, q, _ = find_prime_order_generator(params, rng, min_order=11)
        except NoPrimeFactorError:
            continue
        pub, priv = ec_keygen(params, base, q, rng)
        keypair = EcKeyPair(pub, priv)
        nonces = NoncePair(rng.randint(1, q - 1), rng.randint(1, q - 1))
        m1, m2 = rng.sample(range(q), 2)
        try:
            sig1 = ec_sign(m1, keypair, nonces)
        except DegenerateNonceError:
            continue
        sig2 = ec_sign(m2, keypair, nonces)
        alpha = nonce_reuse_recover_alpha(sig1, m1, sig2, m2, q)
        assert alpha == priv.alpha
        assert scalar_mul(params, alpha, base) == pub.B
        trials += 1


def test_variant_nonce_reuse_candidates(rng):
    pub, priv = dl_keygen(509, 2, rng, x=281)
    nonces = NoncePair(208, 386)
    sig1 = variant_sign(432, priv, pub, nonces)
    sig2 = variant_sign(100, priv, pub, nonces)
    candidates = variant_nonce_reuse_recover_l(sig1, 432, sig2, 100, 509)
    assert len(candidates) == 4
    assert 386 in candidates
    for l in candidates:
        assert (sig1.t - sig2.t - l * (432 - 100)) % 508 == 0
    assert confirm_l_candidates(candidates, sig1, pub) == [386]


def test_variant_nonce_reuse_unique_candidate(rng):
    pub, priv = dl_keygen(509, 2, rng, x=281)
    nonces = NoncePair(208, 386)
    sig1 = variant_sign(432, priv, pub, nonces)
    sig2 = variant_sign(431, priv, pub, nonces)
    assert variant_nonce_reuse_recover_l(sig1, 432, sig2, 431, 509) == [386]


# ============================================================================
# SYSTEM SHAPE
# ============================================================================

def _distinct_signatures(keypair, count, rng):
    signatures = []
    for _ in range(count):
        m = rng.randrange(113)
        signatures.append((ec_sign(m, keypair, rng=rng), m))
    return signatures


@pytest.mark.parametrize('z', [1, 2, 3, 5, 8])
def test_rank_with_distinct_nonces(keypair, rng, z):
    report = attack_system_rank(_distinct_signatures(keypair, z, rng), 113)
    assert (report.equations, report.unknowns) == (z, 2 * z + 1)
    assert report.unknowns - report.equations == z + 1
    assert report.solution_dimension == z + 1
    assert not report.alpha_determined
    assert report.recovered_alpha is None


def test_rank_summary(keypair, rng):
    report = attack_system_rank(_distinct_signatures(keypair, 3, rng), 113)
    assert report.summary() == "3 equations, 7 unknowns"


def test_rank_with_reused_pair_recovers_alpha(keypair, reference_nonces, rng):
    signatures = _distinct_signatures(keypair, 2, rng)
    signatures.append((ec_sign(56, keypair, reference_nonces), 56))
    signatures.append((ec_sign(10, keypair, reference_nonces), 10))
    report = attack_system_rank(signatures, 113)
    assert report.distinct_nonce_pairs == 3
    assert report.unknowns == 7
    assert report.alpha_determined
    assert report.recovered_alpha == 78
