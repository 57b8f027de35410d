#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Command-line surface for ecvsig

keygen / sign / verify for the curve scheme and both (Z/pZ)* schemes,
demo-paper (reference-vector reproduction, alias demo-examples), attack
demos, curve-info and bench. Exit codes: 0 success / signature valid,
1 failure / signature invalid, 2 malformed input.
"""

import argparse
import logging
import os
import sys
import time
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from codec import (
    decode_classic_signature, decode_dl_private_key, decode_dl_public_key,
    decode_private_key, decode_public_key, decode_signature, decode_variant_signature,
    encode_classic_signature, encode_dl_private_key, encode_dl_public_key,
    encode_private_key, encode_public_key, encode_signature, encode_variant_signature,
    serialized_payload_bits, transmission_size_bits,
)
from config import EC_MULT_COST_IN_MODMULTS, HASH_ALGORITHMS, MAX_COUNT_MODULUS, TIMEZONE
from cryptanalysis import (
    DlogInstance, attack_system_rank, bsgs_ecdlp, forge_with_fixed_points, forge_with_fixed_R_and_t,
    forge_with_fixed_S_and_t, key_recovery_instance, measure_ops, nonce_reuse_recover_alpha,
)
from curve import (
    CurveParams, Point, count_points, factor_order, find_prime_order_generator,
    find_supersingular_curve, hasse_bound_ok, point_add, point_order, random_curve,
    scalar_mul, validate_params,
)
from dlog_schemes import (
    NoncePair, classic_sign, classic_verify, dl_keygen,
    find_primitive_root, variant_sides, variant_sign, variant_verify,
)
from ec_scheme import (
    EcKeyPair, EcPrivateKey, EcPublicKey, digest_message, ec_keygen, ec_sign,
    ec_verify, sign_message, verification_terms, verify_message,
)
from modmath import gen_safe_prime
from utils import (
    CodecError, DegenerateNonceError, EcvsigError, NoPrimeFactorError,
    RandomSource, make_rng, parse_number, parse_number_list,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_MALFORMED = 2

SCHEMES = ('ec', 'elgamal', 'variant')

# Reference vectors every build must reproduce exactly
VARIANT_REFERENCE = {
    'p': 509, 'alpha': 2, 'x': 281, 'y': 482, 'm': 432, 'k': 208, 'l': 386,
    'r': 332, 's': 39, 't': 440, 'sides': 436,
}
CLASSIC_REFERENCE = {
    'p': 11, 'alpha': 2, 'x': 3, 'y': 8, 'm': 5, 'k': 3, 'r': 8, 's': 7,
}
CURVE_REFERENCE = {
    'params': CurveParams(757, 6, 2),
    'count': 791,
    'G': Point(529, 566),
    'q': 113,
    'alpha': 78,
    'B': Point(319, 629),
    'm': 56, 'k': 81, 'l': 63,
    'R': Point(248, 195),
    'S': Point(157, 326),
    't': 52,
    'tG': Point(555, 156),
    'sR': Point(555, 601),
    'rS': Point(292, 266),
    'mB': Point(26, 319),
    'transmission_bits': 120,
}


def reference_keypair() -> EcKeyPair:
    ref = CURVE_REFERENCE
    pub = EcPublicKey(ref['params'], ref['G'], ref['q'], ref['B'])
    return EcKeyPair(pub, EcPrivateKey(ref['alpha']))


# ============================================================================
# CONFIGURATION
# ============================================================================

class UsageError(EcvsigError):
    pass


@dataclass
class CliConfig:
    """Validated view of the parsed arguments"""
    scheme: str = 'ec'
    rng: Optional[RandomSource] = None
    test_mode: bool = False
    nonces: Optional[Tuple[int, ...]] = None
    digest_raw: Optional[int] = None
    secret: Optional[int] = None
    hashfn: Optional[str] = None
    out: Optional[str] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'CliConfig':
        nonces = tuple(parse_number_list(args.nonce)) if getattr(args, 'nonce', None) else None
        digest_raw = parse_number(args.digest_raw) if getattr(args, 'digest_raw', None) else None
        secret = parse_number(args.secret) if getattr(args, 'secret', None) else None

        overrides = [name for name, value in (('--nonce', nonces), ('--digest-raw', digest_raw),
                                              ('--secret', secret)) if value is not None]
        if overrides and not args.test_mode:
            raise UsageError(f"{', '.join(overrides)} require --test-mode")
        if args.test_mode:
            logger.warning("⚠️ Test mode enabled: nonce/digest/secret overrides are active")
            print("⚠️ TEST MODE: fixed nonces are for reproduction only. "
                  "Signing two messages with one nonce pair reveals the private key.", file=sys.stderr)

        return cls(
            scheme=getattr(args, 'scheme', 'ec'),
            rng=make_rng(args.seed),
            test_mode=args.test_mode,
            nonces=nonces,
            digest_raw=digest_raw,
            secret=secret,
            hashfn=args.hash,
            out=getattr(args, 'out', None),
        )

    def nonce_pair(self) -> Optional[NoncePair]:
        if self.nonces is None:
            return None
        if len(self.nonces) != 2:
            raise UsageError("--nonce expects k,l for this scheme")
        return NoncePair(*self.nonces)

    def single_nonce(self) -> Optional[int]:
        if self.nonces is None:
            return None
        if len(self.nonces) != 1:
            raise UsageError("--nonce expects a single k for the elgamal scheme")
        return self.nonces[0]


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding='ascii')


def _emit(text: str, out: Optional[str], private: bool = False):
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding='ascii')
    if private:
        os.chmod(out, 0o600)
    logger.info(f"Wrote {out}")


def _digest(config: CliConfig, message_path: Optional[str], modulus: int):
    if config.digest_raw is not None:
        return digest_message(config.digest_raw, modulus)
    if message_path is None:
        raise UsageError("A message file is required (or --digest-raw in test mode)")
    return digest_message(Path(message_path).read_bytes(), modulus, config.hashfn)


# ============================================================================
# KEYGEN
# ============================================================================

def _curve_setup(args, config: CliConfig) -> Tuple[CurveParams, Point, int, Optional[int]]:
    """(params, G, q, cofactor-or-None) from --curve/--generator/--order or --bits"""
    if args.curve:
        params = CurveParams(*parse_number_list(args.curve, 3))
        validate_params(params)
        if args.generator:
            G = Point(*parse_number_list(args.generator, 2))
            if args.order:
                q = parse_number(args.order)
                cofactor = count_points(params) // q if params.p <= MAX_COUNT_MODULUS else None
                return params, G, q, cofactor
            n = count_points(params)
            q = point_order(params, G, n)
            return params, G, q, n // q
        G, q, cofactor = find_prime_order_generator(params, config.rng)
        return params, G, q, cofactor

    if args.bits:
        bits = args.bits
        if bits < 10:
            raise UsageError("--bits must be at least 10")
        if 2 ** bits <= MAX_COUNT_MODULUS:
            while True:
                params = random_curve(bits, config.rng)
                try:
                    G, q, cofactor = find_prime_order_generator(params, config.rng, min_order=2 ** (bits - 4))
                    return params, G, q, cofactor
                except NoPrimeFactorError:
                    continue
        params, G, q, cofactor = find_supersingular_curve(bits, config.rng)
        return params, G, q, cofactor

    raise UsageError("keygen needs --curve p,a,b or --bits N")


def cmd_keygen(args, config: CliConfig) -> int:
    prefix = config.out or 'ecvsig'

    if config.scheme == 'ec':
        params, G, q, cofactor = _curve_setup(args, config)
        pub, priv = ec_keygen(params, G, q, config.rng, config.secret)
        _emit(encode_public_key(pub).to_text(), f"{prefix}.pub")
        _emit(encode_private_key(EcKeyPair(pub, priv)).to_text(), f"{prefix}.key", private=True)
        print(f"curve: {params}")
        print(f"G = {G}")
        print(f"q = {q}")
        print(f"cofactor = {cofactor if cofactor is not None else 'unknown'}")
    else:
        if args.group:
            p, alpha = parse_number_list(args.group, 2)
            factors = None
        elif args.bits:
            p = gen_safe_prime(args.bits, config.rng)
            factors = {2: 1, (p - 1) // 2: 1}
            alpha = find_primitive_root(p, factors)
        else:
            raise UsageError("keygen for DL schemes needs --group p,alpha or --bits N")
        pub, priv = dl_keygen(p, alpha, config.rng, config.secret, factors)
        _emit(encode_dl_public_key(pub).to_text(), f"{prefix}.pub")
        _emit(encode_dl_private_key(pub, priv).to_text(), f"{prefix}.key", private=True)
        print(f"p = {p}")
        print(f"alpha = {alpha}")
        if not pub.generator_verified:
            print("⚠️ alpha was not checked to be a primitive root (p - 1 not factored)")

    print(f"✅ Keys written to {prefix}.pub and {prefix}.key")
    return EXIT_OK


# ============================================================================
# SIGN / VERIFY
# ============================================================================

def cmd_sign(args, config: CliConfig) -> int:
    text = _read_text(args.key)

    if config.scheme == 'ec':
        keypair = decode_private_key(text)
        m = _digest(config, args.message, keypair.public.q)
        block = encode_signature(ec_sign(m, keypair, config.nonce_pair(), config.rng))
    else:
        pub, priv = decode_dl_private_key(text)
        m = _digest(config, args.message, pub.p - 1).value
        if config.scheme == 'elgamal':
            sig = classic_sign(m, priv, pub, config.single_nonce(), config.rng)
            block = encode_classic_signature(sig)
        else:
            sig = variant_sign(m, priv, pub, config.nonce_pair(), config.rng)
            block = encode_variant_signature(sig)

    _emit(block.to_text(), config.out)
    return EXIT_OK


def cmd_verify(args, config: CliConfig) -> int:
    try:
        pub_text = _read_text(args.pub)
        sig_text = _read_text(args.signature)
        if config.scheme == 'ec':
            pub = decode_public_key(pub_text)
            sig = decode_signature(sig_text)
            m = _digest(config, args.message, pub.q)
            valid = ec_verify(m, sig, pub)
        else:
            dl_pub = decode_dl_public_key(pub_text)
            m = _digest(config, args.message, dl_pub.p - 1).value
            if config.scheme == 'elgamal':
                valid = classic_verify(m, decode_classic_signature(sig_text), dl_pub)
            else:
                valid = variant_verify(m, decode_variant_signature(sig_text), dl_pub)
    except (CodecError, UsageError, OSError, UnicodeDecodeError, ValueError) as e:
        logger.error(f"Malformed verification input: {e}")
        print(f"❌ Malformed input: {e}", file=sys.stderr)
        return EXIT_MALFORMED

    if valid:
        print("✅ Signature valid")
        return EXIT_OK
    print("❌ Signature invalid")
    return EXIT_FAILURE


# ============================================================================
# REFERENCE VECTORS
# ============================================================================

class _Checker:
    def __init__(self):
        self.mismatches = 0

    def check(self, name: str, computed, expected):
        ok = computed == expected
        if not ok:
            self.mismatches += 1
        print(f"  {name} = {computed}   (expected {expected}) {'✅' if ok else '❌'}")


def cmd_demo_paper(args, config: CliConfig) -> int:
    checker = _Checker()
    rng = make_rng(0)

    ref = VARIANT_REFERENCE
    print("Two-nonce (Z/pZ)* variant, p = 509")
    pub, priv = dl_keygen(ref['p'], ref['alpha'], rng, x=ref['x'])
    checker.check('y', pub.y, ref['y'])
    sig = variant_sign(ref['m'], priv, pub, NoncePair(ref['k'], ref['l']))
    checker.check('r', sig.r, ref['r'])
    checker.check('s', sig.s, ref['s'])
    checker.check('t', sig.t, ref['t'])
    left, right = variant_sides(ref['m'], sig, pub)
    checker.check('alpha^t', left, ref['sides'])
    checker.check('y^r r^s s^m', right, ref['sides'])
    checker.check('verifies', variant_verify(ref['m'], sig, pub), True)

    ref = CLASSIC_REFERENCE
    print("Classical ElGamal, p = 11")
    pub, priv = dl_keygen(ref['p'], ref['alpha'], rng, x=ref['x'])
    checker.check('y', pub.y, ref['y'])
    classic = classic_sign(ref['m'], priv, pub, ref['k'])
    checker.check('r', classic.r, ref['r'])
    checker.check('s', classic.s, ref['s'])
    checker.check('verifies', classic_verify(ref['m'], classic, pub), True)

    ref = CURVE_REFERENCE
    params = ref['params']
    print(f"Curve scheme, {params}")
    checker.check('#E', count_points(params), ref['count'])
    checker.check('order of G', point_order(params, ref['G'], ref['count']), ref['q'])
    ec_pub, ec_priv = ec_keygen(params, ref['G'], ref['q'], rng, ref['alpha'])
    checker.check('B', ec_pub.B, ref['B'])
    keypair = EcKeyPair(ec_pub, ec_priv)
    ec_sig = ec_sign(ref['m'], keypair, NoncePair(ref['k'], ref['l']))
    checker.check('R', ec_sig.R, ref['R'])
    checker.check('S', ec_sig.S, ref['S'])
    checker.check('t', ec_sig.t, ref['t'])
    terms = verification_terms(ref['m'], ec_sig, ec_pub)
    for name in ('tG', 'sR', 'rS', 'mB'):
        checker.check(name, terms[name], ref[name])
    total = point_add(params, point_add(params, terms['sR'], terms['rS']), terms['mB'])
    checker.check('sR + rS + mB', total, terms['tG'])
    checker.check('verifies', ec_verify(ref['m'], ec_sig, ec_pub), True)

    sign_counts = measure_ops(sign_message, b'reference', keypair, NoncePair(ref['k'], ref['l']))
    verify_sig = sign_message(b'reference', keypair, NoncePair(ref['k'], ref['l']))
    verify_counts = measure_ops(verify_message, b'reference', verify_sig, ec_pub)
    checker.check('sign (EC mults, mod mults, hashes)',
                  (sign_counts.ec_scalar_mults, sign_counts.modular_mults, sign_counts.hash_calls), (2, 3, 1))
    checker.check('verify (EC mults, hashes)',
                  (verify_counts.ec_scalar_mults, verify_counts.hash_calls), (4, 1))
    checker.check('12|p| bits', transmission_size_bits(ec_pub, ec_sig), ref['transmission_bits'])

    if checker.mismatches:
        print(f"❌ {checker.mismatches} value(s) differ from the reference vectors")
        return EXIT_FAILURE
    print("✅ All reference values reproduced")
    return EXIT_OK


# ============================================================================
# ATTACKS
# ============================================================================

def _keypair_from(args) -> EcKeyPair:
    if getattr(args, 'key', None):
        return decode_private_key(_read_text(args.key))
    return reference_keypair()


def _draw_nonces(keypair: EcKeyPair, rng: RandomSource) -> NoncePair:
    """A nonce pair that signs without degenerating (independent of the digest)"""
    q = keypair.public.q
    while True:
        nonces = NoncePair(rng.randint(1, q - 1), rng.randint(1, q - 1))
        try:
            ec_sign(0, keypair, nonces)
            return nonces
        except DegenerateNonceError:
            continue


def _attack_nonce_reuse(args, config: CliConfig) -> int:
    keypair = _keypair_from(args)
    q = keypair.public.q
    m1, m2 = (value % q for value in parse_number_list(args.digests, 2))

    nonces = config.nonce_pair() or _draw_nonces(keypair, config.rng)
    sig1 = ec_sign(m1, keypair, nonces)
    sig2 = ec_sign(m2, keypair, nonces)

    print(f"signature 1: R={sig1.R} S={sig1.S} t={sig1.t}  (m={m1})")
    print(f"signature 2: R={sig2.R} S={sig2.S} t={sig2.t}  (m={m2})")
    alpha = nonce_reuse_recover_alpha(sig1, m1, sig2, m2, q)
    confirmed = scalar_mul(keypair.public.params, alpha, keypair.public.G) == keypair.public.B
    print(f"recovered alpha = {alpha} {'✅ (alpha*G = B)' if confirmed else '❌'}")
    return EXIT_OK if confirmed else EXIT_FAILURE


def _attack_dlog(args, config: CliConfig) -> int:
    if getattr(args, 'pub', None):
        pub = decode_public_key(_read_text(args.pub))
    else:
        pub = _keypair_from(args).public
    instance = key_recovery_instance(pub)
    if args.target:
        instance = DlogInstance(pub.params, pub.G, Point(*parse_number_list(args.target, 2)), pub.q)

    started = time.perf_counter()
    n = bsgs_ecdlp(instance)
    elapsed = time.perf_counter() - started
    if n is None:
        print(f"target {instance.target} is not in the subgroup generated by G")
        return EXIT_FAILURE
    print(f"discrete log = {n}  ({elapsed * 1000:.1f} ms, baby-step giant-step)")
    return EXIT_OK


def _attack_rank(args, config: CliConfig) -> int:
    keypair = _keypair_from(args)
    q = keypair.public.q
    if args.z < 1:
        raise UsageError("--z must be at least 1")

    signatures = []
    first_nonces = None
    for _ in range(args.z):
        nonces = _draw_nonces(keypair, config.rng)
        first_nonces = first_nonces or nonces
        m = config.rng.randrange(q)
        signatures.append((ec_sign(m, keypair, nonces), m))
    if args.reuse:
        m = (signatures[0][1] + 1) % q
        signatures.append((ec_sign(m, keypair, first_nonces), m))

    report = attack_system_rank(signatures, q)
    print(report.summary())
    print(f"rank = {report.rank}, solution space dimension = {report.solution_dimension}")
    print(f"distinct nonce pairs = {report.distinct_nonce_pairs}, alpha determined = {report.alpha_determined}")
    if report.recovered_alpha is not None:
        print(f"recovered alpha = {report.recovered_alpha}")
    return EXIT_OK


def _attack_forge(args, config: CliConfig) -> int:
    """Forge on a digest without alpha: fix two of R, S, t and solve for the third"""
    pub = _keypair_from(args).public
    params, q = pub.params, pub.q
    m = parse_number_list(args.digests, 2)[0] % q
    R = scalar_mul(params, config.rng.randint(1, q - 1), pub.G)
    S = scalar_mul(params, config.rng.randint(1, q - 1), pub.G)
    t = config.rng.randrange(q)

    started = time.perf_counter()
    if args.fix == 'R-S':
        print(f"fixed R={R} S={S}; solving t*G = sR + rS + mB (ECDLP)")
        sig = forge_with_fixed_points(pub, m, R, S)
    elif args.fix == 'R-t':
        print(f"fixed R={R} t={t}; searching <G> for S")
        sig = forge_with_fixed_R_and_t(pub, m, R, t)
    else:
        print(f"fixed S={S} t={t}; searching <G> for R")
        sig = forge_with_fixed_S_and_t(pub, m, S, t)
    elapsed = time.perf_counter() - started

    if sig is None:
        print(f"no forgery exists for this choice ({elapsed * 1000:.1f} ms, searched q - 1 = {q - 1} points)")
        return EXIT_FAILURE
    valid = ec_verify(m, sig, pub)
    print(f"forged signature: R={sig.R} S={sig.S} t={sig.t}  (m={m})")
    print(f"verifies = {valid}  ({elapsed * 1000:.1f} ms)")
    return EXIT_OK if valid else EXIT_FAILURE


ATTACKS: Dict[str, Callable[[argparse.Namespace, CliConfig], int]] = {
    'nonce-reuse': _attack_nonce_reuse,
    'dlog': _attack_dlog,
    'rank': _attack_rank,
    'forge': _attack_forge,
}


def cmd_attack(args, config: CliConfig) -> int:
    return ATTACKS[args.attack](args, config)


# ============================================================================
# CURVE INFO / BENCH
# ============================================================================

def cmd_curve_info(args, config: CliConfig) -> int:
    params = CurveParams(*parse_number_list(args.curve, 3))
    print(f"curve: {params}")
    print(f"4a^3 + 27b^2 mod p = {params.discriminant_term()}")
    validate_params(params)
    print("✅ nonsingular, prime modulus")

    if params.p > MAX_COUNT_MODULUS:
        print(f"p exceeds the exhaustive-counting cutoff {MAX_COUNT_MODULUS}; order not computed")
        return EXIT_OK

    n = count_points(params)
    factors = factor_order(n)
    q = int(max(factors))
    print(f"#E = {n}")
    print(f"Hasse bound holds: {hasse_bound_ok(params, n)}")
    print(f"#E = {' * '.join(f'{f}^{e}' if e > 1 else str(f) for f, e in sorted(factors.items()))}")
    print(f"largest prime factor q = {q}, cofactor = {n // q}")
    return EXIT_OK


def cmd_bench(args, config: CliConfig) -> int:
    keypair = _keypair_from(args)
    pub = keypair.public
    if args.iterations < 1:
        raise UsageError("--iterations must be at least 1")
    message = b'ecvsig benchmark message'
    stamp = datetime.now(TIMEZONE).strftime('%Y-%m-%d %H:%M:%S %Z')

    nonces = _draw_nonces(keypair, config.rng)
    sign_counts = measure_ops(sign_message, message, keypair, nonces, hashfn=config.hashfn)
    sig = sign_message(message, keypair, nonces, hashfn=config.hashfn)
    verify_counts = measure_ops(verify_message, message, sig, pub, config.hashfn)

    started = time.perf_counter()
    for _ in range(args.iterations):
        sign_message(message, keypair, rng=config.rng, hashfn=config.hashfn)
    sign_ms = (time.perf_counter() - started) * 1000 / args.iterations
    started = time.perf_counter()
    for _ in range(args.iterations):
        verify_message(message, sig, pub, config.hashfn)
    verify_ms = (time.perf_counter() - started) * 1000 / args.iterations

    cost = EC_MULT_COST_IN_MODMULTS
    print(f"📊 ecvsig bench, {stamp}")
    print(f"curve: {pub.params}  |p| = {pub.params.p.bit_length()} bits, q = {pub.q}")
    print(f"sign:   {sign_counts.ec_scalar_mults} EC mults, {sign_counts.modular_mults} mod mults, "
          f"{sign_counts.hash_calls} hash, {sign_counts.modular_inversions} inversions "
          f"=> {sign_counts.cost_in_modmults(cost)} modmults + {sign_counts.hash_calls} hash")
    print(f"verify: {verify_counts.ec_scalar_mults} EC mults, {verify_counts.modular_mults} mod mults, "
          f"{verify_counts.hash_calls} hash "
          f"=> {verify_counts.cost_in_modmults(cost)} modmults + {verify_counts.hash_calls} hash")
    print(f"communication: 12|p| = {transmission_size_bits(pub, sig)} bits "
          f"(serialized blocks carry {serialized_payload_bits(pub, sig)} bits including q)")
    print(f"timing: sign {sign_ms:.3f} ms, verify {verify_ms:.3f} ms over {args.iterations} runs")
    return EXIT_OK


# ============================================================================
# PARSER / MAIN
# ============================================================================

COMMANDS: Dict[str, Callable[[argparse.Namespace, CliConfig], int]] = {
    'keygen': cmd_keygen,
    'sign': cmd_sign,
    'verify': cmd_verify,
    'demo-paper': cmd_demo_paper,
    'demo-examples': cmd_demo_paper,
    'attack': cmd_attack,
    'curve-info': cmd_curve_info,
    'bench': cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, help='seed the random source (reproducible output)')
    common.add_argument('--test-mode', action='store_true', help='allow nonce/digest/secret overrides')
    common.add_argument('--hash', choices=HASH_ALGORITHMS, help='digest function')

    parser = argparse.ArgumentParser(prog='ecvsig', description='Two-nonce ElGamal-style signatures on elliptic curves')
    sub = parser.add_subparsers(dest='command', required=True)

    keygen = sub.add_parser('keygen', parents=[common], help='generate a key pair')
    keygen.add_argument('--scheme', choices=SCHEMES, default='ec')
    keygen.add_argument('--curve', help='p,a,b')
    keygen.add_argument('--bits', type=int, help='size of a freshly searched curve or safe prime')
    keygen.add_argument('--generator', help='x,y of G')
    keygen.add_argument('--order', help='prime order q of G')
    keygen.add_argument('--group', help='p,alpha for the elgamal/variant schemes')
    keygen.add_argument('--secret', help='fixed private key (test mode)')
    keygen.add_argument('--out', help='output prefix for .pub/.key files')

    sign = sub.add_parser('sign', parents=[common], help='sign a message file')
    sign.add_argument('message', nargs='?')
    sign.add_argument('--scheme', choices=SCHEMES, default='ec')
    sign.add_argument('--key', required=True, help='private key file')
    sign.add_argument('--nonce', help='k[,l] (test mode)')
    sign.add_argument('--digest-raw', help='use this digest instead of hashing (test mode)')
    sign.add_argument('--out', help='signature file (default stdout)')

    verify = sub.add_parser('verify', parents=[common], help='verify a signature file')
    verify.add_argument('message', nargs='?', help='message file (not needed with --digest-raw)')
    verify.add_argument('signature')
    verify.add_argument('--scheme', choices=SCHEMES, default='ec')
    verify.add_argument('--pub', required=True, help='public key file')
    verify.add_argument('--digest-raw', help='use this digest instead of hashing (test mode)')

    sub.add_parser('demo-paper', aliases=['demo-examples'], parents=[common],
                   help='reproduce the reference vectors')

    attack = sub.add_parser('attack', parents=[common], help='cryptanalysis demos')
    attack.add_argument('attack', choices=sorted(ATTACKS))
    attack.add_argument('--key', help='private key file (default: reference key)')
    attack.add_argument('--pub', help='public key file for dlog')
    attack.add_argument('--target', help='x,y of the dlog target (default: B)')
    attack.add_argument('--nonce', help='shared k,l for nonce-reuse (test mode)')
    attack.add_argument('--digests', default='56,10', help='m1,m2 for nonce-reuse (forge signs m1)')
    attack.add_argument('--fix', choices=('R-S', 'R-t', 'S-t'), default='R-S', help='forge: which values are fixed')
    attack.add_argument('--z', type=int, default=3, help='number of signatures for rank')
    attack.add_argument('--reuse', action='store_true', help='rank: add a signature reusing a nonce pair')

    info = sub.add_parser('curve-info', parents=[common], help='describe a curve')
    info.add_argument('--curve', required=True, help='p,a,b')

    bench = sub.add_parser('bench', parents=[common], help='operation counts and timings')
    bench.add_argument('--key', help='private key file (default: reference key)')
    bench.add_argument('--iterations', type=int, default=20)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = CliConfig.from_args(args)
        return COMMANDS[args.command](args, config)
    except (CodecError, UsageError, OSError) as e:
        logger.error(f"{args.command}: bad input: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except EcvsigError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_FAILURE
    except ValueError as e:
        logger.error(f"{args.command}: bad input: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_MALFORMED


__all__ = ['main', 'build_parser', 'CliConfig', 'reference_keypair',
           'VARIANT_REFERENCE', 'CLASSIC_REFERENCE', 'CURVE_REFERENCE']
