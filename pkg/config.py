#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Configuration and constants for ecvsig
"""

import os
import pytz
from pathlib import Path

# Data / log location
DATA_DIR = os.getenv('ECVSIG_DATA_DIR', str(Path.home() / '.ecvsig'))
LOG_DIR = Path(DATA_DIR) / 'logs'

LOG_LEVEL = os.getenv('ECVSIG_LOG_LEVEL', 'INFO').upper()
if LOG_LEVEL not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
    raise ValueError(f"ERROR: Invalid ECVSIG_LOG_LEVEL {LOG_LEVEL!r}")

# Logging configuration
LOG_CONFIG = {
    'max_bytes': 10 * 1024 * 1024,  # 10MB
    'backup_count': 5,
    'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
}

# Timezone used for report timestamps
TIMEZONE = pytz.timezone(os.getenv('ECVSIG_TIMEZONE', 'UTC'))

# Primality
PRIME_GEN_ROUNDS = 40  # 2^-80 error bound for generated primes
MR_ROUNDS = int(os.getenv('ECVSIG_MR_ROUNDS', '20'))
if MR_ROUNDS < 1:
    raise ValueError(f"ERROR: ECVSIG_MR_ROUNDS must be >= 1, got {MR_ROUNDS}")

# Trial division decides primality completely below SMALL_PRIME_BOUND ** 2
SMALL_PRIME_BOUND = 1000

# Desk-scale cutoffs for the exhaustive oracles
MAX_COUNT_MODULUS = int(os.getenv('ECVSIG_MAX_COUNT_MODULUS', str(10 ** 6)))
MAX_BRUTE_FORCE_ORDER = int(os.getenv('ECVSIG_MAX_BRUTE_FORCE_ORDER', str(10 ** 6)))
MAX_BSGS_ORDER = 2 ** 40

if MAX_COUNT_MODULUS < 5 or MAX_BRUTE_FORCE_ORDER < 1:
    raise ValueError("ERROR: exhaustive-search cutoffs must be positive")

# Largest p-1 we are willing to factor for primitive-root checks
FACTOR_LIMIT = int(os.getenv('ECVSIG_FACTOR_LIMIT', str(2 ** 64)))

# Hashing
HASH_ALGORITHMS = ('sha1', 'sha256', 'sha512', 'sha3_256')
DEFAULT_HASH = os.getenv('ECVSIG_HASH', 'sha256').lower()
if DEFAULT_HASH not in HASH_ALGORITHMS:
    raise ValueError(f"ERROR: ECVSIG_HASH must be one of {', '.join(HASH_ALGORITHMS)}")

# Signing
NONCE_RESAMPLE_LIMIT = 1000

# Cost model: one EC scalar multiplication counted as this many modular multiplications
EC_MULT_COST_IN_MODMULTS = 240

# Generators below this size get a caution in the logs (not enforced)
SMALL_GENERATOR_WARNING = 16
