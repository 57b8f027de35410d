#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Shared fixtures for the ecvsig test suite"""

import random
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from curve import CurveParams, Point  # noqa: E402
from dlog_schemes import NoncePair  # noqa: E402
from ec_scheme import EcKeyPair, EcPrivateKey, EcPublicKey  # noqa: E402

GOLDEN_DIR = Path(__file__).resolve().parent / 'golden'

REFERENCE_PARAMS = CurveParams(757, 6, 2)
REFERENCE_G = Point(529, 566)
REFERENCE_Q = 113
REFERENCE_ALPHA = 78
REFERENCE_B = Point(319, 629)


@pytest.fixture
def params():
    return REFERENCE_PARAMS


@pytest.fixture
def keypair():
    pub = EcPublicKey(REFERENCE_PARAMS, REFERENCE_G, REFERENCE_Q, REFERENCE_B)
    return EcKeyPair(pub, EcPrivateKey(REFERENCE_ALPHA))


@pytest.fixture
def pub(keypair):
    return keypair.public


@pytest.fixture
def reference_nonces():
    return NoncePair(81, 63)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def golden():
    return GOLDEN_DIR
