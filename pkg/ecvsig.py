#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
🔏 ecvsig - two-nonce ElGamal-style signatures on elliptic curves
Entry script: logging setup, then the command-line surface in cli.py
"""

import logging
import sys

# Setup logging
from logging.handlers import RotatingFileHandler
from config import LOG_CONFIG, LOG_DIR, LOG_LEVEL

handlers = []
try:
    LOG_DIR.mkdir(parents=True, exist_ok=True)
    file_handler = RotatingFileHandler(
        LOG_DIR / 'ecvsig.log',
        maxBytes=LOG_CONFIG['max_bytes'],
        backupCount=LOG_CONFIG['backup_count']
    )
    file_handler.setFormatter(logging.Formatter(LOG_CONFIG['format']))
    file_handler.setLevel(LOG_LEVEL)
    handlers.append(file_handler)
except OSError as e:
    print(f"⚠️ File logging disabled: {e}", file=sys.stderr)

# Console gets warnings only; stdout is reserved for command output
console_handler = logging.StreamHandler(sys.stderr)
console_handler.setLevel(logging.WARNING)
console_handler.setFormatter(logging.Formatter('%(levelname)s - %(message)s'))
handlers.append(console_handler)

logging.basicConfig(level=LOG_LEVEL, handlers=handlers)

logger = logging.getLogger(__name__)

from cli import main

if __name__ == '__main__':
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("🛑 Interrupted")
        sys.exit(130)
