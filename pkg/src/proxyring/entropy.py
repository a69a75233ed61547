"""Entropy sources.

All randomness is drawn through an explicit source object so that callers
control it: the OS source for real use, a seeded deterministic stream for
reproducible fixtures. Sources are not shared implicitly between operations.
"""

import hashlib
import os


class SystemEntropy:
    """OS randomness (os.urandom)."""

    def read(self, n: int) -> bytes:
        return os.urandom(n)


class SeededEntropy:
    """Deterministic byte stream from a seed: SHA-256 in counter mode.

    For tests and fixtures only; never use for real keys.
    """

    def __init__(self, seed):
        if isinstance(seed, int):
            seed = seed.to_bytes(8, "big")
        self._seed = bytes(seed)
        self._counter = 0
        self._buf = b""

    def read(self, n: int) -> bytes:
        while len(self._buf) < n:
            block = hashlib.sha256(
                self._seed + self._counter.to_bytes(8, "big")
            ).digest()
            self._counter += 1
            self._buf += block
        out, self._buf = self._buf[:n], self._buf[n:]
        return out
