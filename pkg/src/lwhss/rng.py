"""Deterministic counter-mode randomness for share generation.

Draws are SHA-256(domain | seed | counter) blocks consumed 64 bits at a
time, so the stream is identical across platforms and Python versions.
That is what makes share files byte-reproducible for a given seed.
"""
from __future__ import annotations

import hashlib

_U64 = 1 << 64


class CounterRng:
    """Counter-based generator with rejection-sampled bounded draws."""

    def __init__(self, seed: int, domain: bytes = b"lwhss.v1"):
        if not isinstance(seed, int) or seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {seed!r}")
        self._prefix = domain + b"|" + str(seed).encode("ascii") + b"|"
        self._counter = 0
        self._buffer = b""

    def _next_block(self) -> bytes:
        block = hashlib.sha256(self._prefix + self._counter.to_bytes(8, "big")).digest()
        self._counter += 1
        return block

    def next_u64(self) -> int:
        if len(self._buffer) < 8:
            self._buffer += self._next_block()
        chunk, self._buffer = self._buffer[:8], self._buffer[8:]
        return int.from_bytes(chunk, "big")

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound), bias-free via rejection."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        if bound == 1:
            return 0
        limit = (_U64 // bound) * bound
        while True:
            draw = self.next_u64()
            if draw < limit:
                return draw % bound
