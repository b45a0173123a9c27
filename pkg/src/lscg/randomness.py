"""Deterministic, hierarchically keyed random streams.

Each stream is a splitmix64 generator whose initial state is a blake2b
hash of ``(global_seed, path)``.  Distinct paths give independent-looking
streams; the same ``(seed, path)`` always replays the same sequence, which
is what makes repeated queries about the same edge answer consistently.

The label schema used by the algorithms is stable:

* skeleton streams:   ``("skel", a, b, g_label, round)`` for edge ``(a, b)``
* final accept coins: ``("accept", a, b)``
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Sequence

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

Label = str | int


def derive_state(seed: int, path: Sequence[Label]) -> int:
    """Hash ``(seed, path)`` into a 64-bit splitmix64 starting state."""
    h = hashlib.blake2b(digest_size=8)
    h.update((seed & MASK64).to_bytes(8, "little"))
    for label in path:
        if isinstance(label, bool) or not isinstance(label, (int, str)):
            raise TypeError(f"path labels must be int or str, got {label!r}")
        if isinstance(label, int):
            h.update(b"i")
            h.update(label.to_bytes(16, "little", signed=True))
        else:
            enc = label.encode("utf-8")
            h.update(b"s")
            h.update(len(enc).to_bytes(4, "little"))
            h.update(enc)
    return int.from_bytes(h.digest(), "little")


def splitmix64(state: int) -> tuple[int, int]:
    """Advance one splitmix64 step; returns ``(new_state, output)``."""
    state = (state + _GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    z = z ^ (z >> 31)
    return state, z


def mix64(x: int) -> int:
    """splitmix64 output mixing (stateless avalanche)."""
    z = x & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def edge_uniform(state: int, a: int, b: int) -> float:
    """Uniform in (0, 1) that is a pure function of (state, a, b).

    Backs the skeleton keep-coins: because the coin of an edge depends
    only on the skeleton key and the canonical endpoint pair, the realized
    skeleton is identical no matter in which order its cells are queried.
    """
    z = mix64((state + (a + 1) * _GAMMA) & MASK64)
    z = mix64((z + (b + 1) * _GAMMA) & MASK64)
    return ((z >> 11) + 0.5) * 2.0**-53


class RandomStream:
    """Pure function of its key: a splitmix64 sequence plus the derived
    Bernoulli / geometric-skip samplers used by the skeleton machinery."""

    __slots__ = ("state",)

    def __init__(self, state: int):
        self.state = state & MASK64

    def next_uint64(self) -> int:
        self.state, z = splitmix64(self.state)
        return z

    def next_float(self) -> float:
        """Uniform on the open interval (0, 1)."""
        return ((self.next_uint64() >> 11) + 0.5) * 2.0**-53

    def bernoulli(self, p: float) -> bool:
        if not (0.0 <= p <= 1.0):
            raise ValueError(f"probability {p} outside [0, 1]")
        return self.next_float() < p

    def geometric_skip(self, p: float) -> int:
        """Gap to the next kept edge: P(k) = p * (1-p)^(k-1), k >= 1.

        Inverse-CDF sampling, constant time.  ``p == 1`` short-circuits to
        1 without consuming randomness so that clamped-probability runs are
        fully deterministic.
        """
        if not (0.0 < p <= 1.0):
            raise ValueError(f"geometric_skip requires p in (0, 1], got {p}")
        if p >= 1.0:
            return 1
        u = self.next_float()
        return max(1, math.ceil(math.log(u) / math.log(1.0 - p)))


@dataclass(frozen=True)
class StreamKey:
    """A global seed plus an ordered label path."""

    global_seed: int
    path: tuple[Label, ...]

    def stream(self) -> RandomStream:
        return RandomStream(derive_state(self.global_seed, self.path))


def derive(seed: int, path: Sequence[Label]) -> RandomStream:
    return RandomStream(derive_state(seed, path))
