"""Portable, seedable uniform random source.

Implements the subtractive lagged-Fibonacci recurrence

    x[n] = (x[n-100] - x[n-37]) mod 2**30

with the block-generation and warm-up scheme from D. E. Knuth, "The Art
of Computer Programming", vol. 2, 3rd edition (``ran_start`` /
``ran_array``).  The constants are frozen for this package:

* long lag 100, short lag 37, modulus 2**30,
* seeding warm-up guaranteeing 2**70-separated streams,
* emitted blocks of 1009 words, consumed in full.

All arithmetic is carried out on Python integers, whose semantics do not
depend on the platform's integer representation, so a given seed yields
a bit-for-bit identical stream everywhere.  Deviates are ``word / 2**30``
and therefore lie in ``[0, 1)`` exactly.
"""

from __future__ import annotations

LONG_LAG = 100
SHORT_LAG = 37
MODULUS = 1 << 30
MAX_SEED = MODULUS - 1

_BLOCK_LENGTH = 1009
_WARMUP_LENGTH = 2 * LONG_LAG - 1
_STREAM_SEPARATION = 70


def _seeded_state(seed: int) -> list[int]:
    """Expand a seed into the initial 100-word generator state."""
    buf = [0] * (2 * LONG_LAG - 1)
    ss = (seed + 2) & (MODULUS - 2)
    for j in range(LONG_LAG):
        buf[j] = ss
        ss <<= 1  # cyclic shift over 29 bits
        if ss >= MODULUS:
            ss -= MODULUS - 2
    buf[1] += 1  # make buf[1], and only buf[1], odd
    ss = seed & (MODULUS - 1)
    t = _STREAM_SEPARATION - 1
    while t:
        for j in range(LONG_LAG - 1, 0, -1):  # "square"
            buf[j + j] = buf[j]
            buf[j + j - 1] = 0
        for j in range(2 * LONG_LAG - 2, LONG_LAG - 1, -1):
            k = j - (LONG_LAG - SHORT_LAG)
            buf[k] = (buf[k] - buf[j]) % MODULUS
            buf[j - LONG_LAG] = (buf[j - LONG_LAG] - buf[j]) % MODULUS
        if ss & 1:  # "multiply by z"
            for j in range(LONG_LAG, 0, -1):
                buf[j] = buf[j - 1]
            buf[0] = buf[LONG_LAG]
            buf[SHORT_LAG] = (buf[SHORT_LAG] - buf[LONG_LAG]) % MODULUS
        if ss:
            ss >>= 1
        else:
            t -= 1
    state = [0] * LONG_LAG
    for j in range(SHORT_LAG):
        state[j + LONG_LAG - SHORT_LAG] = buf[j]
    for j in range(SHORT_LAG, LONG_LAG):
        state[j - SHORT_LAG] = buf[j]
    return state


class LaggedFibonacci:
    """Deterministic uniform deviate stream for one generation task.

    Instances share no storage; two generators built from equal seeds
    emit identical sequences.
    """

    def __init__(self, seed: int):
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ValueError(f"seed must be an integer, got {seed!r}")
        if not 0 <= seed <= MAX_SEED:
            raise ValueError(f"seed must be in [0, {MAX_SEED}], got {seed}")
        self.seed = seed
        self._state = _seeded_state(seed)
        for _ in range(10):  # warm up, discarding the early blocks
            self._next_block(_WARMUP_LENGTH)
        self._block: list[float] = []
        self._cursor = 0

    def uniform(self) -> float:
        """Return the next deviate in [0, 1) and advance the state."""
        if self._cursor >= len(self._block):
            self._block = [word / MODULUS for word in self._next_block(_BLOCK_LENGTH)]
            self._cursor = 0
        value = self._block[self._cursor]
        self._cursor += 1
        return value

    def uniforms(self, count: int) -> list[float]:
        """Return the next `count` deviates."""
        return [self.uniform() for _ in range(count)]

    def _next_block(self, length: int) -> list[int]:
        """Emit `length` raw words and step the state past them."""
        block = self._state + [0] * (length - LONG_LAG)
        for j in range(LONG_LAG, length):
            block[j] = (block[j - LONG_LAG] - block[j - SHORT_LAG]) % MODULUS
        fresh = [0] * LONG_LAG
        j = length
        for i in range(SHORT_LAG):
            fresh[i] = (block[j - LONG_LAG] - block[j - SHORT_LAG]) % MODULUS
            j += 1
        for i in range(SHORT_LAG, LONG_LAG):
            fresh[i] = (block[j - LONG_LAG] - fresh[i - SHORT_LAG]) % MODULUS
            j += 1
        self._state = fresh
        return block
