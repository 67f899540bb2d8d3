"""
Seed derivation for ensemble trials
"""

MASK64 = 0xFFFFFFFFFFFFFFFF


def splitmix64(x: int) -> int:
    """One round of the SplitMix64 finalizer on a 64-bit integer"""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def split_seed(master: int, *keys: int) -> int:
    """Derive an independent 64-bit seed from a master seed and integer keys

    The derivation depends only on its arguments, so trials can be run in
    any order or on any worker and still see the same stream.
    """
    state = splitmix64(master & MASK64)
    for key in keys:
        state = splitmix64(state ^ (key & MASK64))
    return state
