from functools import cache

import numpy as np

from scenario_bounds.datatypes.errors import InvalidParamsError
from scenario_bounds.datatypes.problems import Sampler

# 64-bit words produced per Philox counter value, one word per double
_WORDS_PER_BLOCK = 4


def _blocks(key: int, first: int, count: int) -> np.ndarray:
    # the generator increments its counter before producing a block, so counter=first yields block `first`
    generator = np.random.Generator(np.random.Philox(key=key, counter=first))
    return generator.random(count * _WORDS_PER_BLOCK)


def uniform_stream(seed: int, indices: np.ndarray) -> np.ndarray:
    """
    Uniform variates on ``[0, 1)`` at the given 1-based positions of the stream keyed by ``seed``.

    The stream is a Philox counter-based generator keyed directly by the seed, so position ``i`` holds
    the same value whatever the number of points requested. Only the counter blocks holding the requested
    positions are generated: a contiguous run costs its length, a single position costs one block.

    Args:
        seed (int): The stream key.
        indices (np.ndarray): 1-based positions.

    Returns:
        np.ndarray: One variate per index.
    """
    indices = np.asarray(indices, dtype=np.int64).reshape(-1)
    if indices.size == 0:
        return np.zeros(0)
    if indices.min() < 1:
        msg = "Scenario indices start at 1"
        raise InvalidParamsError(msg)
    key = int(seed) & (2**128 - 1)
    words = indices - 1
    blocks, offsets = np.divmod(words, _WORDS_PER_BLOCK)
    unique, inverse = np.unique(blocks, return_inverse=True)
    first, span = int(unique[0]), int(unique[-1] - unique[0]) + 1
    if span <= 2 * unique.size:
        return _blocks(key, first, span)[words - first * _WORDS_PER_BLOCK]
    table = np.stack([_blocks(key, int(block), 1) for block in unique])
    return table[inverse.reshape(-1), offsets]


def derive_seed(seed: int, index: int) -> int:
    """
    Derive an independent child seed for experiment ``index`` from a master seed.

    Args:
        seed (int): The master seed.
        index (int): The experiment index.

    Returns:
        int: A 64-bit child seed.
    """
    state = np.random.SeedSequence([int(seed) & (2**64 - 1), int(index)]).generate_state(1, np.uint64)
    return int(state[0])


@cache
def uniform_interval(lo: float, hi: float) -> Sampler:
    """
    The uniform distribution on ``[lo, hi]``.

    Args:
        lo (float): Left end of the interval.
        hi (float): Right end of the interval.

    Returns:
        Sampler: A counter-based sampler of scalar points, one shared instance per interval.
    """
    if not np.isfinite(lo) or not np.isfinite(hi) or hi < lo:
        msg = f"Invalid interval [{lo}, {hi}] for the uniform sampler"
        raise InvalidParamsError(msg)
    width = hi - lo

    def draw(seed: int, indices: np.ndarray) -> np.ndarray:
        return lo + width * uniform_stream(seed, indices)

    return Sampler(draw=draw, description=f"uniform on [{lo}, {hi}]", name="uniform_interval")
