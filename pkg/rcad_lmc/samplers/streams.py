"""Per-chain random streams, read block-wise in chunks of steps."""

from typing import List, Optional, Sequence, Tuple

import numpy as np

# upper bound on buffered doubles per chunk, across the block
CHUNK_DOUBLES = 1 << 22


def chain_streams(seed: int) -> Tuple[np.random.Generator, np.random.Generator]:
    """
    Coordinate and noise generators of the chain seeded with ``seed``.

    Both are spawned from ``SeedSequence(seed)``. The noise stream yields one row of
    standard normals for the initial state, then one row per step; the coordinate stream
    yields one uniform u per step, read as the coordinate floor(u d).
    """
    coordinate, noise = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(coordinate), np.random.default_rng(noise)


def uniform_to_coordinate(u: np.ndarray, d: int) -> np.ndarray:
    return np.minimum((np.asarray(u) * d).astype(np.int64), d - 1)


class BlockStreams:
    """
    The streams of a block of chains, one pair per seed.

    Draws are taken chain by chain, so a chain's values depend only on its own seed
    and never on the block it runs in or on the chunk length.
    """

    def __init__(self, seeds: Sequence[int], width: int, dim: int):
        """
        Initialize the block streams.

        Args:
            seeds: One seed per chain
            width: Standard normals per chain per row
            dim: Dimension d, the range of drawn coordinates
        """
        if len(seeds) == 0:
            raise ValueError("a block needs at least one chain seed")
        pairs = [chain_streams(int(s)) for s in seeds]
        self._coordinate: List[np.random.Generator] = [c for c, _ in pairs]
        self._noise: List[np.random.Generator] = [n for _, n in pairs]
        self.width = width
        self.dim = dim
        self.chunk = max(1, CHUNK_DOUBLES // (len(seeds) * (width + 1)))

    def __len__(self) -> int:
        return len(self._noise)

    def normals(self, rows: int) -> np.ndarray:
        """The next ``rows`` rows of every chain, shape (n, rows, width)."""
        out = np.empty((len(self), rows, self.width))
        for i, rng in enumerate(self._noise):
            rng.standard_normal(out=out[i])
        return out

    def coordinates(self, rows: int) -> Optional[np.ndarray]:
        """The next ``rows`` coordinates of every chain, shape (n, rows); None when d = 1."""
        if self.dim == 1:
            return None
        u = np.empty((len(self), rows))
        for i, rng in enumerate(self._coordinate):
            rng.random(out=u[i])
        return uniform_to_coordinate(u, self.dim)
