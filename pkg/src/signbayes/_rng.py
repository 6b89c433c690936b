"""Counter-style reproducible random streams.

Work is cut into fixed-size chunks; chunk ``k`` of a run with seed ``s``
always draws from the generator seeded by ``SeedSequence(s, spawn_key=(k,))``.
Results therefore depend only on ``(seed, n)``, not on how many workers
process the chunks or in which order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

CHUNK = 1 << 16


def chunk_generator(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def chunk_bounds(n: int, chunk: int = CHUNK):
    return [(k, start, min(start + chunk, n)) for k, start in enumerate(range(0, n, chunk))]


def map_chunks(fn, seed: int, n: int, workers: int = 1):
    """Apply ``fn(rng, size)`` chunk by chunk; results come back in chunk order."""
    jobs = chunk_bounds(n)

    def run(job):
        k, start, stop = job
        return fn(chunk_generator(seed, k), stop - start)

    if workers <= 1 or len(jobs) == 1:
        return [run(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, jobs))


def open_uniform(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform draws on the open interval (0, 1)."""
    return (rng.integers(0, 1 << 53, size=size, dtype=np.int64) + 0.5) / float(1 << 53)
