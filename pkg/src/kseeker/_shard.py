import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np


def worker_count(requested: int | None = None) -> int:
    env = os.environ.get("KSEEKER_THREADS")
    if env:
        n = int(env)
    elif requested is not None:
        n = int(requested)
    else:
        n = 1
    if n < 1:
        raise ValueError("worker count must be >= 1")
    return n


def split(items, shards: int) -> list:
    items = np.asarray(items)
    shards = max(1, min(shards, len(items)))
    return [chunk for chunk in np.array_split(items, shards) if len(chunk)]


def map_shards(func, shards, workers: int):
    """Apply ``func`` to every shard; results come back in shard order."""
    if workers <= 1 or len(shards) <= 1:
        return [func(s) for s in shards]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, shards))
