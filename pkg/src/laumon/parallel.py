"""Optional process pool for the verifiers.

Work is split into chunks of plain data (flint objects cannot be pickled);
results are concatenated in chunk order, so the output does not depend on
which worker finishes first.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def run_chunks(fn, chunks, jobs: int = 1) -> list:
    if jobs is None or jobs <= 1 or len(chunks) <= 1:
        results = [fn(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, chunks))
    out = []
    for r in results:
        out.extend(r)
    return out
