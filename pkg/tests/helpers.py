"""Shared analysis helpers for the test suite."""

import numpy as np


def count_returns(values: np.ndarray, threshold: float, below: bool = True) -> int:
    """Number of distinct re-entries of ``values`` into the target region.

    The target region is values < threshold (below=True) or values > threshold.
    Samples before the trajectory first LEAVES the region are ignored, so a
    trace that starts inside the region does not count its departure point.
    """
    inside = values < threshold if below else values > threshold
    outside_idx = np.flatnonzero(~inside)
    if len(outside_idx) == 0:
        return 0
    tail = inside[outside_idx[0] :]
    return int(np.sum(tail[1:] & ~tail[:-1]))
