"""Bisection on a monotone boolean predicate; used for every threshold hunt."""

from __future__ import annotations

from typing import Callable


def threshold_scan(
    predicate: Callable[[float], bool],
    lo: float,
    hi: float,
    tol: float,
    max_iter: int = 200,
) -> float:
    """Locate the flip point of a monotone predicate on [lo, hi].

    The predicate must differ at the two endpoints (the caller asserts
    monotonicity).  Bisection narrows the bracket to ``tol`` and returns the
    midpoint.
    """
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    if lo >= hi:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    p_lo = bool(predicate(lo))
    p_hi = bool(predicate(hi))
    if p_lo == p_hi:
        raise ValueError(
            f"predicate is {p_lo} at both endpoints of [{lo}, {hi}]; no threshold inside"
        )
    for _ in range(max_iter):
        if hi - lo < tol:
            break
        mid = 0.5 * (lo + hi)
        if bool(predicate(mid)) == p_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
