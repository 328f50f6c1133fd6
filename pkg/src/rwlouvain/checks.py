"""Opt-in runtime invariant checks.

When enabled, the detectors recompute modularity from scratch after every
Louvain pass, every accepted split and every refinement phase, and raise
``AssertionError`` if it decreased. This costs an extra O(m) per step, so it
is off by default; set ``RWLOUVAIN_CHECKS=1`` or use :func:`invariant_checks`.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from .constants import MONOTONE_SLACK

_enabled = os.environ.get("RWLOUVAIN_CHECKS", "") not in ("", "0")


def enabled() -> bool:
    return _enabled


def set_enabled(flag: bool) -> None:
    global _enabled
    _enabled = bool(flag)


@contextmanager
def invariant_checks(flag: bool = True):
    global _enabled
    previous = _enabled
    _enabled = bool(flag)
    try:
        yield
    finally:
        _enabled = previous


def assert_nondecreasing(before: float, after: float, what: str) -> None:
    if after < before - MONOTONE_SLACK:
        raise AssertionError(f"{what} decreased modularity: {before!r} -> {after!r}")
