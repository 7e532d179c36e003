"""Order caps shared by every exponential algorithm in the package."""
from __future__ import annotations

import contextlib
import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Caps:
    closure: int = 10080
    lattice: int = 128
    lattice_size: int = 20000
    iso: int = 256
    aut: int = 64

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"cap {f.name} must be positive")


_current = Caps()


def caps() -> Caps:
    return _current


def set_caps(new: Caps) -> None:
    global _current
    _current = new


@contextlib.contextmanager
def using_caps(**overrides):
    """Temporarily override caps, e.g. ``with using_caps(lattice=64): ...``."""
    global _current
    old = _current
    _current = dataclasses.replace(old, **overrides)
    try:
        yield _current
    finally:
        _current = old
