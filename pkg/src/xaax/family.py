"""Parametric solution families.

A family lists its free scalar slots, the constraints they must satisfy and
a recipe turning a flat list of parameter values into a matrix. Positions
in ``Slot.free_entries`` are 1-based (row, col) pairs in the Jordan basis
recorded by ``assembly``.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import ConstraintViolation, ShapeMismatch
from .jordan import JordanStructure
from .matrix import Matrix
from .scalar import as_scalar

__all__ = ["Slot", "SolutionFamily", "KINDS"]

KINDS = ("critical-nonderogatory", "regular-chain", "commutant", "inverse-special")


@dataclass(frozen=True)
class Slot:
    block: int
    free_entries: tuple
    constraints: tuple = ()

    @property
    def size(self):
        return len(self.free_entries)


@dataclass(frozen=True)
class SolutionFamily:
    kind: str
    A: Matrix
    alpha: object
    slots: tuple
    assembly: JordanStructure
    form: object = None
    builder: Callable = field(default=None, compare=False, repr=False)
    # values -> list of human-readable constraint failures
    checker: Optional[Callable] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")

    @property
    def parameter_count(self):
        return sum(s.size for s in self.slots)

    def split(self, values):
        values = [as_scalar(v) for v in values]
        if len(values) != self.parameter_count:
            raise ShapeMismatch(
                f"family takes {self.parameter_count} parameters, got {len(values)}")
        out, pos = [], 0
        for s in self.slots:
            out.append(values[pos:pos + s.size])
            pos += s.size
        return out

    def violations(self, values):
        self.split(values)
        return list(self.checker(values)) if self.checker else []

    def is_admissible(self, values):
        return not self.violations(values)

    def instantiate(self, values=None):
        values = [0] * self.parameter_count if values is None else list(values)
        bad = self.violations(values)
        if bad:
            raise ConstraintViolation("; ".join(bad))
        return self.builder([as_scalar(v) for v in values])

    def sample(self, rng, magnitude, max_tries=10_000):
        """Draw integer parameters in ``[-magnitude, magnitude]``, rejecting
        inadmissible draws. Returns ``(values, rejections)``."""
        for rejections in range(max_tries):
            values = [rng.randint(-magnitude, magnitude) for _ in range(self.parameter_count)]
            if self.is_admissible(values):
                return values, rejections
        raise ConstraintViolation(f"no admissible draw in {max_tries} attempts")
