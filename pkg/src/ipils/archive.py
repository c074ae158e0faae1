"""Nondominated archive with a reference-point cone view."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .core import Solution, dominates


@dataclass(frozen=True)
class ReferencePoint:
    values: tuple[int, ...]
    active: bool = True

    @staticmethod
    def inactive(K: int) -> "ReferencePoint":
        return ReferencePoint((0,) * K, active=False)


def in_cone(z: Sequence[int], ref: ReferencePoint) -> bool:
    """True iff z lies in the cone spanned from the reference point."""
    if not ref.active:
        return True
    if len(z) != len(ref.values):
        raise ValueError("objective vector and reference point differ in length")
    return all(zk >= rk for zk, rk in zip(z, ref.values))


class InsertOutcome(Enum):
    ADDED = "added"
    DOMINATED = "dominated"
    DUPLICATE = "duplicate"


class ParetoArchive:
    """Mutually nondominated solution set; one solution per objective vector.

    The full archive is always retained; the reference point only filters
    the cone view. Mutations are serialized by an internal lock so a
    session thread may move the reference point while the search worker
    inserts.
    """

    def __init__(self, K: int) -> None:
        self.K = K
        self._members: list[Solution] = []
        self._vectors: set[tuple[int, ...]] = set()
        self.reference = ReferencePoint.inactive(K)
        self.generation = 0  # bumps on every mutation
        self.ref_generation = 0  # bumps on every set_reference
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._members)

    def members(self) -> list[Solution]:
        with self._lock:
            return list(self._members)

    def objective_vectors(self) -> set[tuple[int, ...]]:
        with self._lock:
            return set(self._vectors)

    def try_insert(self, candidate: Solution) -> InsertOutcome:
        with self._lock:
            z = candidate.objectives
            if z in self._vectors:
                return InsertOutcome.DUPLICATE
            for member in self._members:
                if dominates(member.objectives, z):
                    return InsertOutcome.DOMINATED
            survivors = [
                m for m in self._members if not dominates(z, m.objectives)
            ]
            survivors.append(candidate)
            self._members = survivors
            self._vectors = {m.objectives for m in survivors}
            self.generation += 1
            return InsertOutcome.ADDED

    def cone_view(self, ref: ReferencePoint | None = None) -> list[Solution]:
        """Members inside the cone, in insertion order."""
        with self._lock:
            r = self.reference if ref is None else ref
            return [m for m in self._members if in_cone(m.objectives, r)]

    def set_reference(self, ref: ReferencePoint) -> None:
        if len(ref.values) != self.K:
            raise ValueError(f"reference point must have {self.K} components")
        with self._lock:
            self.reference = ref
            self.generation += 1
            self.ref_generation += 1

    def snapshot(self) -> list[dict]:
        """Serializable records for the current archive state."""
        with self._lock:
            ref = self.reference
            return [
                {
                    "selection": m.bitstring(),
                    "objectives": list(m.objectives),
                    "cone": in_cone(m.objectives, ref),
                }
                for m in self._members
            ]
