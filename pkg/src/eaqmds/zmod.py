"""q^2-cyclotomic cosets modulo n and the split of a defining set.

Everything here is integer arithmetic on residues.  Cosets are stored as sets
and compared by set equality; the canonical label is the smallest element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Literal


class InvalidModulusError(ValueError):
    pass


def _check(n: int, q: int) -> None:
    if n < 1:
        raise InvalidModulusError(f"modulus must be positive, got {n}")
    if math.gcd(n, q) != 1:
        raise InvalidModulusError(f"gcd({n}, {q}) != 1")


@dataclass(frozen=True, order=True)
class CyclotomicCoset:
    n: int
    base: int
    elements: tuple[int, ...]

    @property
    def representative(self) -> int:
        return self.elements[0]

    def __contains__(self, x: int) -> bool:
        return x % self.n in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def cyclotomic_coset(s: int, n: int, q: int) -> CyclotomicCoset:
    _check(n, q)
    base = q * q % n
    s %= n
    orbit = {s}
    x = s * base % n
    while x not in orbit:
        orbit.add(x)
        x = x * base % n
    return CyclotomicCoset(n, base, tuple(sorted(orbit)))


def all_cosets(n: int, q: int) -> list[CyclotomicCoset]:
    """Partition of Z_n, ordered by representative."""
    _check(n, q)
    seen: set[int] = set()
    out = []
    for s in range(n):
        if s not in seen:
            c = cyclotomic_coset(s, n, q)
            seen.update(c.elements)
            out.append(c)
    return out


def neg_q_image(S: Iterable[int], q: int, n: int) -> set[int]:
    return {(n - q * s) % n for s in S}


@dataclass(frozen=True)
class SkewSymmetric:
    rep: int
    kind: Literal["skew_symmetric"] = "skew_symmetric"


@dataclass(frozen=True)
class SkewAsymmetricPair:
    rep: int
    partner: int
    kind: Literal["asymmetric_pair"] = "asymmetric_pair"


def classify_coset(c: CyclotomicCoset, q: int) -> SkewSymmetric | SkewAsymmetricPair:
    image = (c.n - q * c.representative) % c.n
    if image in c.elements:
        return SkewSymmetric(c.representative)
    return SkewAsymmetricPair(c.representative, cyclotomic_coset(image, c.n, q).representative)


@dataclass(frozen=True)
class DefiningSet:
    n: int
    q: int
    reps: tuple[int, ...]
    elements: frozenset[int]

    @classmethod
    def from_reps(cls, n: int, q: int, reps: Iterable[int]) -> DefiningSet:
        _check(n, q)
        cosets: list[CyclotomicCoset] = []
        for r in reps:
            c = cyclotomic_coset(r, n, q)
            if c not in cosets:
                cosets.append(c)
        elems = frozenset(x for c in cosets for x in c.elements)
        return cls(n, q, tuple(c.representative for c in cosets), elems)

    @classmethod
    def from_elements(cls, n: int, q: int, elements: Iterable[int]) -> DefiningSet:
        """Union of the cosets meeting ``elements``, ordered by representative."""
        elems = {x % n for x in elements}
        reps = sorted({cyclotomic_coset(x, n, q).representative for x in elems})
        return cls.from_reps(n, q, reps)

    @property
    def cosets(self) -> list[CyclotomicCoset]:
        return [cyclotomic_coset(r, self.n, self.q) for r in self.reps]

    def __len__(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list[int]:
        return sorted(self.elements)


@dataclass(frozen=True)
class Decomposition:
    tss: DefiningSet
    tsas: DefiningSet
    witnesses: list[SkewSymmetric | SkewAsymmetricPair] = field(default_factory=list)


def decompose(T: DefiningSet) -> Decomposition:
    """Split T into T_ss = T & T^{-q} and T_sas = T minus T_ss."""
    n, q = T.n, T.q
    tss_elems = T.elements & neg_q_image(T.elements, q, n)
    tsas_elems = T.elements - tss_elems
    tss = DefiningSet.from_elements(n, q, tss_elems)
    tsas = DefiningSet.from_elements(n, q, tsas_elems)
    witnesses: list[SkewSymmetric | SkewAsymmetricPair] = []
    seen: set[int] = set()
    for c in sorted(T.cosets):
        if c.representative in seen:
            continue
        w = classify_coset(c, q)
        if isinstance(w, SkewSymmetric):
            witnesses.append(w)
        elif w.partner in T.elements:
            witnesses.append(w)
            seen.add(w.partner)
    return Decomposition(tss, tsas, witnesses)
