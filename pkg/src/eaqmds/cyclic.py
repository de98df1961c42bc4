"""Consecutive-coset cyclic codes over GF(q^2): defining set, generator
polynomial, parity-check matrix and BCH designed distance."""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from eaqmds import linalg
from eaqmds.gfield import Field, TowerMap, make_tower, nth_root_of_unity
from eaqmds.zmod import DefiningSet


class ConsistencyError(RuntimeError):
    """A construction produced something its own invariants rule out."""


@dataclass(frozen=True)
class ConsecutiveSpec:
    q: int
    n: int
    k: int  # run index: T = C_s u C_{s+1} u ... u C_{s+k}

    def __post_init__(self):
        if self.n % 2 == 0:
            raise ValueError(f"length {self.n} must be odd")
        if not 0 <= self.k <= self.s - 2:
            raise ValueError(f"run index {self.k} outside [0, {self.s - 2}]")

    @property
    def s(self) -> int:
        return (self.n + 1) // 2


def build_T(spec: ConsecutiveSpec) -> DefiningSet:
    s = spec.s
    return DefiningSet.from_reps(spec.n, spec.q, [s + i for i in range(spec.k + 1)])


@dataclass(frozen=True)
class CyclicCode:
    n: int
    q: int
    T: DefiningSet
    g: tuple[int, ...]  # GF(q^2) coefficients, low -> high
    H: np.ndarray
    designed_distance: int

    @property
    def dimension(self) -> int:
        return self.n - len(self.T)

    @property
    def field(self) -> Field:
        return make_tower(self.q).base


def _check_field(T: DefiningSet, tower: TowerMap) -> None:
    if tower.q != T.q:
        raise ValueError(f"tower is for q={tower.q}, defining set for q={T.q}")


def generator_polynomial(T: DefiningSet, gamma: int, tower: TowerMap) -> tuple[int, ...]:
    """prod_{i in T} (x - gamma^i), expanded in GF(q^4) and pulled back to GF(q^2)."""
    _check_field(T, tower)
    top = tower.top
    poly = [1]
    for i in sorted(T.elements):
        root = top.pow(gamma, i)
        nxt = [0] * (len(poly) + 1)
        for j, c in enumerate(poly):
            nxt[j + 1] = top.add(nxt[j + 1], c)
            nxt[j] = top.sub(nxt[j], top.mul(c, root))
        poly = nxt
    out = []
    for c in poly:
        if not tower.in_subfield(c):
            raise ConsistencyError("generator coefficient outside GF(q^2); T is not coset-closed")
        out.append(tower.pullback(c))
    return tuple(out)


def poly_divmod(F: Field, a, b) -> tuple[list[int], list[int]]:
    """Division of polynomials with coefficients in F (low -> high)."""
    r = list(a)
    while r and r[-1] == 0:
        r.pop()
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = F.inv(b[-1])
    quot = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        f = F.mul(r[-1], inv_lead)
        quot[shift] = f
        for i, c in enumerate(b):
            r[shift + i] = F.sub(r[shift + i], F.mul(f, c))
        while r and r[-1] == 0:
            r.pop()
    return quot, r


def x_n_minus_1(F: Field, n: int) -> list[int]:
    return [F.neg(1)] + [0] * (n - 1) + [1]


def parity_check_matrix(T: DefiningSet, gamma: int, tower: TowerMap) -> np.ndarray:
    """|T| x n check matrix over GF(q^2) in reduced row-echelon form.

    Each Vandermonde row (gamma^{i j})_j for a coset representative i is split
    into its two GF(q^2)-coordinate rows with respect to the basis (1, theta).
    """
    _check_field(T, tower)
    n = T.n
    rows = []
    for i in T.reps:
        rows += _coordinate_rows(tower, gamma, n, i)
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    H = linalg.row_space_basis(tower.base, rows)
    if H.shape[0] != len(T):
        raise ConsistencyError(f"check matrix rank {H.shape[0]} != |T| = {len(T)}")
    return H


@functools.lru_cache(maxsize=4096)
def _coordinate_rows(tower: TowerMap, gamma: int, n: int, i: int) -> tuple[list[int], list[int]]:
    top = tower.top
    step = top.pow(gamma, i)
    x, u_row, v_row = 1, [], []
    for _ in range(n):
        u, v = tower.project(x)
        u_row.append(u)
        v_row.append(v)
        x = top.mul(x, step)
    return u_row, v_row


def check_polynomial_matrix(T: DefiningSet, g, tower: TowerMap) -> np.ndarray:
    """Alternative check matrix: shifts of the reversed check polynomial h = (x^n - 1)/g."""
    F, n = tower.base, T.n
    h, rem = poly_divmod(F, x_n_minus_1(F, n), g)
    if rem:
        raise ConsistencyError("generator polynomial does not divide x^n - 1")
    h_rev = list(reversed(h))
    rows = []
    for i in range(n - len(h) + 1):
        row = [0] * n
        row[i : i + len(h_rev)] = h_rev
        rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


def bch_designed_distance(T: DefiningSet) -> int:
    """One more than the longest cyclically consecutive run inside T."""
    n = T.n
    if len(T) == n:
        raise ValueError("defining set is all of Z_n: the code is zero")
    if not T.elements:
        return 1
    # start scanning just after a gap so runs never wrap past the start
    start = next(x for x in range(n) if x not in T.elements)
    best = run = 0
    for j in range(1, n + 1):
        if (start + j) % n in T.elements:
            run += 1
            best = max(best, run)
        else:
            run = 0
    return best + 1


def build_code(T: DefiningSet, tower: TowerMap | None = None) -> CyclicCode:
    tower = tower or make_tower(T.q)
    gamma = nth_root_of_unity(T.n, tower)
    g = generator_polynomial(T, gamma, tower)
    H = parity_check_matrix(T, gamma, tower)
    return CyclicCode(T.n, T.q, T, g, H, bch_designed_distance(T))
