"""Independent oracles for the derived code parameters."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from eaqmds import linalg
from eaqmds.gfield import Field, TowerMap
from eaqmds.zmod import DefiningSet, decompose

DEFAULT_MINOR_CAP = 10**6

Saturation = Literal["saturated", "slack", "violated"]


def gram_rank(F: Field, H, q: int) -> int:
    """rank(H H^dagger) over GF(q^2), with dagger = transpose of x -> x^q."""
    H = linalg.as_matrix(H)
    if H.size == 0:
        return 0
    return linalg.rank(F, linalg.matmul(F, H, linalg.conjugate_transpose(F, H, q)))


@dataclass(frozen=True)
class EbitReport:
    gram_rank: int
    tss_size: int

    @property
    def agree(self) -> bool:
        return self.gram_rank == self.tss_size


def ebit_cross_check(T: DefiningSet, F: Field, H) -> EbitReport:
    return EbitReport(gram_rank(F, H, T.q), len(decompose(T).tss))


# ---------------------------------------------------------------------------
# MDS check


@dataclass(frozen=True)
class Mds:
    subsets: int
    verdict: Literal["mds"] = "mds"


@dataclass(frozen=True)
class NotMds:
    witness: tuple[int, ...]
    verdict: Literal["notMds"] = "notMds"


@dataclass(frozen=True)
class Skipped:
    cost: int
    verdict: Literal["skipped"] = "skipped"


MinorVerdict = Union[Mds, NotMds, Skipped]


_CHUNK = 1 << 20  # minors evaluated per numpy batch


def _binom_table(n: int) -> np.ndarray:
    B = np.zeros((n + 1, n + 2), dtype=np.int64)
    for a in range(n + 1):
        for b in range(min(a, n + 1) + 1):
            B[a, b] = math.comb(a, b)
    return B


def _colex_combos(items: int, size: int) -> np.ndarray:
    """All size-subsets of range(items), sorted ascending within a row, in colex order.

    Row i has colex rank i, i.e. sum_j C(row[j], j + 1) == i.
    """
    if size == 0:
        return np.zeros((1, 0), dtype=np.int64)
    prev = _colex_combos(items, size - 1)
    blocks = []
    for top in range(size - 1, items):
        # subsets of range(top) of size - 1 are exactly the first C(top, size-1) rows of prev
        head = prev[: math.comb(top, size - 1)]
        blocks.append(np.hstack([head, np.full((len(head), 1), top, dtype=np.int64)]))
    return np.vstack(blocks) if blocks else np.zeros((0, size), dtype=np.int64)


def _drop_rank(combos: np.ndarray, j: int, binom: np.ndarray) -> np.ndarray:
    """Colex rank of each row of ``combos`` with position j removed."""
    size = combos.shape[1]
    out = np.zeros(len(combos), dtype=np.int64)
    for i in range(size):
        if i != j:
            out += binom[combos[:, i], i + 1 if i < j else i]
    return out


def _all_minors_nonzero(F: Field, B: np.ndarray) -> bool:
    """True iff every square submatrix of B is nonsingular.

    Minors of size t are expanded along their first row from the minors of
    size t - 1, one level at a time.  Row and column subsets are indexed by
    their colex rank so the lookup of a sub-minor is pure arithmetic.
    """
    r, c = B.shape
    if (B == 0).any():
        return False
    binom = _binom_table(max(r, c))
    prev = B.copy()  # level 1: minors indexed by (row rank, col rank)
    for t in range(2, min(r, c) + 1):
        rows = _colex_combos(r, t)
        cols = _colex_combos(c, t)
        r_first = rows[:, 0]
        r_rest = _drop_rank(rows, 0, binom)
        c_drop = [_drop_rank(cols, j, binom) for j in range(t)]
        acc = np.empty((len(rows), len(cols)), dtype=np.int64)
        step = max(1, _CHUNK // len(cols))
        for lo in range(0, len(rows), step):
            hi = min(lo + step, len(rows))
            block = np.zeros((hi - lo, len(cols)), dtype=np.int64)
            for j in range(t):
                coef = B[r_first[lo:hi, None], cols[None, :, j]]
                sub = prev[r_rest[lo:hi, None], c_drop[j][None, :]]
                term = F.mul_arr(coef, sub)
                block = F.add_arr(block, F.neg_arr(term) if j % 2 else term)
            if (block == 0).any():
                return False
            acc[lo:hi] = block
        prev = acc
        del rows, cols, c_drop
    return True


def _first_dependent_subset(F: Field, H: np.ndarray) -> tuple[int, ...]:
    r, n = H.shape
    for cols in itertools.combinations(range(n), r):
        if linalg.rank(F, H[:, cols]) < r:
            return cols
    raise AssertionError("no dependent column subset")  # pragma: no cover


def mds_minor_check(F: Field, H, cap: int = DEFAULT_MINOR_CAP) -> MinorVerdict:
    """Decide whether every r columns of the r x n check matrix are independent.

    The cost is the number of r-subsets C(n, r); above ``cap`` nothing is
    computed and :class:`Skipped` is returned.  The witness of a failure is the
    lexicographically first dependent subset.
    """
    H = linalg.as_matrix(H)
    r, n = H.shape
    cost = math.comb(n, r)
    if cost > cap:
        return Skipped(cost)
    if r == 0:
        return Mds(cost)
    R, piv = linalg.rref(F, H)
    if len(piv) != r:
        raise ValueError(f"check matrix has rank {len(piv)} < {r} rows")
    free = [j for j in range(n) if j not in piv]
    if free and not _all_minors_nonzero(F, R[:, free]):
        return NotMds(_first_dependent_subset(F, H))
    return Mds(cost)


def cyclic_interval(T: DefiningSet) -> int | None:
    """Start a of T when T = {a, a+1, ..., a+|T|-1} mod n, else None."""
    n, elems = T.n, T.elements
    if not elems or len(elems) == n:
        return None
    starts = [a for a in elems if (a - 1) % n not in elems]
    if len(starts) != 1:
        return None
    return starts[0]


@dataclass(frozen=True)
class VandermondeCertificate:
    """Exact proof that ker(H) is MDS, without enumerating column subsets.

    If every codeword of ker(H) vanishes at gamma^a, ..., gamma^{a+r-1} for an
    element gamma of order n, each r columns of that Vandermonde block are
    independent, so the minimum distance is at least r + 1.  With
    dim ker(H) = n - r this meets the Singleton bound.
    """

    start: int | None
    gamma_order_ok: bool
    dimension_ok: bool
    kernel_vanishes: bool

    @property
    def holds(self) -> bool:
        return (
            self.start is not None
            and self.gamma_order_ok
            and self.dimension_ok
            and self.kernel_vanishes
        )


def vandermonde_certificate(T: DefiningSet, tower: TowerMap, gamma: int, H) -> VandermondeCertificate:
    H = linalg.as_matrix(H)
    F, top, n, r = tower.base, tower.top, T.n, len(T)
    start = cyclic_interval(T)
    order_ok = top.order_of(gamma) == n
    kernel = linalg.null_space(F, H)
    dim_ok = H.shape[1] == n and kernel.shape[0] == n - r
    vanishes = start is not None and order_ok
    if vanishes:
        for i in range(start, start + r):
            root = top.pow(gamma, i)
            for c in kernel:
                acc = 0
                for coef in reversed(c.tolist()):
                    acc = top.add(top.mul(acc, root), tower.embed(coef))
                if acc:
                    vanishes = False
                    break
            if not vanishes:
                break
    return VandermondeCertificate(start, order_ok, dim_ok, vanishes)


# ---------------------------------------------------------------------------
# EA-Singleton and records


def ea_singleton(n: int, k: int, d: int, c: int) -> Saturation:
    if not 0 <= c <= n - 1:
        raise ValueError(f"ebit count {c} outside [0, {n - 1}]")
    lhs, rhs = 2 * (d - 1), n - k + c
    if lhs > rhs:
        return "violated"
    return "saturated" if lhs == rhs else "slack"


_MDS_JSON = {"mds": True, "notMds": False}


@dataclass(frozen=True)
class EAQMDSRecord:
    q: int
    n: int
    k: int
    d: int
    c: int
    saturation: Saturation
    mds_verified: str  # "mds" | "notMds" | "skipped"
    gram_rank: int | None = None
    tss_size: int | None = None
    run_index: int | None = None

    @property
    def label(self) -> str:
        return f"[[{self.n},{self.k},{self.d};{self.c}]]_{self.q}"

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "c": self.c,
            "saturation": self.saturation,
            "mdsVerified": _MDS_JSON.get(self.mds_verified, self.mds_verified),
            "gramRank": self.gram_rank,
            "tssSize": self.tss_size,
            "runIndex": self.run_index,
        }


def eaqmds_record(
    T: DefiningSet,
    F: Field,
    H,
    delta: int,
    cap: int = DEFAULT_MINOR_CAP,
    run_index: int | None = None,
) -> EAQMDSRecord:
    n = T.n
    ebits = ebit_cross_check(T, F, H)
    c = ebits.gram_rank
    k = n - 2 * len(T) + c
    verdict = mds_minor_check(F, H, cap)
    return EAQMDSRecord(
        q=T.q,
        n=n,
        k=k,
        d=delta,
        c=c,
        saturation=ea_singleton(n, k, delta, c),
        mds_verified=verdict.verdict,
        gram_rank=ebits.gram_rank,
        tss_size=ebits.tss_size,
        run_index=run_index,
    )


def parameter_record(T: DefiningSet, delta: int, run_index: int | None = None) -> EAQMDSRecord:
    """Record from the coset-level ebit count alone (no matrices built)."""
    n = T.n
    c = len(decompose(T).tss)
    k = n - 2 * len(T) + c
    return EAQMDSRecord(
        q=T.q,
        n=n,
        k=k,
        d=delta,
        c=c,
        saturation=ea_singleton(n, k, delta, c),
        mds_verified="skipped",
        tss_size=c,
        run_index=run_index,
    )
