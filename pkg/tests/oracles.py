"""Slow reference computations kept separate from the numpy code paths."""

from __future__ import annotations

import itertools

from eaqmds.gfield import Element, Field


def rank_elements(rows: list[list[Element]]) -> int:
    """Gaussian elimination on Element objects (operator overloads only)."""
    A = [list(r) for r in rows]
    if not A:
        return 0
    rank = 0
    for c in range(len(A[0])):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = A[rank][c].inverse()
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def to_elements(F: Field, M) -> list[list[Element]]:
    return [[F(int(x)) for x in row] for row in M]


def gram_rank_elements(F: Field, M, q: int) -> int:
    H = to_elements(F, M)
    Hc = [[x**q for x in row] for row in H]
    G = [[sum((a * b for a, b in zip(H[i], Hc[j])), F(0)) for j in range(len(H))] for i in range(len(H))]
    return rank_elements(G)


def rank_mod_p(rows, p: int) -> int:
    A = [[x % p for x in r] for r in rows]
    rank = 0
    for c in range(len(A[0]) if A else 0):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c] * inv % p
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def first_dependent_subset_mod_p(H, p: int):
    """Lexicographically first r-subset of dependent columns, or None."""
    r, n = len(H), len(H[0])
    for cols in itertools.combinations(range(n), r):
        if rank_mod_p([[row[j] for j in cols] for row in H], p) < r:
            return cols
    return None


def smallest_irreducible_by_roots(p: int, e: int) -> tuple[int, ...]:
    """For e in (2, 3) irreducible <=> no root in GF(p); search high-first."""
    for high_first in itertools.product(range(p), repeat=e):
        f = list(reversed(high_first)) + [1]
        if all(sum(c * pow(x, i, p) for i, c in enumerate(f)) % p for x in range(p)):
            return tuple(f)
    raise AssertionError
