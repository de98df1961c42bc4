"""Exact arithmetic in GF(p^e) and the quadratic tower GF(q^2) < GF(q^4).

Elements are stored as integers: the coefficient vector ``(c_0, ..., c_{e-1})``
of the residue polynomial packs to ``sum(c_i * p**i)``.  Small fields get
log/exp tables (and full add/mul tables when tiny) so that the vectorised
helpers used by :mod:`eaqmds.linalg` stay fast.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

# fields up to this order get log/exp/Zech tables
TABLE_LIMIT = 1 << 18
# fields up to this order additionally get dense add/mul tables
DENSE_LIMIT = 1 << 10


class FieldError(ValueError):
    pass


class NotPrimePowerError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorisation, ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class PrimePower:
    p: int
    e: int

    @property
    def q(self) -> int:
        return self.p**self.e


def factor_prime_power(q: int) -> PrimePower:
    if q < 2:
        raise NotPrimePowerError(f"{q} is not a prime power")
    fac = factorize(q)
    if len(fac) != 1:
        raise NotPrimePowerError(f"{q} is not a prime power")
    ((p, e),) = fac.items()
    return PrimePower(p, e)


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists low -> high, no trailing zeros


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim([c % p for c in a])
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        f = r[-1] * inv_lead % p
        quot[shift] = f
        for i, c in enumerate(b):
            r[shift + i] = (r[shift + i] - f * c) % p
        _trim(r)
    return _trim(quot), r


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return poly_divmod(a, b, p)[1]


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def poly_powmod(a: Sequence[int], k: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(a, f, p)
    while k:
        if k & 1:
            result = poly_mod(poly_mul(result, base, p), f, p)
        base = poly_mod(poly_mul(base, base, p), f, p)
        k >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    f = _trim(list(f))
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    x = [0, 1]

    def frob_iter(times: int) -> list[int]:
        h = x
        for _ in range(times):
            h = poly_powmod(h, p, f, p)
        return h

    if poly_sub(frob_iter(e), x, p):
        return False
    for r in factorize(e):
        h = poly_sub(frob_iter(e // r), x, p)
        if len(poly_gcd(h, f, p)) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# fields


class Field:
    """GF(p^e) defined by a monic irreducible ``modulus`` (low -> high).

    Instances are immutable; lookup tables are built lazily on first use.
    """

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree e")
        self.p = p
        self.e = e
        self.modulus = modulus
        self.order = p**e
        self._pw = [p**i for i in range(e)]

    def __repr__(self) -> str:
        return f"Field(p={self.p}, e={self.e}, modulus={self.modulus})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    # -- encoding -----------------------------------------------------------

    def to_coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.e:
            coeffs = poly_mod(coeffs, self.modulus, self.p)
        return sum((c % self.p) * w for c, w in zip(coeffs, self._pw))

    def __call__(self, value: int | Sequence[int]) -> Element:
        if isinstance(value, int):
            if not 0 <= value < self.order:
                raise FieldError(f"{value} out of range for GF({self.order})")
            return Element(self, value)
        return Element(self, self.from_coeffs(value))

    # -- scalar arithmetic on encoded ints ------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p, out, w = self.p, 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += (x + y) % p * w
            w *= p
        return out

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        p, out, w = self.p, 0, 1
        while a:
            a, x = divmod(a, p)
            out += -x % p * w
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return a * b % self.p
        if self.order <= TABLE_LIMIT:
            t = self._tables
            return int(t.exp[(t.log[a] + t.log[b]) % (self.order - 1)])
        return self._poly_mul(a, b)

    def _poly_mul(self, a: int, b: int) -> int:
        prod = poly_mul(self.to_coeffs(a), self.to_coeffs(b), self.p)
        return self.from_coeffs(poly_mod(prod, self.modulus, self.p))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        if a == 0:
            return 1 if k == 0 else 0
        if self.order <= TABLE_LIMIT and self.e > 1:
            t = self._tables
            return int(t.exp[t.log[a] * k % (self.order - 1)])
        k %= self.order - 1
        result = 1
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def order_of(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        o = self.order - 1
        for r, k in factorize(o).items():
            for _ in range(k):
                if self.pow(a, o // r) == 1:
                    o //= r
                else:
                    break
        return o

    @functools.cached_property
    def primitive_element(self) -> int:
        """Smallest encoding that generates the multiplicative group."""
        o = self.order - 1
        primes = list(factorize(o)) if o > 1 else []
        for g in range(1, self.order):
            if all(self._slow_pow(g, o // r) != 1 for r in primes):
                return g
        raise FieldError("no primitive element found")  # pragma: no cover

    def _slow_pow(self, a: int, k: int) -> int:
        result = 1
        while k:
            if k & 1:
                result = self._poly_mul(result, a) if self.e > 1 else result * a % self.p
            a = self._poly_mul(a, a) if self.e > 1 else a * a % self.p
            k >>= 1
        return result

    # -- tables and vectorised arithmetic -------------------------------------

    @functools.cached_property
    def _tables(self) -> _Tables:
        if self.order > TABLE_LIMIT:
            raise FieldError(f"GF({self.order}) too large for table arithmetic")
        Q = self.order
        g = self.primitive_element
        exp = np.zeros(Q - 1, dtype=np.int64)
        x = 1
        for i in range(Q - 1):
            exp[i] = x
            x = self._poly_mul(x, g) if self.e > 1 else x * g % self.p
        log = np.full(Q, -1, dtype=np.int64)
        log[exp] = np.arange(Q - 1)
        # Zech logarithm: g^zech[d] = 1 + g^d, -1 where 1 + g^d = 0
        low = exp % self.p
        plus_one = exp - low + (low + 1) % self.p
        zech = np.where(plus_one == 0, -1, log[plus_one])
        return _Tables(exp=exp, log=log, zech=zech)

    @functools.cached_property
    def _dense(self) -> tuple[np.ndarray, np.ndarray] | None:
        if self.order > DENSE_LIMIT:
            return None
        a = np.arange(self.order, dtype=np.int64)
        A, B = np.meshgrid(a, a, indexing="ij")
        add = self._add_sparse(A.ravel(), B.ravel())
        mul = self._mul_sparse(A.ravel(), B.ravel())
        return add.astype(np.int32), mul.astype(np.int32)

    def _add_sparse(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a + b) % self.p
        t, o = self._tables, self.order - 1
        la, lb = t.log[a], t.log[b]
        z = t.zech[(lb - la) % o]
        s = np.where(z < 0, 0, t.exp[(la + z) % o])
        return np.where(a == 0, b, np.where(b == 0, a, s))

    def _mul_sparse(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return a * b % self.p
        t = self._tables
        s = t.exp[(t.log[a] + t.log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, s)

    def add_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        dense = self._dense
        if dense is not None:
            return dense[0][a * self.order + b].astype(np.int64)
        return self._add_sparse(a, b)

    def mul_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        dense = self._dense
        if dense is not None:
            return dense[1][a * self.order + b].astype(np.int64)
        return self._mul_sparse(a, b)

    def neg_arr(self, a: np.ndarray) -> np.ndarray:
        return self.mul_arr(a, self.neg(1))

    def pow_arr(self, a: np.ndarray, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return np.array([pow(int(x), k, self.p) if x else 0 for x in a.ravel()], dtype=np.int64).reshape(a.shape)
        t = self._tables
        return np.where(a == 0, 0, t.exp[(t.log[a] * k) % (self.order - 1)])


@dataclass(frozen=True)
class _Tables:
    exp: np.ndarray
    log: np.ndarray
    zech: np.ndarray


@dataclass(frozen=True)
class Element:
    field: Field
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.to_coeffs(self.value)

    def _other(self, other: Element | int) -> int:
        if isinstance(other, Element):
            if other.field != self.field:
                raise FieldError("elements belong to different fields")
            return other.value
        return self.field.from_coeffs([other])

    def __add__(self, other):
        return Element(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Element(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Element(self.field, self.field.sub(self._other(other), self.value))

    def __neg__(self):
        return Element(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return Element(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Element(self.field, self.field.div(self.value, self._other(other)))

    def __pow__(self, k: int):
        return Element(self.field, self.field.pow(self.value, k))

    def inverse(self) -> Element:
        return Element(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"GF({self.field.order})<{self.value}>"


@functools.lru_cache(maxsize=None)
def make_field(p: int, e: int) -> Field:
    """GF(p^e) with the lexicographically smallest monic irreducible modulus.

    Candidates are ordered by their coefficients from x^(e-1) down to x^0.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if e < 1:
        raise FieldError("extension degree must be positive")
    if e == 1:
        return Field(p, 1, (0, 1))
    for high_first in itertools.product(range(p), repeat=e):
        if high_first[-1] == 0:
            continue
        f = list(reversed(high_first)) + [1]
        if is_irreducible(f, p):
            return Field(p, e, f)
    raise FieldError("no irreducible polynomial found")  # pragma: no cover


def quadratic_field(q: int) -> Field:
    """GF(q^2) for a prime power q."""
    pp = factor_prime_power(q)
    return make_field(pp.p, 2 * pp.e)


def conjugate(a: Element) -> Element:
    """The involution a -> a^q of GF(q^2)."""
    f = a.field
    if f.e % 2:
        raise FieldError(f"GF({f.order}) is not a quadratic extension")
    return a ** (f.p ** (f.e // 2))


# ---------------------------------------------------------------------------
# tower GF(q^2) < GF(q^4)


class TowerMap:
    """GF(q^4) viewed as a 2-dimensional space over GF(q^2) with basis (1, theta).

    The embedding sends the generator ``x`` of the base field to the smallest
    (by encoding) root of the base modulus inside the top field.
    """

    def __init__(self, q: int):
        pp = factor_prime_power(q)
        self.q = q
        self.base = make_field(pp.p, 2 * pp.e)
        self.top = make_field(pp.p, 4 * pp.e)
        self.root = self._smallest_root()
        top, p = self.top, pp.p
        q2 = q * q
        self.theta = next(v for v in range(top.order) if top.pow(v, q2) != v)
        self._theta_gap = top.sub(self.theta, top.pow(self.theta, q2))
        # embedding matrix over GF(p): column i = coeffs of root^i
        cols = [top.to_coeffs(top.pow(self.root, i)) for i in range(self.base.e)]
        self._embed_cols = cols
        self._pull = _left_inverse(cols, p)

    def _smallest_root(self) -> int:
        base, top = self.base, self.top
        q2 = self.q * self.q
        # the roots lie in the order-(q^2 - 1) subgroup of the top field
        omega = top.pow(top.primitive_element, (top.order - 1) // (q2 - 1))
        x = 1
        for _ in range(q2 - 1):
            if self._eval_base_modulus(x) == 0:
                conj = [x]
                for _ in range(base.e - 1):
                    conj.append(top.pow(conj[-1], base.p))
                return min(conj)
            x = top.mul(x, omega)
        raise FieldError("base modulus has no root in the top field")  # pragma: no cover

    def _eval_base_modulus(self, x: int) -> int:
        top, acc = self.top, 0
        for c in reversed(self.base.modulus):
            acc = top.add(top.mul(acc, x), c)
        return acc

    def embed(self, b: int) -> int:
        top = self.top
        out = [0] * top.e
        for c, col in zip(self.base.to_coeffs(b), self._embed_cols):
            if c:
                for i, v in enumerate(col):
                    out[i] = (out[i] + c * v) % top.p
        return top.from_coeffs(out)

    def in_subfield(self, a: int) -> bool:
        return self.top.pow(a, self.q * self.q) == a

    def pullback(self, a: int) -> int:
        """Inverse of :meth:`embed`; raises if ``a`` is not in the subfield."""
        p = self.top.p
        coeffs = self.top.to_coeffs(a)
        rows, inv = self._pull
        rhs = [coeffs[r] for r in rows]
        u = [sum(inv[i][j] * rhs[j] for j in range(len(rhs))) % p for i in range(len(rhs))]
        b = self.base.from_coeffs(u)
        if self.embed(b) != a:
            raise FieldError("element is not in the GF(q^2) subfield")
        return b

    def project(self, a: int) -> tuple[int, int]:
        """Coordinates (u, v) of a = u + v*theta, both in GF(q^2)."""
        top = self.top
        conj = top.pow(a, self.q * self.q)
        v = top.div(top.sub(a, conj), self._theta_gap)
        u = top.sub(a, top.mul(v, self.theta))
        return self.pullback(u), self.pullback(v)

    def assemble(self, u: int, v: int) -> int:
        top = self.top
        return top.add(self.embed(u), top.mul(self.embed(v), self.theta))


def _left_inverse(cols: list[tuple[int, ...]], p: int) -> tuple[list[int], list[list[int]]]:
    """Pick rows of the (tall) column matrix forming an invertible square block."""
    k, m = len(cols), len(cols[0])
    M = [[cols[j][i] for j in range(k)] for i in range(m)]
    chosen: list[int] = []
    basis: list[list[int]] = []
    for i in range(m):
        trial = basis + [M[i]]
        if _rank_mod_p(trial, p) == len(trial):
            basis, chosen = trial, chosen + [i]
            if len(chosen) == k:
                break
    return chosen, _invert_mod_p(basis, p)


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    A = [list(r) for r in rows]
    rank, ncols = 0, len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c] % p), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        for i in range(len(A)):
            if i != rank and A[i][c] % p:
                f = A[i][c] * inv % p
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def _invert_mod_p(A: list[list[int]], p: int) -> list[list[int]]:
    n = len(A)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] % p)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]


@functools.lru_cache(maxsize=None)
def make_tower(q: int) -> TowerMap:
    return TowerMap(q)


def nth_root_of_unity(n: int, tower: TowerMap) -> int:
    """Element of exact order ``n`` in the top field: g^((Q-1)/n)."""
    top = tower.top
    if n < 1 or (top.order - 1) % n:
        raise FieldError(f"{n} does not divide {top.order - 1}")
    return top.pow(top.primitive_element, (top.order - 1) // n)


def project_to_subfield(a: int, tower: TowerMap) -> tuple[int, int]:
    return tower.project(a)
