"""Exact number theory and integer linear algebra used throughout the package.

Polynomials are integer coefficient lists in ascending degree order, so
``[-1, 1]`` is ``x - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, prod
from typing import Sequence


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError(f"divisors() needs n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as ``{p: exponent}`` (empty for n = 1)."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n > 1 and factorize(n) == {n: 1}


def is_composite(n: int) -> bool:
    return n > 1 and not is_prime(n)


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def p_part(m: int, p: int) -> int:
    """Largest power of p dividing m."""
    q = 1
    while m % p == 0:
        m //= p
        q *= p
    return q


def crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """Chinese remaindering for pairwise coprime moduli."""
    x, m = 0, 1
    for r, mi in zip(residues, moduli):
        # x + m*t = r (mod mi)
        t = ((r - x) * pow(m, -1, mi)) % mi if mi > 1 else 0
        x += m * t
        m *= mi
    return x % m if m > 1 else 0


def units(m: int) -> list[int]:
    """Unit residues mod m.  For m = 1 the single residue 0 is returned."""
    if m == 1:
        return [0]
    return [k for k in range(1, m) if gcd(k, m) == 1]


def multiplicative_order(a: int, m: int) -> int:
    if m == 1:
        return 1
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k


def subgroup_closure(gens, m: int) -> frozenset[int]:
    """Multiplicative closure of unit residues mod m (always contains 1)."""
    one = 1 % m
    seen = {one}
    frontier = [one]
    gens = [g % m for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % m
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


@dataclass(frozen=True)
class UnitGroupDecomposition:
    """Direct-product decomposition of the unit group mod ``modulus``.

    Every unit is ``prod(g_i ** e_i)`` for a unique exponent vector with
    ``0 <= e_i < orders[i]``; ``log`` maps each unit to that vector.
    """

    modulus: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]

    @property
    def order(self) -> int:
        return prod(self.orders)

    def exp(self, vector: Sequence[int]) -> int:
        x = 1 % self.modulus
        for g, e, o in zip(self.generators, vector, self.orders):
            x = x * pow(g, e % o, self.modulus) % self.modulus
        return x

    @property
    def log(self) -> dict[int, tuple[int, ...]]:
        return _log_table(self)

    def elements(self) -> list[int]:
        return sorted(self.log)


@lru_cache(maxsize=None)
def _log_table(ug: UnitGroupDecomposition) -> dict[int, tuple[int, ...]]:
    # brute force: group order is at most the modulus
    table = {}
    for vec in product(*(range(o) for o in ug.orders)):
        table[ug.exp(vec)] = vec
    return table


def _primitive_root_prime_power(p: int, k: int) -> int:
    q = p**k
    phi = q // p * (p - 1)
    primes = list(factorize(phi))
    for g in range(2, q):
        if g % p == 0:
            continue
        if all(pow(g, phi // r, q) != 1 for r in primes):
            return g
    raise ArithmeticError(f"no primitive root mod {q}")


@lru_cache(maxsize=None)
def unit_group(m: int) -> UnitGroupDecomposition:
    """Standard decomposition of (Z/m)^* via CRT over prime powers."""
    if m < 1:
        raise ValueError(f"unit_group() needs m >= 1, got {m}")
    parts = [(p, k, p**k) for p, k in sorted(factorize(m).items())]
    moduli = [q for _, _, q in parts]
    gens: list[int] = []
    orders: list[int] = []

    def lift(i: int, value: int) -> int:
        residues = [1 % q for q in moduli]
        residues[i] = value % moduli[i]
        return crt(residues, moduli)

    for i, (p, k, q) in enumerate(parts):
        if p == 2:
            if k >= 2:
                gens.append(lift(i, q - 1))
                orders.append(2)
            if k >= 3:
                gens.append(lift(i, 5))
                orders.append(2 ** (k - 2))
        else:
            gens.append(lift(i, _primitive_root_prime_power(p, k)))
            orders.append(q // p * (p - 1))
    return UnitGroupDecomposition(m, tuple(gens), tuple(orders))


# -- polynomials and cyclotomic integers ------------------------------------


def _trim(poly: list[int]) -> list[int]:
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divmod_monic(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials by a monic divisor."""
    if b[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [0], _trim(rem or [0])
    quo = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            quo[i - db] = c
            for j in range(db + 1):
                rem[i - db + j] -= c * b[j]
    return _trim(quo), _trim(rem[:db] or [0])


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num, r = poly_divmod_monic(num, _cyclotomic(d))
        assert r == [0], "x^n - 1 not divisible by a lower cyclotomic factor"
    return tuple(num)


def cyclotomic_poly(n: int) -> list[int]:
    """The n-th cyclotomic polynomial, ascending coefficients."""
    if n < 1:
        raise ValueError(f"cyclotomic_poly() needs n >= 1, got {n}")
    return list(_cyclotomic(n))


def cyclo_reduce(n: int, coeffs: Sequence[int]) -> tuple[int, ...]:
    """Canonical remainder of ``sum coeffs[i] x^i`` modulo Phi_n, length phi(n)."""
    phi = _cyclotomic(n)
    deg = len(phi) - 1
    rem = list(coeffs)
    for i in range(len(rem) - 1, deg - 1, -1):
        c = rem[i]
        if c:
            base = i - deg
            for j in range(deg + 1):
                rem[base + j] -= c * phi[j]
    rem = rem[:deg] + [0] * max(0, deg - len(rem))
    return tuple(rem)


@dataclass(frozen=True, eq=False)
class CycloInt:
    """Element of Z[zeta_n] stored as an unreduced coefficient vector.

    Arithmetic stays on the length-n vector (indices wrap mod n since
    zeta_n^n = 1); reduction modulo Phi_n happens only in comparisons.
    """

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, n: int) -> "CycloInt":
        return cls(n, (0,) * n)

    @classmethod
    def from_exponents(cls, n: int, exponents) -> "CycloInt":
        c = [0] * n
        for e in exponents:
            c[e % n] += 1
        return cls(n, tuple(c))

    def _check(self, other: "CycloInt"):
        if self.n != other.n:
            raise ValueError(f"mixed orders {self.n} and {other.n}")

    def __add__(self, other: "CycloInt") -> "CycloInt":
        self._check(other)
        return CycloInt(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycloInt":
        return CycloInt(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CycloInt") -> "CycloInt":
        return self + (-other)

    def __mul__(self, other: "CycloInt") -> "CycloInt":
        self._check(other)
        out = [0] * self.n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % self.n] += a * b
        return CycloInt(self.n, tuple(out))

    def reduced(self) -> tuple[int, ...]:
        return cyclo_reduce(self.n, self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloInt):
            return NotImplemented
        return self.n == other.n and self.reduced() == other.reduced()

    def __hash__(self) -> int:
        return hash((self.n, self.reduced()))


def cyclo_is_zero(v: CycloInt) -> bool:
    return not any(v.reduced())


# -- Smith normal form ------------------------------------------------------


def _identity(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Return ``(D, P, Q)`` with ``D = P @ A @ Q``, P and Q unimodular.

    D is diagonal with non-negative entries and d_i | d_{i+1}.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    D = [list(map(int, r)) for r in A]
    P = _identity(rows)
    Q = _identity(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for M in (D, Q):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        D[dst] = [x + c * y for x, y in zip(D[dst], D[src])]
        P[dst] = [x + c * y for x, y in zip(P[dst], P[src])]

    def add_col(src, dst, c):
        for M in (D, Q):
            for r in M:
                r[dst] += c * r[src]

    def neg_row(i):
        D[i] = [-x for x in D[i]]
        P[i] = [-x for x in P[i]]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        done = False
            if done:
                # divisibility of the trailing block
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                     if D[i][j] % D[t][t]),
                    None,
                )
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest remaining entry of row/col t into the pivot
            best = (t, t)
            for i in range(t, rows):
                if D[i][t] and abs(D[i][t]) < abs(D[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, cols):
                if D[t][j] and abs(D[t][j]) < abs(D[best[0]][best[1]]):
                    best = (t, j)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
        if D[t][t] < 0:
            neg_row(t)
        t += 1
    return D, P, Q


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def integer_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Basis of {x in Z^cols : A x = 0}, as a list of column vectors."""
    if not A:
        return [[int(i == j) for i in range(ncols or 0)] for j in range(ncols or 0)]
    D, _, Q = smith_normal_form(A)
    cols = len(A[0])
    rank = sum(1 for i in range(min(len(D), cols)) if D[i][i])
    return [[Q[i][j] for i in range(cols)] for j in range(rank, cols)]


def abelian_subgroup_order(vectors: Sequence[Sequence[int]], orders: Sequence[int]) -> int:
    """Order of the subgroup of prod Z/orders[i] generated by ``vectors``."""
    r = len(orders)
    if r == 0:
        return 1
    M = [[v[i] for v in vectors] + [orders[i] if k == i else 0 for k in range(r)] for i in range(r)]
    D, _, _ = smith_normal_form(M)
    index = prod(D[i][i] for i in range(r))
    return prod(orders) // index
