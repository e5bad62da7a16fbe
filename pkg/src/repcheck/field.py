"""Finite fields GF(p^k) with elements stored as integer indices.

An element of GF(p^k) is the integer ``sum(c_i * p**i)`` where ``c_i`` are the
coefficients (lowest degree first) of its polynomial representative modulo the
field's defining polynomial.  For k == 1 this is just the residue mod p.

All arithmetic methods accept numpy arrays (or Python ints) and broadcast.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_ORDER = 1 << 16

# Defining polynomials, coefficients lowest degree first, monic.  These are the
# Conway polynomials for the listed fields (each is primitive, so ``t`` generates
# the multiplicative group).
SHIPPED_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}

# Above this order the q x q addition/multiplication tables are not built.
_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _polymulmod_prime(a, b, mod, p):
    """Multiply coefficient lists a, b over GF(p) modulo the monic ``mod``."""
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for t in range(k + 1):
                prod[d - k + t] = (prod[d - k + t] - c * mod[t]) % p
    return (prod + [0] * k)[:k]


def _is_primitive(mod: tuple[int, ...], p: int) -> bool:
    """True when ``t`` has multiplicative order p^k - 1 modulo ``mod``."""
    k = len(mod) - 1
    order = p**k - 1
    seen = 0
    x = [1] + [0] * (k - 1)
    t = [0, 1] + [0] * (k - 2) if k > 1 else [0]
    if k == 1:
        return False
    one = [1] + [0] * (k - 1)
    for _ in range(order):
        x = _polymulmod_prime(x, t, mod, p)
        seen += 1
        if x == one:
            return seen == order
    return False


@lru_cache(maxsize=None)
def least_primitive_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least (by coefficient tuple, low degree first) primitive
    monic polynomial of degree k over GF(p).  Fallback for unshipped fields."""
    for n in range(p**k):
        coeffs = []
        m = n
        for _ in range(k):
            coeffs.append(m % p)
            m //= p
        mod = tuple(coeffs) + (1,)
        if mod[0] == 0:
            continue
        if _is_primitive(mod, p):
            return mod
    raise FieldError(f"no primitive polynomial of degree {k} over GF({p})")


class FieldCtx:
    """Arithmetic context for GF(p^k)."""

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if p**k > MAX_ORDER:
            raise FieldError(f"GF({p}^{k}) exceeds the supported order 2^16")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            self.modulus = (0, 1)
        else:
            if modulus is None:
                modulus = SHIPPED_MODULI.get((p, k)) or least_primitive_modulus(p, k)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError("modulus must be monic of degree k")
            self.modulus = modulus
        self._build_tables()

    # -- construction -------------------------------------------------------

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        self.powers = p ** np.arange(k, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        self.digits = (idx[:, None] // self.powers[None, :]) % p  # q x k

        # exp/log over the multiplicative group; find a generator first
        gen = self._find_generator()
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            if log[x] != -1:
                raise FieldError(f"modulus {self.modulus} is not irreducible over GF({p})")
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        if x != 1:
            raise FieldError(f"modulus {self.modulus} is not irreducible over GF({p})")
        exp[q - 1:] = exp[: q - 1]
        self.exp, self.log = exp, log
        self.generator = gen

        inv = np.zeros(q, dtype=np.int64)
        nz = idx[1:]
        inv[1:] = exp[(q - 1 - log[nz]) % (q - 1)]
        self.inv_table = inv
        self.neg_table = self._from_digits((-self.digits) % p)
        self.frob_table = self.pow(idx, p)

        self._packed = {}
        self.add_table = self.mul_table = None
        if k > 1 and q <= _TABLE_LIMIT:
            self.add_table = self._from_digits((self.digits[:, None, :] + self.digits[None, :, :]) % p)
            self.mul_table = self._mul_log(idx[:, None], idx[None, :])

    def _from_digits(self, d):
        return np.asarray(d, dtype=np.int64) @ self.powers

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        da = [int(c) for c in self.digits[a]]
        db = [int(c) for c in self.digits[b]]
        c = _polymulmod_prime(da, db, self.modulus, self.p)
        return int(sum(ci * self.p**i for i, ci in enumerate(c)))

    def _find_generator(self) -> int:
        q = self.q
        if q == 2:
            return 1
        fs = prime_factors(q - 1)
        for g in range(2, q) if self.k == 1 else range(1, q):
            ok = True
            for f in fs:
                x, e, b = 1, (q - 1) // f, g
                while e:
                    if e & 1:
                        x = self._slow_mul(x, b)
                    b = self._slow_mul(b, b)
                    e >>= 1
                if x == 1:
                    ok = False
                    break
            if ok:
                return g
        raise FieldError(f"modulus {self.modulus} is not irreducible over GF({self.p})")

    # -- elementwise arithmetic --------------------------------------------

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def array(self, data) -> np.ndarray:
        a = np.asarray(data, dtype=np.int64)
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise FieldError(f"entries out of range for {self}")
        return a

    def add(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        if self.add_table is not None:
            return self.add_table[a, b]
        return self._from_digits((self.digits[a] + self.digits[b]) % self.p)

    def neg(self, a):
        if self.k == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return self.neg_table[a]

    def sub(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        return self.add(a, self.neg_table[b])

    def _mul_log(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def mul(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        if self.mul_table is not None:
            return self.mul_table[a, b]
        return self._mul_log(a, b)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError(f"division by zero in {self}")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        a = np.asarray(a, dtype=np.int64)
        if n == 0:
            return np.ones_like(a)
        if n < 0:
            a = self.inv(a)
            n = -n
        e = (self.log[a] * (n % (self.q - 1))) % (self.q - 1)
        return np.where(a == 0, 0, self.exp[e])

    def frobenius(self, a, i: int = 1):
        """a -> a^(p^i), the i-th power of the Frobenius automorphism."""
        a = np.asarray(a, dtype=np.int64)
        for _ in range(i % self.k):
            a = self.frob_table[a]
        return a

    # -- matrices ------------------------------------------------------------

    def matmul(self, a, b):
        """Matrix product over the field; broadcasts over leading axes like ``@``.

        For k > 1 the base-p digit planes are packed into one float64 matrix
        per operand when the packed product stays below 2^53 (exact), otherwise
        the k^2 plane products are formed separately.
        """
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p, k = self.p, self.k
        if k == 1:
            c = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
            return np.rint(np.fmod(c, p)).astype(np.int64)
        bound = max(a.shape[-1], 1) * k * (p - 1) ** 2
        bits = bound.bit_length()
        if bits * (2 * k - 1) <= 52:
            # digit planes packed into one float64 product: c = sum_d c_d 2^(bits d)
            table = self._packed.get(bits)
            if table is None:
                table = self._packed[bits] = self.digits @ (2.0 ** (bits * np.arange(k)))
            c = (table[a] @ table[b]).astype(np.int64)
            mask = (1 << bits) - 1
            planes = [((c >> (bits * d)) & mask) % p for d in range(2 * k - 1)]
        else:
            da = self.digits[a].astype(np.float64)
            db = self.digits[b].astype(np.float64)
            planes = [None] * (2 * k - 1)
            for i in range(k):
                ai = da[..., i]
                for j in range(k):
                    t = ai @ db[..., j]
                    planes[i + j] = t if planes[i + j] is None else planes[i + j] + t
            planes = [np.rint(np.fmod(t, p)).astype(np.int64) for t in planes]
        mod = self.modulus
        for d in range(2 * k - 2, k - 1, -1):
            c = planes[d]
            for t in range(k):
                if mod[t]:
                    planes[d - k + t] = (planes[d - k + t] - c * mod[t]) % p
        out = planes[0]
        for i in range(1, k):
            out = out + planes[i] * int(self.powers[i])
        return out

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    # -- embeddings ------------------------------------------------------------

    def from_coeffs(self, coeffs) -> int:
        """Element with the given GF(p) coefficient list (lowest degree first)."""
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise FieldError(f"coefficient list longer than extension degree {self.k}")
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs)))

    def embedding_into(self, big: "FieldCtx") -> np.ndarray:
        """Index table of a field embedding self -> big (requires k | big.k).

        The generator ``t`` of self is sent to the least-index root of self's
        modulus in ``big``; the table is therefore deterministic.
        """
        if big.p != self.p or big.k % self.k:
            raise FieldError(f"{self} does not embed in {big}")
        if self.k == 1:
            return np.arange(self.q, dtype=np.int64)
        cand = np.arange(big.q, dtype=np.int64)
        val = np.zeros(big.q, dtype=np.int64)
        for c in reversed(self.modulus):
            val = big.add(big.mul(val, cand), c)
        roots = np.flatnonzero(val == 0)
        root = int(roots[0])
        table = np.zeros(self.q, dtype=np.int64)
        rp = [big.pow(root, i) for i in range(self.k)]
        for a in range(self.q):
            acc = 0
            for i, c in enumerate(self.digits[a]):
                if c:
                    acc = big.add(acc, big.mul(int(c), rp[i]))
            table[a] = acc
        return table


@lru_cache(maxsize=None)
def ff_make(p: int, k: int = 1) -> FieldCtx:
    """Shared field context for GF(p^k) with the shipped modulus."""
    return FieldCtx(p, k)


def parse_entry(F: FieldCtx, x) -> int:
    """Matrix literal entry: an int index, or a coefficient list for k >= 2."""
    if isinstance(x, (list, tuple)):
        return F.from_coeffs(x)
    x = int(x)
    if not 0 <= x < F.q:
        raise FieldError(f"entry {x} out of range for {F}")
    return x


def parse_matrix(F: FieldCtx, rows) -> np.ndarray:
    if not isinstance(rows, (list, tuple)) or not rows:
        raise FieldError("matrix literal must be a non-empty 2-D array")
    out = [[parse_entry(F, x) for x in row] for row in rows]
    if len({len(r) for r in out}) != 1:
        raise FieldError("ragged matrix literal")
    return np.array(out, dtype=np.int64)
