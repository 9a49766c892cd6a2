"""Finite fields F_p and F_{p^n} with table-driven arithmetic.

Elements are integer codes c_0 + c_1 p + ... + c_{n-1} p^{n-1} where
(c_0, ..., c_{n-1}) is the little-endian coefficient vector in the
polynomial basis.  Prime-field elements are therefore the integers
0..p-1, and comparing codes compares coefficient vectors from the
leading coefficient down.  That integer order is the canonical element
order used for every deterministic tie-break in the package.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_has_root(coeffs, p):
    # coeffs little-endian, evaluated at every x in F_p
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def smallest_irreducible(p: int, n: int) -> tuple:
    """Monic irreducible of degree n <= 3, first in lexicographic order of
    its little-endian coefficient vector (constant term first)."""
    if n == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=n):
        coeffs = tuple(low) + (1,)
        if not _poly_has_root(coeffs, p):
            return coeffs
    raise ValueError(f"no irreducible of degree {n} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int = 1
    modulus: tuple = dc_field(default=None)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if not 1 <= self.n <= 3:
            raise ValueError("only degrees 1..3 are supported")
        if self.n == 1:
            object.__setattr__(self, "modulus", None)
            return
        mod = self.modulus
        if mod is None:
            mod = smallest_irreducible(self.p, self.n)
        mod = tuple(int(c) % self.p for c in mod)
        if len(mod) != self.n + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of the field degree")
        # a polynomial of degree <= 3 is irreducible iff it has no root
        if _poly_has_root(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    # ---- basic data -------------------------------------------------
    @property
    def q(self) -> int:
        return self.p ** self.n

    @property
    def is_prime_field(self) -> bool:
        return self.n == 1

    def __repr__(self):
        if self.n == 1:
            return f"F_{self.p}"
        return f"F_{self.q}"

    def to_json(self) -> dict:
        d = {"p": self.p, "degree": self.n}
        if self.n > 1:
            d["modulus"] = list(self.modulus)
        return d

    @classmethod
    def from_json(cls, d) -> "FieldSpec":
        mod = d.get("modulus")
        return cls(int(d["p"]), int(d.get("degree", 1)), tuple(mod) if mod else None)

    # ---- code <-> coefficient vectors ------------------------------
    def coeffs(self, a: int) -> list:
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_coeffs(self, cs) -> int:
        a = 0
        for c in reversed(list(cs)):
            a = a * self.p + (int(c) % self.p)
        return a

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    # ---- tables (extension fields only) ------------------------------
    @cached_property
    def _add_t(self):
        q, p = self.q, self.p
        cs = np.array([self.coeffs(a) for a in range(q)], dtype=np.int64)
        s = (cs[:, None, :] + cs[None, :, :]) % p
        weights = p ** np.arange(self.n)
        return (s * weights).sum(-1)

    @cached_property
    def _neg_t(self):
        cs = np.array([self.coeffs(a) for a in range(self.q)], dtype=np.int64)
        return ((-cs) % self.p * self.p ** np.arange(self.n)).sum(-1)

    @cached_property
    def _mul_t(self):
        q, p, n = self.q, self.p, self.n
        mod = self.modulus
        table = np.zeros((q, q), dtype=np.int64)
        cs = [self.coeffs(a) for a in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * n - 1)
                for i, ca in enumerate(cs[a]):
                    if ca:
                        for j, cb in enumerate(cs[b]):
                            prod[i + j] = (prod[i + j] + ca * cb) % p
                # reduce by the monic modulus from the top degree down
                for d in range(2 * n - 2, n - 1, -1):
                    c = prod[d]
                    if c:
                        for k in range(n + 1):
                            prod[d - n + k] = (prod[d - n + k] - c * mod[k]) % p
                v = self.from_coeffs(prod[:n])
                table[a, b] = table[b, a] = v
        return table

    @cached_property
    def _inv_t(self):
        inv = np.zeros(self.q, dtype=np.int64)
        mt = self._mul_t if self.n > 1 else None
        for a in range(1, self.q):
            if self.n == 1:
                inv[a] = pow(a, self.p - 2, self.p)
            else:
                inv[a] = int(np.nonzero(mt[a] == 1)[0][0])
        return inv

    @cached_property
    def _frob_t(self):
        return np.array([self._pow_scalar(a, self.p) for a in range(self.q)], dtype=np.int64)

    @cached_property
    def _ifrob_t(self):
        return np.array([self._pow_scalar(a, self.p ** (self.n - 1)) for a in range(self.q)],
                        dtype=np.int64)

    def _pow_scalar(self, a: int, e: int) -> int:
        if self.n == 1:
            return pow(int(a), e, self.p)
        result, base = 1, int(a)
        mt = self._mul_t
        while e:
            if e & 1:
                result = int(mt[result, base])
            base = int(mt[base, base])
            e >>= 1
        return result

    # ---- vectorized arithmetic on codes ------------------------------
    def add(self, a, b):
        if self.n == 1:
            return (np.asarray(a) + b) % self.p
        return self._add_t[a, b]

    def neg(self, a):
        if self.n == 1:
            return (-np.asarray(a)) % self.p
        return self._neg_t[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.n == 1:
            return (np.asarray(a) * b) % self.p
        return self._mul_t[a, b]

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._inv_t[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        a = np.asarray(a, dtype=np.int64)
        if self.n == 1:
            out = np.ones_like(a)
            base = a % self.p
            while e:
                if e & 1:
                    out = out * base % self.p
                base = base * base % self.p
                e >>= 1
            return out
        out = np.ones_like(a)
        base = a.copy()
        while e:
            if e & 1:
                out = self._mul_t[out, base]
            base = self._mul_t[base, base]
            e >>= 1
        return out

    def frob(self, a):
        if self.n == 1:
            return np.asarray(a) % self.p
        return self._frob_t[a]

    def inv_frob(self, a):
        if self.n == 1:
            return np.asarray(a) % self.p
        return self._ifrob_t[a]

    def dot(self, a, b, axis=-1):
        """Sum over `axis` of elementwise products."""
        prod = self.mul(a, b)
        return self.sum(prod, axis=axis)

    def sum(self, a, axis=-1):
        a = np.asarray(a)
        if self.n == 1:
            return a.sum(axis=axis) % self.p
        a = np.moveaxis(a, axis, 0)
        acc = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            acc = self._add_t[acc, row]
        return acc

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.n == 1:
            return (A @ B) % self.p
        vec = B.ndim == 1
        if vec:
            B = B[:, None]
        acc = np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.int64)
        for k in range(A.shape[-1]):
            acc = self._add_t[acc, self._mul_t[A[..., k, None], B[..., k, None, :]]]
        return acc[..., 0] if vec else acc

    def elem(self, value) -> "FieldElement":
        return FieldElement(self, self.from_int(value))

    def from_int(self, value) -> int:
        """Integer literal -> element of the prime subfield (negatives allowed)."""
        return int(value) % self.p

    # ---- power classes -----------------------------------------------
    def is_kth_power(self, a: int, k: int) -> bool:
        if a == 0:
            return True
        return bool(np.any(self.pow(self.nonzero(), k) == a))

    def kth_powers(self, k: int) -> set:
        return set(int(x) for x in self.pow(self.nonzero(), k))

    def roots_of_unity(self, m: int) -> list:
        return [int(x) for x in self.nonzero() if self._pow_scalar(int(x), m) == 1]


class FieldElement:
    """An immutable element of a FieldSpec, for scalar convenience code."""
    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "code", int(code))

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    def _other(self, b):
        if isinstance(b, FieldElement):
            if b.spec != self.spec:
                raise ValueError("elements of different fields")
            return b.code
        return self.spec.from_int(b)

    def __add__(self, b):
        return FieldElement(self.spec, self.spec.add(self.code, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElement(self.spec, self.spec.sub(self.code, self._other(b)))

    def __rsub__(self, b):
        return FieldElement(self.spec, self.spec.sub(self._other(b), self.code))

    def __mul__(self, b):
        return FieldElement(self.spec, self.spec.mul(self.code, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return FieldElement(self.spec, self.spec.div(self.code, self._other(b)))

    def __rtruediv__(self, b):
        return FieldElement(self.spec, self.spec.div(self._other(b), self.code))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __pow__(self, e):
        return FieldElement(self.spec, self.spec.pow(self.code, int(e)))

    def __eq__(self, b):
        if isinstance(b, FieldElement):
            return self.spec == b.spec and self.code == b.code
        if isinstance(b, int):
            return self.code == self.spec.from_int(b)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.code))

    def __lt__(self, b):
        return self.code < self._other(b)

    def __int__(self):
        return self.code

    def coeffs(self) -> list:
        return self.spec.coeffs(self.code)

    def __repr__(self):
        return f"{self.spec!r}({self.code})"


def frobenius(a: FieldElement) -> FieldElement:
    return FieldElement(a.spec, a.spec.frob(a.code))


def inv_frobenius(a: FieldElement) -> FieldElement:
    """The unique b with b^p = a, computed as a^(p^(n-1))."""
    return FieldElement(a.spec, a.spec.inv_frob(a.code))


def _subgroup(spec: FieldSpec, k: int, m: int | None) -> set:
    if m is None:
        return spec.kth_powers(k)
    mu = spec.roots_of_unity(m)
    return set(int(spec.pow(e, k)) for e in mu)


def coset_reps(spec: FieldSpec, k: int, m: int | None = None) -> list:
    """One representative per coset of F* modulo H, where H is the k-th powers
    or, when m is given, {e^k : e^m = 1}.  The minimum of each coset in the
    canonical order is chosen, so 1 represents H itself."""
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    if m is not None and m != 5:
        raise ValueError("m must be 5 when given")
    H = _subgroup(spec, k, m)
    seen, reps = set(), []
    for a in range(1, spec.q):
        if a in seen:
            continue
        reps.append(a)
        seen.update(int(spec.mul(a, h)) for h in H)
    return reps


def same_coset(spec: FieldSpec, a: int, b: int, k: int, m: int | None = None) -> bool:
    """Is b/a in the subgroup used by coset_reps(spec, k, m)?"""
    return int(spec.div(b, a)) in _subgroup(spec, k, m)


def count_conic_solutions(spec: FieldSpec, a: int, b: int) -> int:
    """|{(x, y) : x^2 - a y^2 = b}| by exhaustive scan."""
    xs = spec.elements()
    x2 = spec.mul(xs, xs)
    ay2 = spec.mul(a, x2)
    lhs = spec.sub(x2[:, None], ay2[None, :])
    return int(np.count_nonzero(lhs == b))


def solve_conic(spec: FieldSpec, a: int, b: int):
    """First solution (x, y) of x^2 - a y^2 = b in canonical order, or None."""
    if a == 0:
        raise ValueError("a must be nonzero")
    xs = spec.elements()
    x2 = spec.mul(xs, xs)
    ay2 = spec.mul(a, x2)
    lhs = spec.sub(x2[:, None], ay2[None, :])
    hits = np.argwhere(lhs == b)
    if len(hits) == 0:
        return None
    x, y = hits[0]
    return int(x), int(y)


def parse_elem(spec: FieldSpec, x) -> int:
    """JSON value -> code: a bare integer lives in the prime subfield, a list
    is a little-endian coefficient array."""
    if isinstance(x, (list, tuple)):
        return spec.from_coeffs(x)
    if isinstance(x, FieldElement):
        return x.code
    return spec.from_int(int(x))


def dump_elem(spec: FieldSpec, a):
    a = int(a)
    if spec.is_prime_field:
        return a
    return spec.coeffs(a)
