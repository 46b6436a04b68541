"""
Multiplicative and additive characters of a small finite field.

A multiplicative character is indexed by an exponent j modulo N = q - 1
against the field's fixed generator: chi_j(gen^k) = zeta_N^(jk), with the
convention chi(0) = 0.  An additive character is indexed by a twist element
a: psi_a(x) = zeta_p^Tr(ax); psi = psi_1 is the fixed nontrivial one.

Values land in the exact cyclotomic ring (conductor N for multiplicative,
p for additive, p*N for mixed products).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cyclo import Cyclo, zeta
from .ffield import Field


@dataclass(frozen=True)
class MulChar:
    field: Field
    j: int

    def __post_init__(self):
        object.__setattr__(self, "j", self.j % max(self.field.N, 1))

    def __call__(self, x: int) -> Cyclo:
        return self.eval(x)

    def eval(self, x: int) -> Cyclo:
        if x == 0:
            return Cyclo.zero(max(self.field.N, 1))
        return _mul_value(self.field, (self.j * self.field.dlog[x]) % max(self.field.N, 1))

    def eval_int(self, n: int) -> Cyclo:
        """Evaluate at an ordinary integer reduced into the prime field."""
        return self.eval(n % self.field.p)

    def __mul__(self, other: "MulChar") -> "MulChar":
        if other.field != self.field:
            raise ValueError("characters over different fields")
        return MulChar(self.field, self.j + other.j)

    def inverse(self) -> "MulChar":
        return MulChar(self.field, -self.j)

    conj = inverse

    def __pow__(self, n: int) -> "MulChar":
        return MulChar(self.field, self.j * n)

    def is_trivial(self) -> bool:
        return self.j == 0

    def delta(self) -> int:
        """1 if trivial, else 0."""
        return 1 if self.j == 0 else 0

    def order(self) -> int:
        from math import gcd

        N = max(self.field.N, 1)
        return N // gcd(self.j, N)

    def __repr__(self):
        return f"chi_{self.j}[q={self.field.q}]"


@dataclass(frozen=True)
class AddChar:
    field: Field
    a: int

    def __call__(self, x: int) -> Cyclo:
        return self.eval(x)

    def eval(self, x: int) -> Cyclo:
        return _add_value(self.field, self.field.trace_to_prime(self.field.mul(self.a, x)))

    def is_trivial(self) -> bool:
        return self.a == 0

    def twist(self, c: int) -> "AddChar":
        """psi_a composed with multiplication by c, i.e. psi_(a*c)."""
        return AddChar(self.field, self.field.mul(self.a, c))

    def __repr__(self):
        return f"psi_{self.a}[q={self.field.q}]"


@lru_cache(maxsize=None)
def _mul_value(field: Field, k: int) -> Cyclo:
    return zeta(max(field.N, 1), k)


@lru_cache(maxsize=None)
def _add_value(field: Field, t: int) -> Cyclo:
    return zeta(field.p, t)


def trivial_char(field: Field) -> MulChar:
    return MulChar(field, 0)


def standard_psi(field: Field) -> AddChar:
    return AddChar(field, 1)


def enumerate_mulchars(field: Field) -> list[MulChar]:
    return [MulChar(field, j) for j in range(max(field.N, 1))]


def enumerate_addchars(field: Field) -> list[AddChar]:
    return [AddChar(field, a) for a in field.elements()]
