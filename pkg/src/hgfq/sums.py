"""
Gauss sums, Jacobi sums, and their Pochhammer-style ratios, all exact.

Key identities used internally:
 - g(eta) g°(eta-bar) = eta(-1) q, which yields division-free reciprocals
   1/g(eta) = eta(-1) g°(eta-bar) / q,
 - the product formula j(eta_1..eta_n) = g(eta_1)...g(eta_n)/g°(eta_1...eta_n)
   for not-all-trivial inputs, with (1-(1-q)^n)/q in the all-trivial case.

Jacobi sums of up to three characters are computed by direct enumeration
(and the product formula is cross-checked in tests); longer tuples use the
product formula to avoid a q^(n-1) blowup.  Gauss sums are memoized per
(field, psi, character).
"""

from __future__ import annotations

from functools import lru_cache

from .chars import AddChar, MulChar, standard_psi
from .cyclo import Cyclo


@lru_cache(maxsize=None)
def gauss(eta: MulChar, psi: AddChar) -> Cyclo:
    """g(eta) = -sum over x in k* of psi(x) eta(x); g(trivial) = 1."""
    if psi.is_trivial():
        raise ValueError("psi must be nontrivial")
    if eta.field != psi.field:
        raise ValueError("characters over different fields")
    f = eta.field
    total = Cyclo.zero()
    for x in f.units():
        total = total + psi.eval(x) * eta.eval(x)
    return -total


def gauss_circ(eta: MulChar, psi: AddChar) -> Cyclo:
    """g°(eta) = q^delta(eta) g(eta)."""
    g = gauss(eta, psi)
    return g.scale(eta.field.q) if eta.is_trivial() else g


def gauss_inverse(eta: MulChar, psi: AddChar) -> Cyclo:
    """1/g(eta) = eta(-1) g°(eta-bar) / q, division-free."""
    f = eta.field
    sign = eta.eval(f.neg(1))
    return (sign * gauss_circ(eta.inverse(), psi)) / f.q


def gauss_circ_inverse(eta: MulChar, psi: AddChar) -> Cyclo:
    """1/g°(eta)."""
    inv = gauss_inverse(eta, psi)
    return inv / eta.field.q if eta.is_trivial() else inv


def jacobi_direct(*etas: MulChar) -> Cyclo:
    """(-1)^(n-1) sum over unit tuples with x_1+...+x_n = 1 of prod eta_i(x_i)."""
    n = len(etas)
    if n < 2:
        raise ValueError("need at least two characters")
    f = etas[0].field
    if any(e.field != f for e in etas):
        raise ValueError("characters over different fields")
    total = Cyclo.zero()

    def rec(i: int, remaining: int, acc: Cyclo):
        nonlocal total
        if i == n - 1:
            if remaining != 0:
                total = total + acc * etas[i].eval(remaining)
            return
        for x in f.units():
            rest = f.sub(remaining, x)
            rec(i + 1, rest, acc * etas[i].eval(x))

    rec(0, 1, Cyclo.integer(1))
    return total if n % 2 else -total


def jacobi_product_formula(*etas: MulChar, psi: AddChar | None = None) -> Cyclo:
    n = len(etas)
    f = etas[0].field
    if all(e.is_trivial() for e in etas):
        return Cyclo.rational(1 - (1 - f.q) ** n, f.q)
    psi = psi or standard_psi(f)
    prod_char = etas[0]
    value = gauss(etas[0], psi)
    for e in etas[1:]:
        value = value * gauss(e, psi)
        prod_char = prod_char * e
    return value * gauss_circ_inverse(prod_char, psi)


@lru_cache(maxsize=None)
def jacobi(*etas: MulChar) -> Cyclo:
    """The Jacobi sum, exact in Q(zeta_(q-1))."""
    if len(etas) < 2:
        raise ValueError("need at least two characters")
    if len(etas) <= 3:
        return jacobi_direct(*etas)
    return jacobi_product_formula(*etas)


@lru_cache(maxsize=None)
def pochhammer(alpha: MulChar, nu: MulChar, psi: AddChar) -> Cyclo:
    """(alpha)_nu = g(alpha nu)/g(alpha)."""
    return gauss(alpha * nu, psi) * gauss_inverse(alpha, psi)


@lru_cache(maxsize=None)
def pochhammer_circ(alpha: MulChar, nu: MulChar, psi: AddChar) -> Cyclo:
    """(alpha)_nu° = g°(alpha nu)/g°(alpha)."""
    return gauss_circ(alpha * nu, psi) * gauss_circ_inverse(alpha, psi)
