"""
Hypergeometric character sums over a finite field.

Evaluators for the one-variable series F(upper; lower; lambda), the
Appell-Lauricella families F_A/F_B/F_C/F_D, and the Humbert confluent
families Phi_1/Phi_2/Phi_3, all as exact normalized character sums:

    F(a_1..a_m; b_1..b_(n+1); lambda) =
        1/(1-q) * sum over nu of
            prod (a_i)_nu / prod (b_j)_nu-circ * nu(lambda).

Also here: the discrete Fourier transform on (k*)^n with its inversion,
four convolution ("iteration") transforms, shift of parameters into
classical notation, and the upper/lower inverse relation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .chars import AddChar, MulChar, enumerate_mulchars, standard_psi, trivial_char
from .cyclo import Cyclo
from .ffield import Field
from .sums import gauss, jacobi, pochhammer


@dataclass(frozen=True)
class HgfParams:
    upper: tuple[MulChar, ...]
    lower: tuple[MulChar, ...]
    psi: AddChar

    def __post_init__(self):
        fields = {c.field for c in self.upper} | {c.field for c in self.lower} | {self.psi.field}
        if len(fields) != 1:
            raise ValueError("all characters must live over one field")

    @property
    def field(self) -> Field:
        return self.psi.field


def params(upper, lower, psi=None, classical=False) -> HgfParams:
    """Build parameters; classical=True appends the trivial lower character."""
    chars = list(upper) + list(lower)
    f = chars[0].field if chars else (psi.field if psi else None)
    if f is None:
        raise ValueError("cannot infer the field")
    psi = psi or standard_psi(f)
    lower = tuple(lower) + ((trivial_char(f),) if classical else ())
    return HgfParams(tuple(upper), lower, psi)


def _term(p: HgfParams, nu: MulChar) -> Cyclo:
    t = Cyclo.integer(1)
    for a in p.upper:
        t = t * pochhammer(a, nu, p.psi)
    # division-free: multiply by the exact reciprocal computed via the
    # reflection identity rather than generic inversion
    for b in p.lower:
        t = t * _poch_circ_reciprocal(b, nu, p.psi)
    return t


def _poch_circ_reciprocal(b: MulChar, nu: MulChar, psi: AddChar) -> Cyclo:
    # 1/(b)_nu-circ = (b-bar)_(nu-bar) * nu(-1)  by the reflection identity
    f = b.field
    return pochhammer(b.inverse(), nu.inverse(), psi) * nu.eval(f.neg(1))


def hgf_eval(p: HgfParams, lam: int) -> Cyclo:
    """The one-variable hypergeometric sum at lambda (field element code)."""
    f = p.field
    total = Cyclo.zero()
    for nu in enumerate_mulchars(f):
        v = nu.eval(lam)
        if v.is_zero():
            continue
        total = total + _term(p, nu) * v
    return total / (1 - f.q)


def mfn(upper, lower, lam, psi=None) -> Cyclo:
    """Classical-notation wrapper: last lower character is trivial."""
    return hgf_eval(params(upper, lower, psi, classical=True), lam)


@dataclass(frozen=True)
class LauricellaParams:
    kind: str  # 'A' | 'B' | 'C' | 'D'
    alpha: tuple[MulChar, ...]  # one char for A/C/D; n chars for B
    beta: tuple[MulChar, ...]  # n chars for A/B/D; one char for C
    gamma: tuple[MulChar, ...]  # n for A/C; one for B/D
    delta: tuple[MulChar, ...]  # n chars
    psi: AddChar

    @property
    def n(self) -> int:
        return len(self.delta)

    @property
    def field(self) -> Field:
        return self.psi.field


def lauricella_eval(p: LauricellaParams, lams: tuple[int, ...]) -> Cyclo:
    n = p.n
    if len(lams) != n:
        raise ValueError("wrong number of arguments")
    f = p.field
    psi = p.psi
    total = Cyclo.zero()
    for nus in itertools.product(enumerate_mulchars(f), repeat=n):
        lamval = Cyclo.integer(1)
        zero = False
        for nu, lam in zip(nus, lams):
            v = nu.eval(lam)
            if v.is_zero():
                zero = True
                break
            lamval = lamval * v
        if zero:
            continue
        nu_prod = nus[0]
        for nu in nus[1:]:
            nu_prod = nu_prod * nu
        t = lamval
        if p.kind == "A":
            t = t * pochhammer(p.alpha[0], nu_prod, psi)
            for b, nu in zip(p.beta, nus):
                t = t * pochhammer(b, nu, psi)
            for g, nu in zip(p.gamma, nus):
                t = t * _poch_circ_reciprocal(g, nu, psi)
        elif p.kind == "B":
            for a, nu in zip(p.alpha, nus):
                t = t * pochhammer(a, nu, psi)
            for b, nu in zip(p.beta, nus):
                t = t * pochhammer(b, nu, psi)
            t = t * _poch_circ_reciprocal(p.gamma[0], nu_prod, psi)
        elif p.kind == "C":
            t = t * pochhammer(p.alpha[0], nu_prod, psi)
            t = t * pochhammer(p.beta[0], nu_prod, psi)
            for g, nu in zip(p.gamma, nus):
                t = t * _poch_circ_reciprocal(g, nu, psi)
        elif p.kind == "D":
            t = t * pochhammer(p.alpha[0], nu_prod, psi)
            for b, nu in zip(p.beta, nus):
                t = t * pochhammer(b, nu, psi)
            t = t * _poch_circ_reciprocal(p.gamma[0], nu_prod, psi)
        else:
            raise ValueError(f"unknown kind {p.kind!r}")
        for d, nu in zip(p.delta, nus):
            t = t * _poch_circ_reciprocal(d, nu, psi)
        total = total + t
    return total / (1 - f.q) ** n


def lauricella(kind, alpha, beta, gamma, delta, lams, psi=None) -> Cyclo:
    chars = list(alpha) + list(beta) + list(gamma) + list(delta)
    psi = psi or standard_psi(chars[0].field)
    p = LauricellaParams(kind, tuple(alpha), tuple(beta), tuple(gamma), tuple(delta), psi)
    return lauricella_eval(p, tuple(lams))


@dataclass(frozen=True)
class HumbertParams:
    kind: int  # 1 | 2 | 3
    upper: tuple[MulChar, ...]  # Phi1: (alpha, beta); Phi2: (beta, beta'); Phi3: (beta,)
    gamma: MulChar
    delta: tuple[MulChar, MulChar]
    psi: AddChar

    @property
    def field(self) -> Field:
        return self.psi.field


def humbert_eval(p: HumbertParams, lam1: int, lam2: int) -> Cyclo:
    f = p.field
    psi = p.psi
    total = Cyclo.zero()
    for mu in enumerate_mulchars(f):
        v1 = mu.eval(lam1)
        if v1.is_zero():
            continue
        for nu in enumerate_mulchars(f):
            v2 = nu.eval(lam2)
            if v2.is_zero():
                continue
            munu = mu * nu
            if p.kind == 1:
                t = pochhammer(p.upper[0], munu, psi) * pochhammer(p.upper[1], mu, psi)
                t = t * _poch_circ_reciprocal(p.gamma, munu, psi)
            elif p.kind == 2:
                t = pochhammer(p.upper[0], mu, psi) * pochhammer(p.upper[1], nu, psi)
                t = t * _poch_circ_reciprocal(p.gamma, munu, psi)
            elif p.kind == 3:
                t = pochhammer(p.upper[0], mu, psi)
                t = t * _poch_circ_reciprocal(p.gamma, munu, psi)
            else:
                raise ValueError(f"unknown kind {p.kind}")
            t = t * _poch_circ_reciprocal(p.delta[0], mu, psi)
            t = t * _poch_circ_reciprocal(p.delta[1], nu, psi)
            total = total + t * v1 * v2
    return total / (1 - f.q) ** 2


def humbert(kind, upper, gamma, delta, lam1, lam2, psi=None) -> Cyclo:
    psi = psi or standard_psi(gamma.field)
    p = HumbertParams(kind, tuple(upper), gamma, (delta[0], delta[1]), psi)
    return humbert_eval(p, lam1, lam2)


# -- discrete Fourier transform -------------------------------------------


def dft(f_map: dict, field: Field, n: int) -> dict:
    """f on (k*)^n  ->  f-hat on n-tuples of characters.

    f_hat(nus) = sum over unit tuples t of f(t) prod nu_i-bar(t_i).
    Keys of the output are tuples of character indices.
    """
    out = {}
    chars = enumerate_mulchars(field)
    for nus in itertools.product(chars, repeat=n):
        total = Cyclo.zero()
        for ts, v in f_map.items():
            w = v
            for nu, t in zip(nus, ts):
                w = w * nu.inverse().eval(t)
            total = total + w
        out[tuple(nu.j for nu in nus)] = total
    return out


def idft(fhat: dict, field: Field, n: int) -> dict:
    """Inverse transform: f(lams) = 1/(q-1)^n sum f_hat(nus) prod nu_i(lam_i)."""
    out = {}
    chars = enumerate_mulchars(field)
    for ts in itertools.product(field.units(), repeat=n):
        total = Cyclo.zero()
        for nus in itertools.product(chars, repeat=n):
            w = fhat[tuple(nu.j for nu in nus)]
            for nu, t in zip(nus, ts):
                w = w * nu.eval(t)
            total = total + w
        out[ts] = total / (field.N**n)
    return out


# -- the four convolution transforms ---------------------------------------


def iteration_lhs(kind, fhat, field, n, i, alpha, betas, lams, psi=None):
    """Left-hand side of the chosen convolution identity, from f-hat."""
    psi = psi or standard_psi(field)
    chars = enumerate_mulchars(field)
    total = Cyclo.zero()
    for nus in itertools.product(chars, repeat=n):
        w = fhat[tuple(nu.j for nu in nus)]
        if w.is_zero():
            continue
        lamval = Cyclo.integer(1)
        dead = False
        for nu, lam in zip(nus, lams):
            v = nu.eval(lam)
            if v.is_zero():
                dead = True
                break
            lamval = lamval * v
        if dead:
            continue
        prod_i = trivial_char(field)
        for nu in nus[:i]:
            prod_i = prod_i * nu
        if kind == "i":
            t = pochhammer(alpha, prod_i, psi)
            for b, nu in zip(betas, nus[:i]):
                t = t * _poch_circ_reciprocal(b, nu, psi)
        elif kind == "ii":
            t = Cyclo.integer(1)
            for b, nu in zip(betas, nus[:i]):
                t = t * pochhammer(b, nu, psi)
            t = t * _poch_circ_reciprocal(alpha, prod_i, psi)
        elif kind == "iii":
            beta = betas[0]
            t = pochhammer(alpha, prod_i, psi) * _poch_circ_reciprocal(beta, prod_i, psi)
        elif kind == "iv":
            t = _poch_circ_reciprocal(alpha, prod_i, psi)
        else:
            raise ValueError(f"unknown kind {kind!r}")
        total = total + w * t * lamval
    # multiply by the kind-specific constant
    if kind == "i":
        comp = alpha.inverse()
        for b in betas[:i]:
            comp = comp * b
        if comp.is_trivial():
            raise ValueError("degenerate: alpha-bar beta_1..beta_i is trivial")
        const = jacobi(comp, *[b.inverse() for b in betas[:i]])
        sign = (-1) ** i
    elif kind == "ii":
        comp = alpha
        for b in betas[:i]:
            comp = comp * b.inverse()
        if comp.inverse().is_trivial():
            raise ValueError("degenerate: alpha-bar beta_1..beta_i is trivial")
        const = jacobi(comp, *betas[:i])
        sign = (-1) ** i
    elif kind == "iii":
        beta = betas[0]
        if (alpha * beta.inverse()).is_trivial():
            raise ValueError("degenerate: alpha beta-bar is trivial")
        const = jacobi(alpha, alpha.inverse() * beta)
        sign = -1
    else:  # iv
        const = gauss(alpha.inverse(), psi)
        sign = -1
    return (const * total).scale(sign, field.N**n)


def iteration_rhs(kind, f_map, field, n, i, alpha, betas, lams, psi=None):
    """Right-hand side: the convolution sum over units applied to f itself."""
    psi = psi or standard_psi(field)
    total = Cyclo.zero()
    if kind in ("i", "ii"):
        comp = alpha.inverse() if kind == "i" else alpha
        for b in betas[:i]:
            comp = comp * (b if kind == "i" else b.inverse())
        for us in itertools.product(field.units(), repeat=i):
            if kind == "i":
                args = tuple(field.div(lam, u) for lam, u in zip(lams[:i], us))
            else:
                args = tuple(field.mul(lam, u) for lam, u in zip(lams[:i], us))
            args = args + tuple(lams[i:])
            v = f_map.get(args)
            if v is None or v.is_zero():
                continue
            s = field.sub(1, _ksum(field, us))
            w = comp.eval(s)
            if w.is_zero():
                continue
            for b, u in zip(betas, us):
                w = w * (b.inverse() if kind == "i" else b).eval(u)
            total = total + v * w
        return total
    if kind == "iii":
        beta = betas[0]
        for u in field.units():
            args = tuple(field.mul(lam, u) for lam in lams[:i]) + tuple(lams[i:])
            v = f_map.get(args)
            if v is None or v.is_zero():
                continue
            w = alpha.eval(u) * (alpha.inverse() * beta).eval(field.sub(1, u))
            total = total + v * w
        return total
    if kind == "iv":
        for u in field.units():
            nu_inv = field.neg(field.inv(u))
            args = tuple(field.mul(lam, nu_inv) for lam in lams[:i]) + tuple(lams[i:])
            v = f_map.get(args)
            if v is None or v.is_zero():
                continue
            total = total + v * alpha.inverse().eval(u) * psi.eval(u)
        return total
    raise ValueError(f"unknown kind {kind!r}")


def _ksum(field: Field, xs) -> int:
    s = 0
    for x in xs:
        s = field.add(s, x)
    return s


# -- parameter transformations ---------------------------------------------


def shift_parameters(p: HgfParams):
    """Rewrite into classical notation (last lower character trivial).

    Returns (coefficient, twist, classical_params) with
        F(p; lam) = coefficient * twist(lam) * F(classical_params; lam).
    """
    f = p.field
    last = p.lower[-1] if p.lower else trivial_char(f)
    if last.is_trivial():
        return Cyclo.integer(1), trivial_char(f), p
    s = last.inverse()
    coef = Cyclo.integer(1)
    for a in p.upper:
        coef = coef * pochhammer(a, s, p.psi)
    for b in p.lower:
        coef = coef * _poch_circ_reciprocal(b, s, p.psi)
    upper = tuple(a * s for a in p.upper)
    lower = tuple(b * s for b in p.lower[:-1]) + (trivial_char(f),)
    return coef, s, HgfParams(upper, lower, p.psi)


def inverse_relation(p: HgfParams) -> HgfParams:
    """Swap conjugated lower/upper parameters; valid for more upper than lower.

    F(upper; lower; lam) = F(lower-bar; upper-bar; (-1)^(m-n)/lam).
    """
    m, n = len(p.upper), len(p.lower)
    if m <= n:
        raise ValueError("requires more upper than lower parameters")
    return HgfParams(
        tuple(b.inverse() for b in p.lower),
        tuple(a.inverse() for a in p.upper),
        p.psi,
    )


def inverse_argument(field: Field, m: int, n: int, lam: int) -> int:
    if lam == 0:
        raise ValueError("argument must be nonzero")
    v = field.inv(lam)
    return v if (m - n) % 2 == 0 else field.neg(v)
