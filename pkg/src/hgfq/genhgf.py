"""
General hypergeometric character sums attached to a partition.

For a partition (N_1 <= ... <= N_l) of n with p >= N_l, the group J(m) of
invertible truncated unit power series (embedded via the shift matrix) has
characters (alpha, psi_(a_1), ..., psi_(a_(m-1))) composed with the
log-coefficient isomorphism iota(h) = (h_0, theta_1(h), ...).  The general
sum is

    Phi(chi; z) = sum over s in k^d of chi([s z]),

where z is a d x n matrix read in blocks of N_i columns and the block value
is zero whenever its leading entry s.z_0 vanishes.

The symmetry group W combines per-block power-series substitutions mu(c)
with permutations of equal-size blocks; its contragredient action on
characters realizes the transformation formulas.  The closed-form
reductions express Phi for six small (d, n, partition) shapes through the
one- and two-variable hypergeometric sums.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .chars import AddChar, MulChar, standard_psi, trivial_char
from .cyclo import Cyclo
from .ffield import Field
from .hgf import humbert, lauricella, mfn
from .sums import gauss, jacobi


# -- partitions ------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        if list(self.parts) != sorted(self.parts):
            raise ValueError("parts must be nondecreasing")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def l(self) -> int:
        return len(self.parts)

    def grouped(self) -> list[tuple[int, int]]:
        """[(part size, multiplicity), ...] with sizes increasing."""
        out = []
        for size in self.parts:
            if out and out[-1][0] == size:
                out[-1] = (size, out[-1][1] + 1)
            else:
                out.append((size, 1))
        return out

    def column_blocks(self) -> list[range]:
        out, start = [], 0
        for size in self.parts:
            out.append(range(start, start + size))
            start += size
        return out

    def check_char(self, field: Field):
        if field.p < self.parts[-1]:
            raise ValueError(
                f"characteristic {field.p} is smaller than the largest part {self.parts[-1]}"
            )


# -- truncated power series combinatorics ----------------------------------


def theta(field: Field, i: int, x) -> int:
    """i-th log-series coefficient of x_0 + x_1 T + ...  (requires i < p)."""
    return theta_list(field, i, x)[i - 1] if i >= 1 else 0


def theta_list(field: Field, upto: int, x) -> list[int]:
    """[theta_1, ..., theta_upto] by the Newton-style recurrence
    i*theta_i = i*X_i - sum over j < i of j*theta_j*X_(i-j), X_j = x_j/x_0."""
    if upto >= field.p:
        raise ValueError("index must be smaller than the characteristic")
    x = list(x)
    if not x or x[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    inv0 = field.inv(x[0])
    X = [0] + [field.mul(xi, inv0) for xi in x[1:]]
    while len(X) <= upto:
        X.append(0)
    th = []
    for i in range(1, upto + 1):
        acc = field.mul(field.from_int(i), X[i])
        for j in range(1, i):
            acc = field.sub(acc, field.mul(field.from_int(j), field.mul(th[j - 1], X[i - j])))
        th.append(field.mul(acc, field.inv(field.from_int(i))))
    return th


def theta_bar(field: Field, i: int, x) -> int:
    """x_0^i * theta_i(x); a polynomial in the entries of x."""
    return field.mul(field.pow(x[0], i), theta(field, i, x))


def theta_multinomial(field: Field, i: int, x) -> int:
    """Direct multinomial-sum evaluation of theta_i, as an independent check."""
    if i >= field.p:
        raise ValueError("index must be smaller than the characteristic")
    from math import factorial

    inv0 = field.inv(x[0])
    X = [0] + [field.mul(xi, inv0) for xi in list(x)[1:]]
    while len(X) <= i:
        X.append(0)
    total = 0
    for ks in _weighted_compositions(i):
        s = sum(ks)
        num = (-1) ** (s - 1) * factorial(s - 1)
        den = 1
        for kj in ks:
            den *= factorial(kj)
        term = field.div(field.from_int(num), field.from_int(den))
        for j, kj in enumerate(ks, start=1):
            term = field.mul(term, field.pow(X[j], kj))
        total = field.add(total, term)
    return total


def _weighted_compositions(i: int):
    """All (k_1..k_i) >= 0 with k_1 + 2 k_2 + ... + i k_i = i."""
    def rec(j, remaining, acc):
        if j > i:
            if remaining == 0:
                yield tuple(acc)
            return
        for kj in range(remaining // j + 1):
            yield from rec(j + 1, remaining - j * kj, acc + [kj])

    yield from rec(1, i, [])


def p_poly_list(field: Field, upto: int, y) -> list[int]:
    """[p_1, ..., p_upto]: exp-series coefficients via i*p_i = sum k*y_k*p_(i-k)."""
    if upto >= field.p:
        raise ValueError("index must be smaller than the characteristic")
    y = [0] + list(y)
    while len(y) <= upto:
        y.append(0)
    ps = [1]  # p_0
    for i in range(1, upto + 1):
        acc = 0
        for k in range(1, i + 1):
            acc = field.add(acc, field.mul(field.from_int(k), field.mul(y[k], ps[i - k])))
        ps.append(field.mul(acc, field.inv(field.from_int(i))))
    return ps[1:]


def p_poly(field: Field, i: int, y) -> int:
    if i == 0:
        return 1
    return p_poly_list(field, i, y)[i - 1]


def iota(field: Field, h) -> tuple:
    """(h_0, theta_1(h), ..., theta_(m-1)(h)) for h = [h_0..h_(m-1)]."""
    h = list(h)
    return (h[0], *theta_list(field, len(h) - 1, h))


def iota_inv(field: Field, a0: int, a) -> tuple:
    """[a_0, a_0 p_1(a), ..., a_0 p_(m-1)(a)]."""
    if a0 == 0:
        raise ValueError("leading coefficient must be nonzero")
    a = list(a)
    ps = p_poly_list(field, len(a), a)
    return (a0, *(field.mul(a0, pi) for pi in ps))


def series_mul(field: Field, x, y) -> tuple:
    """Truncated product of two coefficient sequences (same length kept)."""
    m = len(x)
    out = [0] * m
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                if yj and i + j < m:
                    out[i + j] = field.add(out[i + j], field.mul(xi, yj))
    return tuple(out)


# -- characters of the block group -----------------------------------------


@dataclass(frozen=True)
class JmChar:
    """(alpha, a_1, ..., a_(m-1)) acting through the log coordinates."""

    alpha: MulChar
    a: tuple[int, ...]
    psi: AddChar

    @property
    def m(self) -> int:
        return len(self.a) + 1

    @property
    def field(self) -> Field:
        return self.alpha.field

    def eval(self, h) -> Cyclo:
        f = self.field
        h = list(h)
        v = self.alpha.eval(h[0])
        if v.is_zero() or not self.a:
            return v
        ths = theta_list(f, len(self.a), h)
        for aj, th in zip(self.a, ths):
            v = v * self.psi.eval(f.mul(aj, th))
        return v

    def act_mu(self, c) -> "JmChar":
        """The contragredient substitution action: a -> mu(c)' a."""
        f = self.field
        mprime = mu_matrix_prime(f, tuple(c), self.m)
        new_a = tuple(
            _dot(f, row, self.a) for row in mprime
        )
        return JmChar(self.alpha, new_a, self.psi)


def _dot(field: Field, row, vec) -> int:
    acc = 0
    for r, v in zip(row, vec):
        acc = field.add(acc, field.mul(r, v))
    return acc


@dataclass(frozen=True)
class HDeltaChar:
    delta: Partition
    blocks: tuple[JmChar, ...]

    def __post_init__(self):
        if len(self.blocks) != self.delta.l:
            raise ValueError("block count mismatch")
        for b, size in zip(self.blocks, self.delta.parts):
            if b.m != size:
                raise ValueError("block size mismatch")

    @property
    def field(self) -> Field:
        return self.blocks[0].field

    def eval_h(self, h_blocks) -> Cyclo:
        v = Cyclo.integer(1)
        for b, h in zip(self.blocks, h_blocks):
            v = v * b.eval(h)
            if v.is_zero():
                return v
        return v


def hdelta_chars(field: Field, delta: Partition, psi: AddChar | None = None):
    """Enumerate the full character group for the partition."""
    delta.check_char(field)
    psi = psi or standard_psi(field)
    per_block = []
    for size in delta.parts:
        opts = [
            JmChar(MulChar(field, j), a, psi)
            for j in range(max(field.N, 1))
            for a in itertools.product(field.elements(), repeat=size - 1)
        ]
        per_block.append(opts)
    for combo in itertools.product(*per_block):
        yield HDeltaChar(delta, tuple(combo))


# -- the general sum -------------------------------------------------------


def chi_of_sz(chi: HDeltaChar, s, z) -> Cyclo:
    """chi([s z]), blockwise; zero when a block's leading entry vanishes."""
    f = chi.field
    v = Cyclo.integer(1)
    for b, cols in zip(chi.blocks, chi.delta.column_blocks()):
        coeffs = [_scol(f, s, z, c) for c in cols]
        if coeffs[0] == 0:
            return Cyclo.zero()
        v = v * b.eval(coeffs)
    return v


def _scol(field: Field, s, z, col: int) -> int:
    acc = 0
    for row, sv in enumerate(s):
        acc = field.add(acc, field.mul(sv, z[row][col]))
    return acc


def phi_delta(chi: HDeltaChar, z) -> Cyclo:
    """Phi(chi; z) = sum over s in k^d of chi([s z])."""
    chi.delta.check_char(chi.field)
    f = chi.field
    d = len(z)
    if any(len(row) != chi.delta.n for row in z):
        raise ValueError("z must have n columns")
    total = Cyclo.zero()
    for s in itertools.product(f.elements(), repeat=d):
        v = chi_of_sz(chi, s, z)
        if not v.is_zero():
            total = total + v
    return total


# -- the symmetry group ----------------------------------------------------


def mu_matrix(field: Field, c: tuple[int, ...], m: int):
    """m x m matrix of power-series power coefficients; c = (c_1..c_(m-1))."""
    if m > 1 and (len(c) != m - 1 or c[0] == 0):
        raise ValueError("need c_1 != 0 and length m-1")
    # row i = coefficients of (c_1 T + ... + c_(m-1) T^(m-1))^i, degrees 0..m-1
    rows = []
    poly = (1,) + (0,) * (m - 1)  # T^0
    base = (0,) + tuple(c)
    for i in range(m):
        rows.append(tuple(poly))
        poly = series_mul(field, poly, base)
    return [list(r) for r in rows]


def mu_matrix_prime(field: Field, c: tuple[int, ...], m: int):
    full = mu_matrix(field, c, m)
    return [row[1:] for row in full[1:]]


@dataclass(frozen=True)
class WDeltaElem:
    """Per equal-size group: a permutation of the blocks and one substitution
    vector c per block (written as w = diag(mu(c_1)..mu(c_p)) * block-perm)."""

    delta: Partition
    sigmas: tuple[tuple[int, ...], ...]  # one permutation (0-based tuple) per group
    cs: tuple[tuple[tuple[int, ...], ...], ...]  # per group, per block, a c-vector

    def __post_init__(self):
        groups = self.delta.grouped()
        if len(self.sigmas) != len(groups) or len(self.cs) != len(groups):
            raise ValueError("group count mismatch")
        for (size, mult), sigma, cvecs in zip(groups, self.sigmas, self.cs):
            if sorted(sigma) != list(range(mult)):
                raise ValueError("invalid permutation")
            if len(cvecs) != mult or any(len(cv) != size - 1 for cv in cvecs):
                raise ValueError("substitution vector shape mismatch")
            if size > 1 and any(cv[0] == 0 for cv in cvecs):
                raise ValueError("leading substitution coefficient must be nonzero")


def identity_w(delta: Partition) -> WDeltaElem:
    groups = delta.grouped()
    sigmas = tuple(tuple(range(mult)) for _, mult in groups)
    cs = tuple(
        tuple(((1,) + (0,) * (size - 2) if size > 1 else ()) for _ in range(mult))
        for size, mult in groups
    )
    return WDeltaElem(delta, sigmas, cs)


def w_to_matrix(field: Field, w: WDeltaElem):
    """The n x n matrix: block-diagonal over groups of diag(mu(c_j)) * perm."""
    n = w.delta.n
    mat = [[0] * n for _ in range(n)]
    offset = 0
    for (size, mult), sigma, cvecs in zip(w.delta.grouped(), w.sigmas, w.cs):
        span = size * mult
        # block permutation: block entry (r, j) = I when r == sigma(j)
        for j in range(mult):
            r = sigma[j]
            mu = mu_matrix(field, tuple(cvecs[r]), size)
            # contribution: diag(mu(c_1)..mu(c_mult)) * P~ has block (r, j) = mu(c_r)
            for a in range(size):
                for b in range(size):
                    mat[offset + r * size + a][offset + j * size + b] = mu[a][b]
        offset += span
    return mat


def h_to_matrix(field: Field, delta: Partition, h_blocks):
    """Block-diagonal matrix of upper-triangular Toeplitz blocks [h_0, h_1, ...]."""
    n = delta.n
    mat = [[0] * n for _ in range(n)]
    offset = 0
    for size, h in zip(delta.parts, h_blocks):
        for i in range(size):
            for j in range(i, size):
                mat[offset + i][offset + j] = h[j - i]
        offset += size
    return mat


def w_action_on_char(chi: HDeltaChar, w: WDeltaElem) -> HDeltaChar:
    """chi composed with transpose(w): permute equal-size blocks and apply the
    substitution action on each."""
    groups = chi.delta.grouped()
    new_blocks = []
    idx = 0
    group_blocks = []
    for size, mult in groups:
        group_blocks.append(chi.blocks[idx : idx + mult])
        idx += mult
    for (size, mult), sigma, cvecs, blocks in zip(groups, w.sigmas, w.cs, group_blocks):
        inv = [0] * mult
        for j, sj in enumerate(sigma):
            inv[sj] = j
        for j in range(mult):
            src = blocks[inv[j]]
            new_blocks.append(src.act_mu(cvecs[j]) if size > 1 else src)
    return HDeltaChar(chi.delta, tuple(new_blocks))


def mat_mul(field: Field, A, B):
    rows, inner, cols = len(A), len(B), len(B[0])
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for t in range(inner):
            a = A[i][t]
            if a:
                for j in range(cols):
                    b = B[t][j]
                    if b:
                        out[i][j] = field.add(out[i][j], field.mul(a, b))
    return out


# -- closed-form reductions ------------------------------------------------


REDUCTION_SHAPES = {
    (2, 4, (1, 1, 1, 1)),
    (2, 4, (1, 1, 2)),
    (2, 4, (2, 2)),
    (2, 5, (1, 1, 1, 1, 1)),
    (2, 5, (1, 1, 1, 2)),
    (2, 5, (1, 2, 2)),
}


def normalized_z(field: Field, delta: tuple[int, ...], lams: tuple[int, ...]):
    """The matrix shape used by the closed-form reductions, for the given
    argument tuple (one or two field elements)."""
    f = field
    if delta == (1, 1, 1, 1):
        (lam,) = lams
        return [[1, 1, 1, 0], [f.neg(1), f.neg(lam), 0, 1]]
    if delta == (1, 1, 2):
        (lam,) = lams
        return [[f.neg(1), 1, 0, f.neg(lam)], [1, 0, 1, 0]]
    if delta == (2, 2):
        (lam,) = lams
        return [[1, 0, 0, lam], [0, f.neg(1), 1, 0]]
    if delta == (1, 1, 1, 1, 1):
        x, y = lams
        return [[1, 1, 1, 1, 0], [f.neg(1), f.neg(x), f.neg(y), 0, 1]]
    if delta == (1, 1, 1, 2):
        x, y = lams
        return [[f.neg(1), f.neg(x), 1, 0, f.neg(y)], [1, 1, 0, 1, 0]]
    if delta == (1, 2, 2):
        x, y = lams
        return [[1, 1, 0, 0, 1], [x, 0, y, 1, 0]]
    raise ValueError(f"unsupported shape {delta}")


def reduce_to_classical(chi: HDeltaChar, z) -> Cyclo:
    """The closed-form right-hand side for the six supported shapes, with z in
    the normalized shape produced by normalized_z."""
    delta = chi.delta.parts
    f = chi.field
    psi = chi.blocks[0].psi
    eps = trivial_char(f)
    q1 = f.N  # q - 1

    if delta == (1, 1, 1, 1):
        a1, a2, a3, a4 = (b.alpha for b in chi.blocks)
        lam = f.neg(z[1][1])
        if a1.is_trivial() or a2.is_trivial():
            raise ValueError("reduction requires the first two characters nontrivial")
        if not (a1 * a2 * a3 * a4).is_trivial():
            return Cyclo.zero()
        val = jacobi(a1, a4) * mfn([a2.inverse(), a4], [a1 * a4], lam, psi)
        return val.scale(-q1)

    if delta == (1, 1, 2):
        a1, a2, a3 = (b.alpha for b in chi.blocks)
        a = chi.blocks[2].a[0]
        lam = f.neg(z[0][3])
        if a1.is_trivial():
            raise ValueError("reduction requires the first character nontrivial")
        if a == 0:
            raise ValueError("reduction requires a nontrivial additive part")
        if not (a1 * a2 * a3).is_trivial():
            return Cyclo.zero()
        val = jacobi(a1, a2) * mfn([a2], [a1 * a2], f.mul(a, lam), psi)
        return val.scale(-q1)

    if delta == (2, 2):
        a1, a2 = (b.alpha for b in chi.blocks)
        t1, t2 = chi.blocks[0].a[0], chi.blocks[1].a[0]
        lam = z[0][3]
        if t1 == 0 or t2 == 0:
            raise ValueError("reduction requires nontrivial additive parts in both blocks")
        if not (a1 * a2).is_trivial():
            return Cyclo.zero()
        val = a1.eval(f.neg(t1)) * gauss(a1.inverse(), psi)
        val = val * mfn([], [a1], f.neg(f.mul(f.mul(t1, t2), lam)), psi)
        return val.scale(-q1)

    if delta == (1, 1, 1, 1, 1):
        a1, a2, a3, a4, a5 = (b.alpha for b in chi.blocks)
        x, y = f.neg(z[1][1]), f.neg(z[1][2])
        if a1.is_trivial() or a2.is_trivial() or a3.is_trivial():
            raise ValueError("reduction requires the first three characters nontrivial")
        if not (a1 * a2 * a3 * a4 * a5).is_trivial():
            return Cyclo.zero()
        val = jacobi(a1, a5) * lauricella(
            "D",
            [a5],
            [a2.inverse(), a3.inverse()],
            [a1 * a5],
            [eps, eps],
            (x, y),
            psi,
        )
        return val.scale(-q1)

    if delta == (1, 1, 1, 2):
        a1, a2, a3, a4 = (b.alpha for b in chi.blocks)
        a = chi.blocks[3].a[0]
        x, y = f.neg(z[0][1]), f.neg(z[0][4])
        if a1.is_trivial() or a2.is_trivial():
            raise ValueError("reduction requires the first two characters nontrivial")
        if a == 0:
            raise ValueError("reduction requires a nontrivial additive part")
        if not (a1 * a2 * a3 * a4).is_trivial():
            return Cyclo.zero()
        val = jacobi(a1, a3) * humbert(
            1, [a3, a2.inverse()], a1 * a3, [eps, eps], x, f.mul(a, y), psi
        )
        return val.scale(-q1)

    if delta == (1, 2, 2):
        a1, a2, a3 = (b.alpha for b in chi.blocks)
        t1, t2 = chi.blocks[1].a[0], chi.blocks[2].a[0]
        x, y = z[1][0], z[1][2]
        if a1.is_trivial():
            raise ValueError("reduction requires the first character nontrivial")
        if t1 == 0 or t2 == 0:
            raise ValueError("reduction requires nontrivial additive parts in both blocks")
        if not (a1 * a2 * a3).is_trivial():
            return Cyclo.zero()
        val = a2.eval(f.neg(1)) * a3.inverse().eval(x) * jacobi(a1, a2)
        val = val * humbert(
            3,
            [a3],
            eps,
            [a2.inverse(), eps],
            f.div(f.mul(t1, y), x),
            f.mul(f.mul(t1, t2), y),
            psi,
        )
        return val.scale(-q1)

    raise ValueError(f"unsupported shape {delta}")


def phi2_from_zpp(chi: HDeltaChar, z) -> Cyclo:
    """The alternative closed form for the (1,1,1,2) shape with z in the
    second normalized form [[1,1,1,0,1],[0,x',y',1,0]]."""
    f = chi.field
    psi = chi.blocks[0].psi
    eps = trivial_char(f)
    a1, a2, a3, a4 = (b.alpha for b in chi.blocks)
    a = chi.blocks[3].a[0]
    xp, yp = z[1][1], z[1][2]
    if a2.is_trivial() or a3.is_trivial():
        raise ValueError("reduction requires the middle two characters nontrivial")
    if a == 0:
        raise ValueError("reduction requires a nontrivial additive part")
    if not (a1 * a2 * a3 * a4).is_trivial():
        return Cyclo.zero()
    val = a2.eval(xp) * a3.eval(yp) * a1.inverse().eval(a) * gauss(a1, psi)
    val = val * humbert(
        2,
        [eps, eps],
        a1.inverse(),
        [a2, a3],
        f.mul(a, xp),
        f.mul(a, yp),
        psi,
    )
    return val.scale(-f.N)
