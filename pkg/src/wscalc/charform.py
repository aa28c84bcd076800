"""Odd orthogonal Weyl characters and the local L-function series identity.

T_N(lam; x) is the SO_{2N+1}(C) character value at
diag(x_1..x_N, 1, x_N^-1..x_1^-1), extended to arbitrary integer lam through
the alternant ratio

    T_N(lam; x) = A(x^(lam+rho)) / A(x^rho),   rho = (N-1/2, ..., 1/2),

computed with doubled exponents so the half-integers stay on the integer
lattice; the division is exact.  The series machinery expands both sides of
the torus-integral identity

    sum_l W0(p^(l,0,..,0)) |p|^(l(s-m-1))
        = L(pi, s) / (L_psi(sigma~, s+1/2) zeta(2s))

in the formal variable T = |p|^s and compares coefficients exactly.
"""

from fractions import Fraction
from itertools import combinations

from .ratfun import Poly, RatFun
from .weyl import enumerate_group
from .wsformula import ws_torus

__all__ = [
    "so_char",
    "satake_multiset",
    "elementary_sym",
    "SeriesInT",
    "lhs_series",
    "rhs_series",
    "shintani_verify",
]


def _alternant_doubled(vars_, pattern):
    """sum_w sgn(w) u^(w*pattern) over W(C_N) on doubled x-exponents.

    ``pattern`` is a tuple of N odd integers (doubled half-integers); the
    result lives on the x-slots of the exponent lattice, read as exponents
    of u_i = x_i^(1/2).
    """
    N = len(pattern)
    acc = {}
    for w in enumerate_group(N):
        img, flp = w.image, w.flips
        e = [0] * vars_.size
        for i in range(N):
            j = img[i] - 1
            e[1 + i] = flp[j] * pattern[j]
        key = tuple(e)
        s = acc.get(key, 0) + w.sgn()
        if s:
            acc[key] = s
        else:
            del acc[key]
    return Poly(vars_, {e: Fraction(c) for e, c in acc.items()}, prune=False)


def so_char(vars_, lam):
    """The SO_{2N+1} character T_N(lam; x_1..x_N), N = len(lam), lam in Z^N.

    For dominant lam this is the trace of the irreducible representation
    with highest weight lam; for arbitrary integer lam the alternant ratio
    is still well defined and vanishes whenever lam+rho is non-regular.
    """
    lam = tuple(int(a) for a in lam)
    N = len(lam)
    if N > vars_.n:
        raise ValueError("not enough x variables for rank %d" % N)
    rho2 = tuple(2 * (N - i) - 1 for i in range(N))
    num_pat = tuple(2 * lam[i] + rho2[i] for i in range(N))
    num = _alternant_doubled(vars_, num_pat)
    if num.is_zero():
        return RatFun.zero(vars_)
    den = _alternant_doubled(vars_, rho2)
    quot = num.divide_exact(den)
    if quot is None:
        raise AssertionError("character alternant ratio failed to divide")
    # map back from u_i = x_i^(1/2): every exponent must be even
    halved = {}
    for e, c in quot.terms.items():
        if any(a % 2 for a in e[1 : 1 + N]):
            raise AssertionError("character has a non-integral exponent")
        halved[(e[0],) + tuple(a // 2 for a in e[1:])] = c
    return RatFun.from_poly(Poly(vars_, halved, prune=False))


def satake_multiset(ctx):
    """The multiset q^(-gamma) for gamma in {xi_j + 1/2, -xi_j + 1/2}:
    the 2m monomials v*y_j and v*y_j^-1, as exponent tuples."""
    V = ctx.vars
    out = []
    for j in range(1, ctx.m + 1):
        for sign in (1, -1):
            e = [0] * V.size
            e[0] = 1
            e[ctx.n + j] = sign
            out.append(tuple(e))
    return out


def elementary_sym(vars_, monomials, r):
    """The r-th elementary symmetric polynomial of a multiset of monomials."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return RatFun.one(vars_)
    if r > len(monomials):
        return RatFun.zero(vars_)
    acc = {}
    for subset in combinations(monomials, r):
        e = tuple(sum(col) for col in zip(*subset))
        acc[e] = acc.get(e, Fraction(0)) + 1
    return RatFun.from_poly(Poly(vars_, acc))


class SeriesInT:
    """A truncated power series in T = |p|^s with RatFun coefficients."""

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)

    @property
    def truncation(self):
        return len(self.coeffs) - 1

    def __getitem__(self, l):
        return self.coeffs[l]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def mul_truncated(self, other, K):
        vars_ = self.coeffs[0].vars
        out = []
        for k in range(K + 1):
            acc = RatFun.zero(vars_)
            for i in range(k + 1):
                j = k - i
                if i < len(self.coeffs) and j < len(other.coeffs):
                    acc = acc + self.coeffs[i] * other.coeffs[j]
            out.append(acc.reduced())
        return SeriesInT(out)


def lhs_series(ctx, K):
    """Coefficients of sum_l W0(p^(l,0,...,0)) |p|^(l(s-m-1)) up to T^K.

    Requires n = m+1.  The coefficient of T^l is ws_torus at (l,0,...,0)
    times v^(-2l(m+1)): the |t|^(-m-1) normalization exactly undoes the
    modulus character delta^(1/2)(diag(t, I, t^-1)) = |t|^(m+1) carried by
    the Whittaker-Shintani value, and both factors are kept explicit.
    """
    if ctx.n != ctx.m + 1:
        raise ValueError("the series identity needs n = m+1")
    if K < 0:
        raise ValueError("truncation must be nonnegative")
    V = ctx.vars
    out = []
    for l in range(K + 1):
        f = (l,) + (0,) * (ctx.n - 1)
        comp = RatFun.monomial(V, V.v_exp(-2 * l * (ctx.m + 1)))
        out.append((ws_torus(ctx, f) * comp).reduced())
    return SeriesInT(out)


def rhs_series(ctx, K):
    """Coefficients of (sum_a T_{m+1}((a,0,..); z_pi) T^a) * prod(1 - q^-g T)
    up to T^K, with the product over the 2m Satake monomials q^-g."""
    if ctx.n != ctx.m + 1:
        raise ValueError("the series identity needs n = m+1")
    if K < 0:
        raise ValueError("truncation must be nonnegative")
    V = ctx.vars
    gammas = satake_multiset(ctx)
    out = []
    for k in range(K + 1):
        acc = RatFun.zero(V)
        for r in range(0, min(k, 2 * ctx.m) + 1):
            sign = -1 if r % 2 else 1
            lam = (k - r,) + (0,) * ctx.m
            term = elementary_sym(V, gammas, r) * so_char(V, lam) * sign
            acc = acc + term
        out.append(acc.reduced())
    return SeriesInT(out)


class ShintaniReport:
    """Per-coefficient outcome of the series identity check."""

    def __init__(self, ctx, K, results):
        self.ctx = ctx
        self.K = K
        self.results = results  # list of (l, equal)

    @property
    def ok(self):
        return all(eq for _, eq in self.results)

    def as_dict(self):
        return {
            "n": self.ctx.n,
            "m": self.ctx.m,
            "K": self.K,
            "coefficients": [{"l": l, "pass": eq} for l, eq in self.results],
            "pass": self.ok,
        }


def shintani_verify(ctx, K):
    """Compare lhs_series and rhs_series coefficientwise, exactly.

    A failing coefficient is a reported result, not an exception.
    """
    lhs = lhs_series(ctx, K)
    rhs = rhs_series(ctx, K)
    results = [(l, lhs[l] == rhs[l]) for l in range(K + 1)]
    return ShintaniReport(ctx, K, results)
