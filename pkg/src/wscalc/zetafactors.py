"""Closed-form local factor products: b, d, d', Gamma, Gindikin-Karpelevich
c_w and c~_w, the rank-one gamma-factors, and modulus characters on torus
cocharacters.

Variable convention throughout: x_i = q^(-chi_i), y_j = q^(-xi_j),
v = q^(-1/2), so each zeta argument (an affine form in chi, xi with
half-integer constant) becomes a Laurent monomial and every factor is an
exact rational function.
"""

from dataclasses import dataclass
from functools import lru_cache

from .ratfun import LinearForm, Poly, RatFun, Vars, zeta_of, zeta_inv_of
from .weyl import SignedPerm

__all__ = [
    "Context",
    "SimpleRoot",
    "simple_roots_G",
    "simple_roots_M",
    "d_factor",
    "dprime_factor",
    "b_factor",
    "gamma_big",
    "c_w",
    "c_tilde_w",
    "gamma_alpha",
    "gamma_beta",
    "delta_half_G",
    "delta_half_MJ",
]


@dataclass(frozen=True)
class Context:
    """Ranks of the two symplectic groups, G = Sp_2n and M = Sp_2m; n >= m+1."""

    n: int
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        if self.n < self.m + 1:
            raise ValueError("rank constraint violated: need n >= m+1")

    @property
    def vars(self):
        return Vars(self.n, self.m)

    def chi(self, i):
        return LinearForm.chi_term(self.vars, i)

    def xi(self, j):
        return LinearForm.xi_term(self.vars, j)

    def half(self, k=1):
        """The constant linear form k/2."""
        return LinearForm(self.vars, halves=k)


@dataclass(frozen=True)
class SimpleRoot:
    """A simple root of the type-C system of G or M.

    kind "short" with index i stands for e_i - e_{i+1} (1 <= i <= rank-1);
    kind "long" stands for 2e_rank.
    """

    group: str  # "G" or "M"
    kind: str  # "short" or "long"
    index: int

    def __post_init__(self):
        if self.group not in ("G", "M"):
            raise ValueError("group must be G or M")
        if self.kind not in ("short", "long"):
            raise ValueError("kind must be short or long")

    def rank_of(self, ctx):
        return ctx.n if self.group == "G" else ctx.m

    def reflection(self, ctx):
        """The simple reflection as a SignedPerm of W(C_rank)."""
        k = self.rank_of(ctx)
        if self.kind == "short":
            image = list(range(1, k + 1))
            image[self.index - 1], image[self.index] = (
                image[self.index],
                image[self.index - 1],
            )
            return SignedPerm(image, (1,) * k)
        flips = [1] * k
        flips[k - 1] = -1
        return SignedPerm(tuple(range(1, k + 1)), tuple(flips))


def simple_roots_G(ctx):
    roots = [SimpleRoot("G", "short", i) for i in range(1, ctx.n)]
    roots.append(SimpleRoot("G", "long", ctx.n))
    return roots


def simple_roots_M(ctx):
    roots = [SimpleRoot("M", "short", i) for i in range(1, ctx.m)]
    if ctx.m >= 1:
        roots.append(SimpleRoot("M", "long", ctx.m))
    return roots


def _prod(vars_, factors):
    out = RatFun.one(vars_)
    for f in factors:
        out = out * f
    return out


@lru_cache(maxsize=None)
def d_factor(ctx):
    """d(chi) = prod_{a<b} zeta(chi_a - chi_b) zeta(chi_a + chi_b) prod_i zeta(chi_i)."""
    V = ctx.vars
    factors = []
    for a in range(1, ctx.n + 1):
        for b in range(a + 1, ctx.n + 1):
            factors.append(zeta_of(ctx.chi(a) - ctx.chi(b)))
            factors.append(zeta_of(ctx.chi(a) + ctx.chi(b)))
    for i in range(1, ctx.n + 1):
        factors.append(zeta_of(ctx.chi(i)))
    return _prod(V, factors)


@lru_cache(maxsize=None)
def dprime_factor(ctx):
    """d'(xi) = prod_{a<b} zeta(xi_a - xi_b) zeta(xi_a + xi_b) prod_j zeta(2 xi_j)."""
    V = ctx.vars
    factors = []
    for a in range(1, ctx.m + 1):
        for b in range(a + 1, ctx.m + 1):
            factors.append(zeta_of(ctx.xi(a) - ctx.xi(b)))
            factors.append(zeta_of(ctx.xi(a) + ctx.xi(b)))
    for j in range(1, ctx.m + 1):
        factors.append(zeta_of(ctx.xi(j) * 2))
    return _prod(V, factors)


def b_linear_forms(ctx):
    """The zeta arguments of b(chi, xi), one per inverse-zeta factor.

    The diagonal i = j + n - m belongs to neither one-sided product.
    """
    forms = []
    half = ctx.half()
    shift = ctx.n - ctx.m
    for j in range(1, ctx.m + 1):
        for i in range(1, ctx.n + 1):
            if i < j + shift:
                forms.append(ctx.chi(i) - ctx.xi(j) + half)
            elif i > j + shift:
                forms.append(-1 * ctx.chi(i) + ctx.xi(j) + half)
    for j in range(1, ctx.m + 1):
        forms.append(ctx.xi(j) + half)
    for i in range(1, ctx.n + 1):
        for j in range(1, ctx.m + 1):
            forms.append(ctx.chi(i) + ctx.xi(j) + half)
    return forms


@lru_cache(maxsize=None)
def b_factor(ctx):
    """The polynomial factor b(chi, xi): a product of inverse zeta factors."""
    return _prod(ctx.vars, [zeta_inv_of(s) for s in b_linear_forms(ctx)])


@lru_cache(maxsize=None)
def b_factor_poly(ctx):
    """b(chi, xi) expanded as a Poly (it has trivial denominator)."""
    return b_factor(ctx).numerator_poly()


@lru_cache(maxsize=None)
def gamma_big(ctx):
    """The Gamma(chi, xi) product whose quotient normalizes the pairing.

    Three blocks: inverse zetas in chi (shifted by 1), inverse zetas in xi
    (shifted by 1) together with the factors 1 + v*y_j, a one-sided block of
    zeta ratios mixing chi and xi, and the full grid of zeta pairs.
    """
    V = ctx.vars
    one = LinearForm.const(V, 1)
    half = ctx.half()
    out = RatFun.one(V)
    for a in range(1, ctx.n + 1):
        for b in range(a + 1, ctx.n + 1):
            out = out * zeta_inv_of(ctx.chi(a) - ctx.chi(b) + one)
            out = out * zeta_inv_of(ctx.chi(a) + ctx.chi(b) + one)
    for i in range(1, ctx.n + 1):
        out = out * zeta_inv_of(ctx.chi(i) + one)
    for a in range(1, ctx.m + 1):
        for b in range(a + 1, ctx.m + 1):
            out = out * zeta_inv_of(ctx.xi(a) - ctx.xi(b) + one)
            out = out * zeta_inv_of(ctx.xi(a) + ctx.xi(b) + one)
    for j in range(1, ctx.m + 1):
        # 1 + xi_j(p)|p|^(1/2) = 1 + v*y_j
        p = Poly.constant(V, 1) + Poly.monomial(V, (ctx.xi(j) + half).monomial())
        out = out * RatFun.from_poly(p)
    for j in range(1, ctx.m + 1):
        for i in range(1, (ctx.n - ctx.m) + j):
            out = out * zeta_of(ctx.chi(i) - ctx.xi(j) + half)
            out = out / zeta_of(-1 * ctx.chi(i) + ctx.xi(j) + half)
    for i in range(1, ctx.n + 1):
        for j in range(1, ctx.m + 1):
            out = out * zeta_of(ctx.chi(i) + ctx.xi(j) + half)
            out = out * zeta_of(-1 * ctx.chi(i) + ctx.xi(j) + half)
    return out


# -- Gindikin-Karpelevich factors ------------------------------------------


def _positive_roots(k):
    """Positive roots of C_k as integer vectors: e_a-e_b, e_a+e_b (a<b), 2e_i."""
    roots = []
    for a in range(k):
        for b in range(a + 1, k):
            va = [0] * k
            va[a], va[b] = 1, -1
            roots.append(tuple(va))
            vs = [0] * k
            vs[a], vs[b] = 1, 1
            roots.append(tuple(vs))
    for i in range(k):
        vt = [0] * k
        vt[i] = 2
        roots.append(tuple(vt))
    return roots


def _is_negative_root(vec):
    for a in vec:
        if a:
            return a < 0
    return False


def _weight_action(w, vec):
    """The action of w on weight/root vectors: w.e_i = flips[image(i)] e_{image(i)}."""
    out = [0] * len(vec)
    for i, c in enumerate(vec):
        if c:
            j = w.image[i] - 1
            out[j] += w.flips[j] * c
    return tuple(out)


def inversion_set(w):
    """Positive roots sent to negative roots by w."""
    return [r for r in _positive_roots(w.k) if _is_negative_root(_weight_action(w, r))]


def _coroot_pairing_chi(ctx, root):
    """<chi, alpha-check> for a root of G: e_a-e_b -> chi_a-chi_b,
    e_a+e_b -> chi_a+chi_b, 2e_i -> chi_i."""
    terms = [(i + 1, c) for i, c in enumerate(root) if c]
    if len(terms) == 1:
        (i, c), = terms
        assert abs(c) == 2
        return ctx.chi(i) * (c // 2)
    (a, ca), (b, cb) = terms
    return ctx.chi(a) * ca + ctx.chi(b) * cb


def _root_pairing_xi(ctx, root):
    """<xi, alpha> for a root of M: the plain pairing, so 2e_j -> 2 xi_j."""
    return sum(
        (ctx.xi(i + 1) * c for i, c in enumerate(root) if c),
        LinearForm(ctx.vars),
    )


def c_w(ctx, w):
    """c_w(chi) = prod over the inversion set of zeta(<chi,a^>)/zeta(<chi,a^>+1)."""
    if w.k != ctx.n:
        raise ValueError("w must lie in W(C_n)")
    out = RatFun.one(ctx.vars)
    one = LinearForm.const(ctx.vars, 1)
    for root in inversion_set(w):
        s = _coroot_pairing_chi(ctx, root)
        out = out * zeta_of(s) / zeta_of(s + one)
    return out


def c_tilde_w(ctx, w):
    """c~_w(xi): same shape as c_w but paired against the root, not the coroot."""
    if w.k != ctx.m:
        raise ValueError("w must lie in W(C_m)")
    out = RatFun.one(ctx.vars)
    one = LinearForm.const(ctx.vars, 1)
    for root in inversion_set(w):
        s = _root_pairing_xi(ctx, root)
        out = out * zeta_of(s) / zeta_of(s + one)
    return out


def c_alpha(ctx, root):
    """The rank-one factor c_alpha(chi) of a simple root of G."""
    one = LinearForm.const(ctx.vars, 1)
    if root.kind == "short":
        s = ctx.chi(root.index) - ctx.chi(root.index + 1)
    else:
        s = ctx.chi(ctx.n)
    return zeta_of(s) / zeta_of(s + one)


def c_tilde_beta(ctx, root):
    """The rank-one factor c~_beta(xi) of a simple root of M."""
    one = LinearForm.const(ctx.vars, 1)
    if root.kind == "short":
        s = ctx.xi(root.index) - ctx.xi(root.index + 1)
    else:
        s = ctx.xi(ctx.m) * 2
    return zeta_of(s) / zeta_of(s + one)


def gamma_alpha(ctx, root):
    """The gamma-factor of (w_alpha, 1), alpha a simple root of G.

    Case split on where alpha sits relative to the GL part: pure chi ratio
    for i <= n-m-1, a mixed chi/xi correction for n-m <= i <= n-1 (with
    i' = i - (n-m)), and the chi_n reflection for the long root.
    """
    if root.group != "G":
        raise ValueError("expected a simple root of G")
    V = ctx.vars
    one = LinearForm.const(V, 1)
    half = ctx.half()
    out = c_alpha(ctx, root)
    if root.kind == "long":
        return out * zeta_of(ctx.chi(ctx.n) + one) / zeta_of(-1 * ctx.chi(ctx.n) + one)
    i = root.index
    out = (
        out
        * zeta_of(ctx.chi(i) - ctx.chi(i + 1) + one)
        / zeta_of(ctx.chi(i + 1) - ctx.chi(i) + one)
    )
    if i <= ctx.n - ctx.m - 1:
        return out
    ip = i - (ctx.n - ctx.m)
    xi = ctx.xi(ip + 1)
    out = (
        out
        * zeta_of(ctx.chi(i + 1) - xi + half)
        * zeta_of(-1 * ctx.chi(i) + xi + half)
        / zeta_of(ctx.chi(i) - xi + half)
        / zeta_of(-1 * ctx.chi(i + 1) + xi + half)
    )
    return out


def gamma_beta(ctx, root):
    """The gamma-factor of (1, w_beta), beta a simple root of M.

    Uses the shifted characters chi~_i = chi_{n-m+i}.
    """
    if root.group != "M":
        raise ValueError("expected a simple root of M")
    V = ctx.vars
    one = LinearForm.const(V, 1)
    half = ctx.half()
    shift = ctx.n - ctx.m

    def chit(i):
        return ctx.chi(shift + i)

    out = c_tilde_beta(ctx, root)
    if root.kind == "short":
        i = root.index
        out = (
            out
            * zeta_of(ctx.xi(i) - ctx.xi(i + 1) + one)
            * zeta_of(-1 * chit(i) + ctx.xi(i + 1) + half)
            * zeta_of(chit(i) - ctx.xi(i) + half)
            / zeta_of(-1 * ctx.xi(i) + ctx.xi(i + 1) + one)
            / zeta_of(chit(i) - ctx.xi(i + 1) + half)
            / zeta_of(-1 * chit(i) + ctx.xi(i) + half)
        )
        return out
    mm = ctx.m
    out = (
        out
        * zeta_of(-1 * ctx.xi(mm) - chit(mm) + half)
        * zeta_of(-1 * ctx.xi(mm) + chit(mm) + half)
        * zeta_of(ctx.xi(mm) * 2 + one)
        * zeta_of(-1 * ctx.xi(mm) + half)
        / zeta_of(ctx.xi(mm) - chit(mm) + half)
        / zeta_of(ctx.xi(mm) + chit(mm) + half)
        / zeta_of(ctx.xi(mm) * -2 + one)
        / zeta_of(ctx.xi(mm) + half)
    )
    return out


# -- modulus characters on torus cocharacters --------------------------------


def delta_half_G(ctx, f):
    """delta^(1/2)_{B_G}(p^f) as an exponent tuple: prod_i v^(2 f_i (n-i+1)).

    The exponent n-i+1 is the i-th entry of the half-sum of positive roots
    of C_n; see the anchored evaluation delta^(1/2)(diag(t, I, t^-1)) = |t|^(m+1)
    for n = m+1, which pins the convention.
    """
    f = tuple(f)
    if len(f) != ctx.n:
        raise ValueError("f must have length n")
    e = sum(2 * fi * (ctx.n - i + 1) for i, fi in enumerate(f, 1))
    return ctx.vars.v_exp(e)


def delta_half_MJ(ctx, d):
    """delta^(1/2)_{B_{M^J}}(p^d) as an exponent tuple: prod_j v^(d_j (2(m-j)+3)).

    The Jacobi-group Borel picks up an extra half power of |t| from the
    Heisenberg radical, giving exponent m-j+3/2 at coordinate j; the anchor
    is the evaluation |t|^(-3/2) at j = m.
    """
    d = tuple(d)
    if len(d) != ctx.m:
        raise ValueError("d must have length m")
    e = sum(dj * (2 * (ctx.m - j) + 3) for j, dj in enumerate(d, 1))
    return ctx.vars.v_exp(e)
