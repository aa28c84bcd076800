"""The normalized Whittaker-Shintani values on the torus.

The central object is the double Weyl sum

    S(d, f) = sum over (w, w') in W(C_n) x W(C_m) of
              b(w.chi, w'.xi) d(w.chi) d'(w'.xi) (w.chi)^-1(p^f) (w'.xi)^-1(p^d)

and the normalized value

    L(d, f) = zeta(1)^-m prod_i zeta(2i) * delta_G^(1/2)(p^f)
              * delta_MJ^(1/2)(p^d) * S(d, f)

for dominant d, f.  Two engines compute S: a shared-denominator engine that
rewrites d(w.chi) through the Weyl-denominator identity

    d(chi) = (-1)^n / (P(chi) A_{W_G}(P(chi))),   P(chi) = chi^rho1,

turning the whole sum into one alternating polynomial divided by the two
fixed alternants (exact divisions, asserted), and a literal term-by-term
rational-function sum used as a cross-check at small rank.  Both are exact.
"""

from fractions import Fraction
from functools import lru_cache

from .ratfun import LinearForm, Poly, RatFun, laurent_div_exact, zeta_of
from .weyl import enumerate_group
from .zetafactors import (
    b_factor,
    b_factor_poly,
    b_linear_forms,
    d_factor,
    delta_half_G,
    delta_half_MJ,
    dprime_factor,
    gamma_big,
    simple_roots_G,
    simple_roots_M,
)

__all__ = [
    "require_dominant",
    "weyl_sum",
    "weyl_sum_direct",
    "weyl_sum_numeric",
    "L_value",
    "ws_torus",
    "normalization_constant",
    "normalization_constant_closed",
    "invariance_report",
    "sample_points",
]

_G_OFF = 1  # x-variables start at slot 1 of the exponent tuple


def require_dominant(vec, what):
    vec = tuple(int(a) for a in vec)
    if any(a < 0 for a in vec):
        raise ValueError("%s not dominant: negative entry in %r" % (what, vec))
    if any(vec[i] < vec[i + 1] for i in range(len(vec) - 1)):
        raise ValueError("%s not dominant: %r is not weakly decreasing" % (what, vec))
    return vec


def _rho1_doubled(n):
    """2*rho1 for SO_{2n+1}: the odd integers (2n-1, 2n-3, ..., 1)."""
    return tuple(2 * (n - i) - 1 for i in range(n))


def _rho2(m):
    """rho2 for Sp_2m: (m, m-1, ..., 1)."""
    return tuple(m - j for j in range(m))


@lru_cache(maxsize=None)
def _alternant_G(ctx):
    """A_{W_G}(x^rho1) * prod_i x_i^(1/2), an integral alternating Poly in x."""
    V = ctx.vars
    n = ctx.n
    d2 = _rho1_doubled(n)
    acc = {}
    for w in enumerate_group(n):
        img, flp = w.image, w.flips
        e = [0] * V.size
        for i in range(n):
            j = img[i] - 1
            e[_G_OFF + i] = (1 + flp[j] * d2[j]) // 2
        key = tuple(e)
        s = acc.get(key, 0) + w.sgn()
        if s:
            acc[key] = s
        else:
            del acc[key]
    return Poly(V, {e: Fraction(c) for e, c in acc.items()}, prune=False)


@lru_cache(maxsize=None)
def _alternant_M(ctx):
    """A_{W_M}(y^rho2), an integral alternating Poly in y."""
    V = ctx.vars
    m = ctx.m
    if m == 0:
        return Poly.constant(V, 1)
    r2 = _rho2(m)
    off = 1 + ctx.n
    acc = {}
    for w in enumerate_group(m):
        img, flp = w.image, w.flips
        e = [0] * V.size
        for j in range(m):
            t = img[j] - 1
            e[off + j] = flp[t] * r2[t]
        key = tuple(e)
        s = acc.get(key, 0) + w.sgn()
        if s:
            acc[key] = s
        else:
            del acc[key]
    return Poly(V, {e: Fraction(c) for e, c in acc.items()}, prune=False)


def _binomial(V, e):
    """The binomial 1 - X^e."""
    return Poly.constant(V, 1) - Poly.monomial(V, e)


@lru_cache(maxsize=None)
def _alternant_G_factored(ctx):
    """The G-alternant as (sign, unit exponent, binomial factors).

    The classical type-B Weyl denominator factorization
    A(x^rho1) = x^rho1 prod_{a<b} (1 - x_a^-1 x_b)(1 - x_a^-1 x_b^-1)
                prod_i (1 - x_i^-1)
    is not assumed: the expanded product is compared against the enumerated
    alternant (up to overall sign) and a mismatch raises.
    """
    V = ctx.vars
    n = ctx.n
    unit = [0] * V.size
    for i in range(n):
        unit[_G_OFF + i] = n - i  # rho1 + 1/2 = (n, n-1, ..., 1)
    factors = []
    for a in range(n):
        for b in range(a + 1, n):
            for sb in (1, -1):
                e = [0] * V.size
                e[_G_OFF + a] = -1
                e[_G_OFF + b] = sb
                factors.append(_binomial(V, tuple(e)))
    for i in range(n):
        e = [0] * V.size
        e[_G_OFF + i] = -1
        factors.append(_binomial(V, tuple(e)))
    return _match_alternant(_alternant_G(ctx), tuple(unit), factors)


@lru_cache(maxsize=None)
def _alternant_M_factored(ctx):
    """The M-alternant as (sign, unit exponent, binomial factors), checked
    against the enumerated sum like the G side (type-C denominator)."""
    V = ctx.vars
    m = ctx.m
    off = 1 + ctx.n
    unit = [0] * V.size
    for j in range(m):
        unit[off + j] = m - j  # rho2 = (m, ..., 1)
    factors = []
    for a in range(m):
        for b in range(a + 1, m):
            for sb in (1, -1):
                e = [0] * V.size
                e[off + a] = -1
                e[off + b] = sb
                factors.append(_binomial(V, tuple(e)))
    for j in range(m):
        e = [0] * V.size
        e[off + j] = -2
        factors.append(_binomial(V, tuple(e)))
    return _match_alternant(_alternant_M(ctx), tuple(unit), factors)


def _match_alternant(alternant, unit, factors):
    prod = Poly.monomial(alternant.vars, unit)
    for f in factors:
        prod = prod * f
    if prod == alternant:
        return 1, unit, tuple(factors)
    if prod == -alternant:
        return -1, unit, tuple(factors)
    raise AssertionError("Weyl denominator factorization mismatch")


def _divide_by_alternants(ctx, acc):
    """acc / (G-alternant * M-alternant) on a raw integer term dict, by unit
    shift and sequential exact binomial divisions; raises when inexact."""
    sg, ug, fg = _alternant_G_factored(ctx)
    sm, um, fm = (1, ctx.vars.zero_exp(), ()) if ctx.m == 0 else _alternant_M_factored(ctx)
    shift = tuple(-a - b for a, b in zip(ug, um))
    quot = {tuple(a + b for a, b in zip(e, shift)): c for e, c in acc.items()}
    for f in fg + fm:
        fdict = {e: c.numerator for e, c in f.terms.items()}
        quot = laurent_div_exact(quot, fdict, fractions=False)
        if quot is None:
            raise AssertionError("Weyl sum numerator not divisible by an alternant")
    if sg * sm < 0:
        quot = {e: -c for e, c in quot.items()}
    return Poly(ctx.vars, {e: Fraction(c) for e, c in quot.items()}, prune=False)


@lru_cache(maxsize=None)
def _b_terms_int(ctx):
    """b(chi, xi) expanded, as a tuple of (exponent, int coefficient)."""
    return tuple(
        (e, c.numerator) for e, c in sorted(b_factor_poly(ctx).terms.items())
    )


def weyl_sum(ctx, d, f):
    """The double Weyl sum S(d, f), exactly, over all 2^n n! * 2^m m! pairs.

    Every term is accumulated over the shared denominator
    A_{W_G}(chi^rho1) A_{W_M}(xi^rho2); the final division is exact and
    asserted.  The result is W_G x W_M-invariant by construction.
    """
    d = require_dominant(d, "d")
    f = require_dominant(f, "f")
    V = ctx.vars
    n, m = ctx.n, ctx.m
    if len(f) != n or len(d) != m:
        raise ValueError("shape mismatch: need |f| = n, |d| = m")

    bterms = _b_terms_int(ctx)
    q2f = tuple(2 * f[i] + e for i, e in enumerate(_rho1_doubled(n)))
    dr2 = tuple(d[j] + e for j, e in enumerate(_rho2(m)))
    y_off = 1 + n

    acc = {}
    acc_get = acc.get
    for w in enumerate_group(n):
        img, flp = w.image, w.flips
        sg = w.sgn()
        # per-target source slot, sign, and the half-integer compensating
        # shift (1 - (w*q2f)_i)/2 of the x-substitution
        xmap = []
        for i in range(n):
            j = img[i] - 1
            xmap.append((_G_OFF + j, flp[j], (1 - flp[j] * q2f[j]) // 2))
        for w2 in enumerate_group(m) if m else [None]:
            if w2 is None:
                sign = sg
                ymap = ()
            else:
                img2, flp2 = w2.image, w2.flips
                sign = sg * w2.sgn()
                ymap = tuple(
                    (y_off + img2[j] - 1, flp2[img2[j] - 1], -flp2[img2[j] - 1] * dr2[img2[j] - 1])
                    for j in range(m)
                )
            for e, c in bterms:
                key = (
                    (e[0],)
                    + tuple(sgn_ * e[src] + off for src, sgn_, off in xmap)
                    + tuple(sgn_ * e[src] + off for src, sgn_, off in ymap)
                )
                s = acc_get(key, 0) + sign * c
                if s:
                    acc[key] = s
                else:
                    del acc[key]

    quot = _divide_by_alternants(ctx, acc)
    sign = -1 if (n + m) % 2 else 1
    return RatFun.from_poly(quot) * sign


def weyl_sum_direct(ctx, d, f):
    """Literal term-by-term evaluation of S(d, f) as rational functions.

    Exponentially slower than ``weyl_sum``; kept as an independent route for
    cross-checks at small rank.
    """
    d = require_dominant(d, "d")
    f = require_dominant(f, "f")
    V = ctx.vars
    n, m = ctx.n, ctx.m
    b = b_factor(ctx)
    dd = d_factor(ctx)
    dp = dprime_factor(ctx)
    total = RatFun.zero(V)
    for w in enumerate_group(n):
        remap_w = w.embed_remap(V.size, _G_OFF)
        torus_x = [0] * V.size
        for i in range(n):
            j = w.image[i] - 1
            torus_x[_G_OFF + i] = -w.flips[j] * f[j]
        part_w = (
            b.substitute_exponents(remap_w)
            * dd.substitute_exponents(remap_w)
            * RatFun.monomial(V, tuple(torus_x))
        )
        for w2 in enumerate_group(m) if m else [None]:
            if w2 is None:
                total = total + part_w
                continue
            remap_w2 = w2.embed_remap(V.size, 1 + n)
            torus_y = [0] * V.size
            for j in range(m):
                t = w2.image[j] - 1
                torus_y[1 + n + j] = -w2.flips[t] * d[t]
            term = (
                part_w.substitute_exponents(remap_w2)
                * dp.substitute_exponents(remap_w2)
                * RatFun.monomial(V, tuple(torus_y))
            )
            total = total + term
    return total


def normalization_constant(ctx):
    """The double Weyl sum with no torus insertion: all (chi, xi) dependence
    must cancel, leaving the constant C = zeta(1)^m prod zeta^-1(2i)."""
    return weyl_sum(ctx, (0,) * ctx.m, (0,) * ctx.n)


def normalization_constant_closed(ctx):
    """C = zeta(1)^m prod_{i=1}^m zeta^-1(2i), straight from the closed form."""
    V = ctx.vars
    out = RatFun.one(V)
    if ctx.m == 0:
        return out
    one = LinearForm.const(V, 1)
    z1 = zeta_of(one)
    for i in range(1, ctx.m + 1):
        out = out * z1 / zeta_of(LinearForm.const(V, 2 * i))
    return out


def L_value(ctx, d, f):
    """The normalized integrated Whittaker-Shintani value L(d, f).

    Exact for dominant d in Z^m, f in Z^n; the prefactor is the closed-form
    reciprocal of the normalization constant, so L(0, 0) = 1 is a theorem
    about the Weyl sum, not a convention.
    """
    d = require_dominant(d, "d")
    f = require_dominant(f, "f")
    s = weyl_sum(ctx, d, f)
    pref = normalization_constant_closed(ctx).inverse()
    deltas = RatFun.monomial(
        ctx.vars,
        tuple(
            a + b
            for a, b in zip(delta_half_G(ctx, f), delta_half_MJ(ctx, d))
        ),
    )
    return (pref * deltas * s).reduced()


def ws_torus(ctx, f):
    """The normalized Whittaker-Shintani function at p^f: W0(p^f) = L(0, f)."""
    return L_value(ctx, (0,) * ctx.m, f)


# -- numeric backend ---------------------------------------------------------


def _eval_forms(forms, point, invert=False, tol=1e-12):
    """Product of zeta factors (or their inverses) at a numeric point."""
    out = 1 + 0j
    for s in forms:
        mono = s.monomial()
        val = 1 + 0j
        for base, k in zip(point, mono):
            if k:
                val *= base ** k
        if invert:
            out *= 1 - val
        else:
            den = 1 - val
            if abs(den) < tol:
                from .ratfun import PoleError

                raise PoleError(
                    "zeta factor pole at sample point (|1 - q^-s| = %g)" % abs(den),
                    magnitude=abs(den),
                )
            out /= den
    return out


def _dd_forms(ctx):
    forms = []
    for a in range(1, ctx.n + 1):
        for b in range(a + 1, ctx.n + 1):
            forms.append(ctx.chi(a) - ctx.chi(b))
            forms.append(ctx.chi(a) + ctx.chi(b))
    for i in range(1, ctx.n + 1):
        forms.append(ctx.chi(i))
    return forms


def _dp_forms(ctx):
    forms = []
    for a in range(1, ctx.m + 1):
        for b in range(a + 1, ctx.m + 1):
            forms.append(ctx.xi(a) - ctx.xi(b))
            forms.append(ctx.xi(a) + ctx.xi(b))
    for j in range(1, ctx.m + 1):
        forms.append(ctx.xi(j) * 2)
    return forms


def weyl_sum_numeric(ctx, d, f, point):
    """S(d, f) at a numeric point, one complex evaluation per Weyl term,
    accumulated with compensated (Kahan) summation."""
    d = require_dominant(d, "d")
    f = require_dominant(f, "f")
    n, m = ctx.n, ctx.m
    v = point[0]
    xs = point[1 : 1 + n]
    ys = point[1 + n :]
    bf = b_linear_forms(ctx)
    ddf = _dd_forms(ctx)
    dpf = _dp_forms(ctx)
    total = 0j
    comp = 0j
    for w in enumerate_group(n):
        wx = w.act_on_point(xs)
        for w2 in enumerate_group(m) if m else [None]:
            wy = w2.act_on_point(ys) if w2 is not None else ()
            pt = (v,) + wx + wy
            term = _eval_forms(bf, pt, invert=True)
            term *= _eval_forms(ddf, pt)
            if m:
                term *= _eval_forms(dpf, pt)
            for i in range(n):
                if f[i]:
                    term *= wx[i] ** (-f[i])
            for j in range(m):
                if d[j]:
                    term *= wy[j] ** (-d[j])
            # Kahan step
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
    return total


def sample_points(ctx, count, seed, q=3, radius=0.7):
    """Seeded sample points: x, y uniform on the circle of the given radius,
    v fixed to q^(-1/2).  The radius < 1 keeps zeta denominators away from 0."""
    import cmath
    import random

    rng = random.Random(seed)
    pts = []
    v = q ** (-0.5)
    for _ in range(count):
        xs = tuple(
            radius * cmath.exp(2j * cmath.pi * rng.random()) for _ in range(ctx.n)
        )
        ys = tuple(
            radius * cmath.exp(2j * cmath.pi * rng.random()) for _ in range(ctx.m)
        )
        pts.append((v,) + xs + ys)
    return pts


# -- invariance verifier -----------------------------------------------------


def _generators(ctx):
    gens = []
    for root in simple_roots_G(ctx):
        gens.append(("G", root, root.reflection(ctx)))
    for root in simple_roots_M(ctx):
        gens.append(("M", root, root.reflection(ctx)))
    return gens


class InvarianceReport:
    """Per-generator outcome of the W_G x W_M invariance check of I/Gamma."""

    def __init__(self, ctx, d, f, mode, results, skipped=0):
        self.ctx = ctx
        self.d = d
        self.f = f
        self.mode = mode
        self.results = results  # list of (group, label, ok, deviation-or-None)
        self.skipped = skipped

    @property
    def ok(self):
        return all(r[2] for r in self.results)

    @property
    def max_deviation(self):
        devs = [r[3] for r in self.results if r[3] is not None]
        return max(devs) if devs else 0.0

    def as_dict(self):
        return {
            "n": self.ctx.n,
            "m": self.ctx.m,
            "d": list(self.d),
            "f": list(self.f),
            "mode": self.mode,
            "generators": [
                {"group": g, "root": lab, "pass": ok}
                | ({"deviation": dev} if dev is not None else {})
                for g, lab, ok, dev in self.results
            ],
            "skipped_points": self.skipped,
            "pass": self.ok,
        }


def _root_label(root):
    if root.kind == "short":
        return "e%d-e%d" % (root.index, root.index + 1)
    return "2e%d" % root.index


def invariance_report(ctx, d, f, mode="exact", samples=10, seed=0, q=3, radius=0.7,
                      tol=1e-9):
    """Check that the unnormalized pairing value over Gamma(chi, xi) is
    invariant under every simple reflection of W_G and of W_M.

    The unnormalized value is (1-v^2)^m Gamma(chi,xi) S(d,f) (times torus
    monomials that substitutions do not touch); its quotient by Gamma is
    computed by exact division in exact mode, so the check exercises both
    the Gamma bookkeeping and the invariance of the Weyl sum.
    """
    d = require_dominant(d, "d")
    f = require_dominant(f, "f")
    V = ctx.vars
    gens = _generators(ctx)
    results = []
    if mode == "exact":
        gamma = gamma_big(ctx)
        one_minus_p = RatFun.from_poly(
            Poly.constant(V, 1) - Poly.monomial(V, V.v_exp(2))
        )
        unnorm = (one_minus_p ** ctx.m) * gamma * weyl_sum(ctx, d, f)
        base = unnorm / gamma
        for group, root, w in gens:
            offset = _G_OFF if group == "G" else 1 + ctx.n
            remap = w.embed_remap(V.size, offset)
            reflected = unnorm.substitute_exponents(remap) / gamma.substitute_exponents(
                remap
            )
            ok = reflected == base
            results.append((group, _root_label(root), ok, None))
        return InvarianceReport(ctx, d, f, "exact", results)

    if mode != "numeric":
        raise ValueError("mode must be 'exact' or 'numeric'")
    from .ratfun import PoleError

    pts = sample_points(ctx, samples, seed, q=q, radius=radius)
    gamma = gamma_big(ctx)
    per_gen_dev = {i: 0.0 for i in range(len(gens))}
    skipped = 0
    for pt in pts:
        try:
            base = weyl_sum_numeric(ctx, d, f, pt)
            base_gamma = gamma.eval_at(pt)
            base_ratio = ((1 - pt[0] ** 2) ** ctx.m) * base_gamma * base / base_gamma
        except PoleError:
            skipped += 1
            continue
        for idx, (group, root, w) in enumerate(gens):
            if group == "G":
                wpt = (pt[0],) + w.act_on_point(pt[1 : 1 + ctx.n]) + pt[1 + ctx.n :]
            else:
                wpt = pt[: 1 + ctx.n] + w.act_on_point(pt[1 + ctx.n :])
            try:
                refl = weyl_sum_numeric(ctx, d, f, wpt)
                refl_gamma = gamma.eval_at(wpt)
                ratio = ((1 - wpt[0] ** 2) ** ctx.m) * refl_gamma * refl / refl_gamma
            except PoleError:
                skipped += 1
                continue
            dev = abs(ratio - base_ratio)
            if dev > per_gen_dev[idx]:
                per_gen_dev[idx] = dev
    for idx, (group, root, w) in enumerate(gens):
        dev = per_gen_dev[idx]
        results.append((group, _root_label(root), dev < tol, dev))
    return InvarianceReport(ctx, d, f, "numeric", results, skipped=skipped)
