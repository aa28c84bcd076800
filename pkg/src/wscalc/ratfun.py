"""Exact arithmetic in the field Q(v, x_1..x_n, y_1..y_m) of Laurent rational functions.

Everything downstream (local factors, Weyl sums, character formulas) is built
from three layers:

  * exponent tuples -- a monomial is a tuple of integers, one slot per
    variable, in the fixed order (v, x_1, ..., x_n, y_1, ..., y_m);
    exponents may be negative;
  * ``Poly`` -- a sparse Laurent polynomial with exact Fraction coefficients;
  * ``RatFun`` -- a quotient, kept in partially factored form: a scalar unit
    times a product of canonical polynomial factors over another such
    product.  Multiplication and division never expand anything; addition
    expands numerators over a shared denominator and then cancels factors
    by exact trial division.

All values are immutable after construction and safe to share.
"""

from fractions import Fraction
from math import gcd

__all__ = [
    "Vars",
    "Poly",
    "RatFun",
    "LinearForm",
    "zeta_of",
    "zeta_inv_of",
    "PoleError",
    "ContextMismatchError",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ContextMismatchError(ValueError):
    """Raised when two values over different variable contexts are combined."""


class PoleError(ArithmeticError):
    """Raised on evaluation too close to a pole, or on a zero denominator.

    Carries the offending denominator magnitude in ``magnitude`` when the
    error comes from numeric evaluation.
    """

    def __init__(self, message, magnitude=None):
        super().__init__(message)
        self.magnitude = magnitude


class Vars:
    """The variable context (v, x_1..x_n, y_1..y_m).

    Index 0 is v = q^(-1/2); indices 1..n are the x_i = q^(-chi_i) and
    indices n+1..n+m are the y_j = q^(-xi_j).
    """

    __slots__ = ("n", "m", "size")

    def __init__(self, n, m):
        if n < 0 or m < 0:
            raise ValueError("variable counts must be nonnegative")
        self.n = n
        self.m = m
        self.size = 1 + n + m

    def __eq__(self, other):
        return isinstance(other, Vars) and self.n == other.n and self.m == other.m

    def __hash__(self):
        return hash((self.n, self.m))

    def __repr__(self):
        return "Vars(n=%d, m=%d)" % (self.n, self.m)

    def zero_exp(self):
        return (0,) * self.size

    def unit_exp(self, index, e=1):
        exp = [0] * self.size
        exp[index] = e
        return tuple(exp)

    def v_exp(self, e=1):
        return self.unit_exp(0, e)

    def x_exp(self, i, e=1):
        if not 1 <= i <= self.n:
            raise IndexError("x index out of range: %d" % i)
        return self.unit_exp(i, e)

    def y_exp(self, j, e=1):
        if not 1 <= j <= self.m:
            raise IndexError("y index out of range: %d" % j)
        return self.unit_exp(self.n + j, e)

    def var_name(self, index):
        if index == 0:
            return "v"
        if index <= self.n:
            return "x%d" % index
        return "y%d" % (index - self.n)

    def point(self, v, x=(), y=()):
        """Pack a numeric assignment into the canonical tuple order."""
        if len(x) != self.n or len(y) != self.m:
            raise ContextMismatchError("point shape does not match context")
        return (v,) + tuple(x) + tuple(y)


def _check_same(a, b):
    if a.vars != b.vars:
        raise ContextMismatchError("operands live over different variable contexts")


def exp_mul(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


def exp_neg(e):
    return tuple(-a for a in e)


class Poly:
    """Sparse Laurent polynomial: dict from exponent tuple to nonzero Fraction."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars_, terms, prune=True):
        self.vars = vars_
        if prune:
            terms = {e: c for e, c in terms.items() if c}
        self.terms = terms

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars_):
        return cls(vars_, {}, prune=False)

    @classmethod
    def constant(cls, vars_, c):
        c = Fraction(c)
        if not c:
            return cls.zero(vars_)
        return cls(vars_, {vars_.zero_exp(): c}, prune=False)

    @classmethod
    def monomial(cls, vars_, exp, c=1):
        c = Fraction(c)
        if not c:
            return cls.zero(vars_)
        return cls(vars_, {tuple(exp): c}, prune=False)

    # -- ring operations ----------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        _check_same(self, other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, _ZERO) + c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return Poly(self.vars, res, prune=False)

    def __sub__(self, other):
        _check_same(self, other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, _ZERO) - c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return Poly(self.vars, res, prune=False)

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()}, prune=False)

    def __mul__(self, other):
        _check_same(self, other)
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        res = {}
        for e2, c2 in small.items():
            for e1, c1 in big.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = res.get(e, _ZERO) + c1 * c2
                if s:
                    res[e] = s
                else:
                    del res[e]
        return Poly(self.vars, res, prune=False)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Poly.zero(self.vars)
        return Poly(self.vars, {e: k * c for e, k in self.terms.items()}, prune=False)

    def shift(self, exp):
        """Multiply by the monomial with exponent tuple ``exp``."""
        return Poly(
            self.vars,
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()},
            prune=False,
        )

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- structure ----------------------------------------------------

    def min_exponents(self):
        """Componentwise minimum exponent over all terms (zero poly: origin)."""
        if not self.terms:
            return self.vars.zero_exp()
        mins = None
        for e in self.terms:
            if mins is None:
                mins = list(e)
            else:
                for i, a in enumerate(e):
                    if a < mins[i]:
                        mins[i] = a
        return tuple(mins)

    def content(self):
        """Positive rational c with self/c having coprime integer coefficients."""
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        if num_gcd == 0:
            return _ONE
        return Fraction(num_gcd, den_lcm)

    def leading(self):
        """(exponent, coefficient) of the lexicographically largest term."""
        e = max(self.terms)
        return e, self.terms[e]

    def divide_exact(self, divisor):
        """Exact division: return self/divisor as a Poly, or None if not divisible.

        Works on the Laurent grid; exactness is decided, not assumed.  The
        arithmetic runs on plain integers whenever both operands have
        integer coefficients (a primitive divisor's exact quotient is
        integral by Gauss's lemma; the divisor content is scaled back in).
        """
        _check_same(self, divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        integral = all(c.denominator == 1 for c in self.terms.values()) and all(
            c.denominator == 1 for c in divisor.terms.values()
        )
        if integral:
            rem = {e: c.numerator for e, c in self.terms.items()}
            div = {e: c.numerator for e, c in divisor.terms.items()}
            div_content = 0
            for c in div.values():
                div_content = gcd(div_content, abs(c))
            if div_content > 1:
                div = {e: c // div_content for e, c in div.items()}
            else:
                div_content = 1
            quot = laurent_div_exact(rem, div, fractions=False)
            if quot is None:
                return None
            return Poly(
                self.vars,
                {e: Fraction(c, div_content) for e, c in quot.items()},
                prune=False,
            )
        quot = laurent_div_exact(dict(self.terms), dict(divisor.terms), fractions=True)
        if quot is None:
            return None
        return Poly(self.vars, quot, prune=False)

    def eval_at(self, point):
        """Evaluate at a complex point (tuple in canonical variable order)."""
        total = 0j
        for e, c in self.terms.items():
            val = complex(c)
            for base, k in zip(point, e):
                if k:
                    val *= base ** k
            total += val
        return total

    def substitute_exponents(self, remap):
        """Apply an exponent-tuple remap (a bijection of the monomial lattice)."""
        return Poly(self.vars, {remap(e): c for e, c in self.terms.items()}, prune=False)

    def text(self):
        """Deterministic text form: terms sorted lexicographically by exponent."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            body = "*".join(
                "%s^%d" % (self.vars.var_name(i), k) for i, k in enumerate(e) if k
            )
            if body:
                parts.append("%s*%s" % (_frac_text(c), body))
            else:
                parts.append(_frac_text(c))
        return " + ".join(parts)

    def __repr__(self):
        return "Poly(%s)" % self.text()


def _frac_text(c):
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


def laurent_div_exact(rem, div, fractions=False):
    """Exact division of sparse Laurent dicts {exp tuple: coeff}.

    Consumes ``rem``; returns the quotient dict or None when the division is
    not exact.  Both dicts are shifted to nonnegative exponents internally;
    the leading term is tracked with a lazy max-heap.  With
    ``fractions=False`` the coefficients must be ints and a non-integral
    quotient step proves inexactness (primitive divisor assumed).
    """
    import heapq

    if not div:
        raise ZeroDivisionError("polynomial division by zero")
    if not rem:
        return {}
    smin = None
    for e in rem:
        if smin is None:
            smin = list(e)
        else:
            for i, a in enumerate(e):
                if a < smin[i]:
                    smin[i] = a
    dmin = None
    for e in div:
        if dmin is None:
            dmin = list(e)
        else:
            for i, a in enumerate(e):
                if a < dmin[i]:
                    dmin[i] = a
    rem = {tuple(a - b for a, b in zip(e, smin)): c for e, c in rem.items()}
    div = {tuple(a - b for a, b in zip(e, dmin)): c for e, c in div.items()}
    lead_e = max(div)
    lead_c = div.pop(lead_e)
    tail = list(div.items())
    back = tuple(b - a for a, b in zip(smin, dmin))
    heap = list(rem)
    for i, e in enumerate(heap):
        heap[i] = tuple(-a for a in e)
    heapq.heapify(heap)
    quot = {}
    while heap:
        re = tuple(-a for a in heapq.heappop(heap))
        rc = rem.pop(re, None)
        if rc is None:
            continue  # stale heap entry
        qe = tuple(a - b for a, b in zip(re, lead_e))
        if any(a < 0 for a in qe):
            return None
        if fractions:
            qc = rc / lead_c
        else:
            qc, residue = divmod(rc, lead_c)
            if residue:
                return None
        quot[qe] = qc
        for de, dc in tail:
            e = tuple(a + b for a, b in zip(qe, de))
            old = rem.get(e)
            if old is None:
                rem[e] = -qc * dc
                heapq.heappush(heap, tuple(-a for a in e))
            else:
                s = old - qc * dc
                if s:
                    rem[e] = s
                else:
                    del rem[e]
    if rem:
        return None
    if any(back):
        return {tuple(a - b for a, b in zip(e, back)): c for e, c in quot.items()}
    return quot


# -- canonical factors ----------------------------------------------------
#
# A factor is stored as a sorted tuple of (exponent, Fraction) pairs with
# componentwise-minimal exponent 0, coprime integer coefficients, and the
# lexicographically leading coefficient positive.  The unit stripped off in
# canonicalization is returned so callers can absorb it.


def canonical_factor(poly):
    """Split ``poly`` into (coeff, mono, key) with poly == coeff * X^mono * key."""
    if poly.is_zero():
        raise ZeroDivisionError("zero polynomial cannot be a factor")
    mins = poly.min_exponents()
    terms = {tuple(a - b for a, b in zip(e, mins)): c for e, c in poly.terms.items()}
    cont = Poly(poly.vars, terms, prune=False).content()
    lead = terms[max(terms)]
    if lead < 0:
        cont = -cont
    key = tuple(sorted((e, c / cont) for e, c in terms.items()))
    return cont, mins, key


def _key_to_poly(vars_, key):
    return Poly(vars_, dict(key), prune=False)


def _key_is_monomial(key):
    return len(key) == 1


class RatFun:
    """Exact rational function, value = coeff * X^mono * prod(nfac) / prod(dfac).

    ``nfac`` and ``dfac`` are sorted tuples of canonical factor keys; equal
    keys in numerator and denominator are cancelled on construction, and the
    expanded numerator is trial-divided by each denominator factor so that
    e.g. (1-x^2)/(1-x) built from explicit numerator and denominator comes
    out as 1+x.  The denominator is never zero.
    """

    __slots__ = ("vars", "coeff", "mono", "nfac", "dfac")

    def __init__(self, vars_, coeff, mono, nfac, dfac, reduce_=True):
        coeff = Fraction(coeff)
        if not coeff:
            self.vars = vars_
            self.coeff = _ZERO
            self.mono = vars_.zero_exp()
            self.nfac = ()
            self.dfac = ()
            return
        if reduce_:
            nfac, dfac = _cancel_multisets(nfac, dfac)
            coeff, mono, nfac, dfac = _reduce_by_division(
                vars_, coeff, mono, nfac, dfac
            )
        self.vars = vars_
        self.coeff = coeff
        self.mono = tuple(mono)
        self.nfac = tuple(sorted(nfac))
        self.dfac = tuple(sorted(dfac))

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars_):
        return cls(vars_, 0, vars_.zero_exp(), (), (), reduce_=False)

    @classmethod
    def one(cls, vars_):
        return cls(vars_, 1, vars_.zero_exp(), (), (), reduce_=False)

    @classmethod
    def constant(cls, vars_, c):
        return cls(vars_, c, vars_.zero_exp(), (), (), reduce_=False)

    @classmethod
    def monomial(cls, vars_, exp, c=1):
        return cls(vars_, c, tuple(exp), (), (), reduce_=False)

    @classmethod
    def from_poly(cls, poly):
        if poly.is_zero():
            return cls.zero(poly.vars)
        coeff, mono, key = canonical_factor(poly)
        if _key_is_monomial(key):
            e, c = key[0]
            return cls(poly.vars, coeff * c, exp_mul(mono, e), (), (), reduce_=False)
        return cls(poly.vars, coeff, mono, (key,), (), reduce_=False)

    @classmethod
    def from_num_den(cls, num, den):
        """Build num/den from Polys (den may be a Poly or an iterable of Polys)."""
        if isinstance(den, Poly):
            den = (den,)
        vars_ = num.vars
        coeff, mono = _ONE, vars_.zero_exp()
        dfac = []
        for d in den:
            if d.is_zero():
                raise ZeroDivisionError("zero denominator")
            c, e, key = canonical_factor(d)
            coeff /= c
            mono = tuple(a - b for a, b in zip(mono, e))
            if _key_is_monomial(key):
                ke, kc = key[0]
                coeff /= kc
                mono = tuple(a - b for a, b in zip(mono, ke))
            else:
                dfac.append(key)
        if num.is_zero():
            return cls.zero(vars_)
        c, e, key = canonical_factor(num)
        coeff *= c
        mono = exp_mul(mono, e)
        nfac = []
        if _key_is_monomial(key):
            ke, kc = key[0]
            coeff *= kc
            mono = exp_mul(mono, ke)
        else:
            nfac.append(key)
        return cls(vars_, coeff, mono, tuple(nfac), tuple(dfac))

    # -- predicates and views ------------------------------------------

    def is_zero(self):
        return not self.coeff

    def is_one(self):
        return self.coeff == 1 and not self.nfac and not self.dfac and not any(self.mono)

    def numerator_poly(self):
        """Expanded numerator (including the unit)."""
        p = Poly.monomial(self.vars, self.mono, self.coeff)
        for key in self.nfac:
            p = p * _key_to_poly(self.vars, key)
        return p

    def denominator_poly(self):
        p = Poly.constant(self.vars, 1)
        for key in self.dfac:
            p = p * _key_to_poly(self.vars, key)
        return p

    # -- arithmetic -----------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFun(
                self.vars, self.coeff * other, self.mono, self.nfac, self.dfac,
                reduce_=False,
            )
        _check_same(self, other)
        if self.is_zero() or other.is_zero():
            return RatFun.zero(self.vars)
        nfac, dfac = _cancel_multisets(
            self.nfac + other.nfac, self.dfac + other.dfac
        )
        return RatFun(
            self.vars,
            self.coeff * other.coeff,
            exp_mul(self.mono, other.mono),
            nfac,
            dfac,
            reduce_=False,
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFun(
            self.vars, 1 / self.coeff, exp_neg(self.mono), self.dfac, self.nfac,
            reduce_=False,
        )

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (_ONE / Fraction(other))
        return self * other.inverse()

    def __pow__(self, k):
        if k == 0:
            return RatFun.one(self.vars)
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFun.constant(self.vars, other)
        _check_same(self, other)
        if self.is_zero():
            return other.reduced()
        if other.is_zero():
            return self.reduced()
        common, amore, bmore = _split_common(self.dfac, other.dfac)
        na = self.numerator_poly()
        for key in bmore:
            na = na * _key_to_poly(self.vars, key)
        nb = other.numerator_poly()
        for key in amore:
            nb = nb * _key_to_poly(self.vars, key)
        num = na + nb
        if num.is_zero():
            return RatFun.zero(self.vars)
        c, e, key = canonical_factor(num)
        nfac = () if _key_is_monomial(key) else (key,)
        if _key_is_monomial(key):
            ke, kc = key[0]
            c *= kc
            e = exp_mul(e, ke)
        return RatFun(self.vars, c, e, nfac, common + amore + bmore)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFun.constant(self.vars, other)
        return self + (other * -1)

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFun.constant(self.vars, other)
        if not isinstance(other, RatFun):
            return NotImplemented
        if self.vars != other.vars:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if (
            self.coeff == other.coeff
            and self.mono == other.mono
            and self.nfac == other.nfac
            and self.dfac == other.dfac
        ):
            return True
        # compare through the quotient: shared factors cancel as multisets,
        # so only the (typically tiny) residual gets expanded
        diff = self / other
        return diff.numerator_poly() == diff.denominator_poly()

    def __hash__(self):
        # hash through the reduced expanded form; equal values built along
        # different factor splits may collide, which is all hashing needs
        return hash((self.vars, self.coeff))

    def reduced(self):
        """Collapse the numerator factors and cancel what divides exactly.

        Multiplication and division are lazy (they only concatenate factor
        lists); this expands the numerator into a single polynomial and
        trial-divides it by each denominator factor, the canonical form the
        addition path already produces.
        """
        if self.is_zero() or not self.nfac or (len(self.nfac) == 1 and not self.dfac):
            return self
        num = self.numerator_poly()
        c, e, key = canonical_factor(num)
        if _key_is_monomial(key):
            ke, kc = key[0]
            return RatFun(self.vars, c * kc, exp_mul(e, ke), (), self.dfac)
        return RatFun(self.vars, c, e, (key,), self.dfac)

    # -- substitution and evaluation -------------------------------------

    def substitute_exponents(self, remap):
        """Apply a lattice automorphism (e.g. a Weyl substitution) exactly."""
        coeff = self.coeff
        mono = remap(self.mono)
        nfac = []
        dfac = []
        for keys, out, inv in ((self.nfac, nfac, False), (self.dfac, dfac, True)):
            for key in keys:
                p = _key_to_poly(self.vars, key).substitute_exponents(remap)
                c, e, k = canonical_factor(p)
                if inv:
                    coeff /= c
                    mono = tuple(a - b for a, b in zip(mono, e))
                else:
                    coeff *= c
                    mono = exp_mul(mono, e)
                if _key_is_monomial(k):
                    ke, kc = k[0]
                    if inv:
                        coeff /= kc
                        mono = tuple(a - b for a, b in zip(mono, ke))
                    else:
                        coeff *= kc
                        mono = exp_mul(mono, ke)
                else:
                    out.append(k)
        nfac, dfac = _cancel_multisets(tuple(nfac), tuple(dfac))
        return RatFun(self.vars, coeff, mono, nfac, dfac, reduce_=False)

    def eval_at(self, point, tol=1e-12):
        """Evaluate at a complex point; raise PoleError near a denominator zero."""
        if len(point) != self.vars.size:
            raise ContextMismatchError("point shape does not match context")
        num = complex(self.coeff)
        for base, k in zip(point, self.mono):
            if k:
                num *= base ** k
        for key in self.nfac:
            num *= _key_to_poly(self.vars, key).eval_at(point)
        den = 1 + 0j
        for key in self.dfac:
            den *= _key_to_poly(self.vars, key).eval_at(point)
        if abs(den) < tol:
            raise PoleError(
                "evaluation within %g of a pole (|denominator| = %g)"
                % (tol, abs(den)),
                magnitude=abs(den),
            )
        return num / den

    # -- output ----------------------------------------------------------

    def text(self):
        """Deterministic serialization, numerator and denominator expanded.

        The pair is normalized so the denominator's lexicographically first
        term has positive coefficient.
        """
        num = self.numerator_poly()
        den = self.denominator_poly()
        if den.terms and den.terms[min(den.terms)] < 0:
            num = -num
            den = -den
        if den == Poly.constant(self.vars, 1):
            return num.text()
        return "(%s) / (%s)" % (num.text(), den.text())

    def __repr__(self):
        return "RatFun(%s)" % self.text()


def _split_common(a, b):
    """Split two sorted factor tuples into (common, a_only, b_only) multisets."""
    common, amore = [], []
    rest = list(b)
    for key in a:
        try:
            rest.remove(key)
            common.append(key)
        except ValueError:
            amore.append(key)
    return tuple(common), tuple(amore), tuple(rest)


def _cancel_multisets(nfac, dfac):
    if not nfac or not dfac:
        return tuple(nfac), tuple(dfac)
    common, nonly, donly = _split_common(tuple(nfac), tuple(dfac))
    return nonly, donly


def _binomial_halves(vars_, key):
    """Split a canonical binomial x^E - k^2 (E all even) as (x^(E/2) -+ k).

    Returns the two canonical half keys, or None when the factor is not a
    rational difference of squares.
    """
    if len(key) != 2:
        return None
    (e0, c0), (e1, c1) = key
    if any(e0):
        return None
    if c1 != 1 or c0 >= 0 or c0.denominator != 1:
        return None
    if any(a % 2 for a in e1):
        return None
    k2 = -c0
    k = _isqrt_exact(k2.numerator)
    if k is None:
        return None
    half = tuple(a // 2 for a in e1)
    zero = tuple(0 for _ in e1)
    minus = tuple(sorted(((zero, Fraction(-k)), (half, _ONE))))
    plus = tuple(sorted(((zero, Fraction(k)), (half, _ONE))))
    return minus, plus


def _isqrt_exact(n):
    if n < 0:
        return None
    r = int(n ** 0.5)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c == n:
            return c
    return None


def _reduce_by_division(vars_, coeff, mono, nfac, dfac):
    """Cancel denominator factors that exactly divide the expanded numerator.

    Only runs when there is a single expanded numerator blob (the common case
    after addition); products of untouched factors are left alone, so pure
    multiplicative pipelines never expand.  A denominator binomial that is a
    difference of squares is split when one half cancels (so e.g. a residual
    (1-v^4) against a numerator divisible by 1-v^2 leaves only 1+v^2).
    """
    if not dfac or len(nfac) != 1:
        return coeff, mono, tuple(nfac), tuple(dfac)
    num = _key_to_poly(vars_, nfac[0])
    dleft = list(dfac)
    changed = False
    progress = True
    while progress:
        progress = False
        for key in list(dict.fromkeys(dleft)):
            q = num.divide_exact(_key_to_poly(vars_, key))
            if q is not None:
                num = q
                dleft.remove(key)
                changed = True
                progress = True
                continue
            halves = _binomial_halves(vars_, key)
            if halves is None:
                continue
            for which, half in enumerate(halves):
                q = num.divide_exact(_key_to_poly(vars_, half))
                if q is not None:
                    num = q
                    dleft.remove(key)
                    dleft.append(halves[1 - which])
                    changed = True
                    progress = True
                    break
    if not changed:
        return coeff, mono, tuple(nfac), tuple(dfac)
    c, e, key = canonical_factor(num)
    coeff *= c
    mono = exp_mul(mono, e)
    if _key_is_monomial(key):
        ke, kc = key[0]
        coeff *= kc
        mono = exp_mul(mono, ke)
        return coeff, mono, (), tuple(dleft)
    return coeff, mono, (key,), tuple(dleft)


# -- linear forms in (chi, xi) with half-integer constants -----------------


class LinearForm:
    """A formal zeta argument s = sum c_i chi_i + sum e_j xi_j + kappa.

    The constant kappa is stored as an integer number of halves so that the
    corresponding monomial q^(-s) stays on the integer exponent grid
    (v = q^(-1/2) carries the halves).
    """

    __slots__ = ("vars", "chi", "xi", "halves")

    def __init__(self, vars_, chi=None, xi=None, halves=0):
        self.vars = vars_
        self.chi = tuple(chi) if chi is not None else (0,) * vars_.n
        self.xi = tuple(xi) if xi is not None else (0,) * vars_.m
        if len(self.chi) != vars_.n or len(self.xi) != vars_.m:
            raise ContextMismatchError("linear form shape does not match context")
        self.halves = int(halves)

    @classmethod
    def chi_term(cls, vars_, i, c=1):
        chi = [0] * vars_.n
        chi[i - 1] = c
        return cls(vars_, chi=chi)

    @classmethod
    def xi_term(cls, vars_, j, c=1):
        xi = [0] * vars_.m
        xi[j - 1] = c
        return cls(vars_, xi=xi)

    @classmethod
    def const(cls, vars_, value):
        value = Fraction(value)
        halves = value * 2
        if halves.denominator != 1:
            raise ValueError("constant must be a half-integer")
        return cls(vars_, halves=halves.numerator)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LinearForm.const(self.vars, other)
        _check_same(self, other)
        return LinearForm(
            self.vars,
            [a + b for a, b in zip(self.chi, other.chi)],
            [a + b for a, b in zip(self.xi, other.xi)],
            self.halves + other.halves,
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LinearForm.const(self.vars, other)
        return self + other.__neg__()

    def __neg__(self):
        return LinearForm(
            self.vars,
            [-a for a in self.chi],
            [-a for a in self.xi],
            -self.halves,
        )

    def __mul__(self, k):
        return LinearForm(
            self.vars,
            [a * k for a in self.chi],
            [a * k for a in self.xi],
            self.halves * k,
        )

    __rmul__ = __mul__

    def is_zero(self):
        return not self.halves and not any(self.chi) and not any(self.xi)

    def __eq__(self, other):
        return (
            isinstance(other, LinearForm)
            and self.vars == other.vars
            and self.chi == other.chi
            and self.xi == other.xi
            and self.halves == other.halves
        )

    def __hash__(self):
        return hash((self.vars, self.chi, self.xi, self.halves))

    def monomial(self):
        """Exponent tuple of q^(-s): v^halves * prod x_i^{c_i} * prod y_j^{e_j}."""
        return (self.halves,) + self.chi + self.xi

    def __repr__(self):
        bits = []
        for i, c in enumerate(self.chi, 1):
            if c:
                bits.append("%+d*chi%d" % (c, i))
        for j, c in enumerate(self.xi, 1):
            if c:
                bits.append("%+d*xi%d" % (c, j))
        if self.halves or not bits:
            bits.append("%+g" % (self.halves / 2.0))
        return "LinearForm(%s)" % " ".join(bits)


def zeta_of(form):
    """The local zeta factor zeta(s) = 1/(1 - q^(-s)) as a RatFun.

    Raises PoleError for s identically zero, where the factor degenerates.
    """
    if form.is_zero():
        raise PoleError("zeta pole at s=0")
    one = Poly.constant(form.vars, 1)
    den = one - Poly.monomial(form.vars, form.monomial())
    return RatFun.from_num_den(one, den)


def zeta_inv_of(form):
    """1/zeta(s) = 1 - q^(-s) as a RatFun."""
    if form.is_zero():
        raise PoleError("zeta pole at s=0")
    one = Poly.constant(form.vars, 1)
    return RatFun.from_poly(one - Poly.monomial(form.vars, form.monomial()))
