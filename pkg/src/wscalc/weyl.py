"""Hyperoctahedral Weyl groups W(C_k): signed permutations and antisymmetrizers.

An element w = (image, flips) sends the i-th coordinate to the image(i)-th,
with a sign flip where flips[image(i)] = -1.  Substituting w into variables
replaces x_j by x_{image^-1(j)}^{flips[j]}; the induced map on exponent
tuples is ``act_on_exponents``.  The sign character is the determinant of
the reflection representation: parity of the permutation times (-1)^#flips.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .ratfun import Poly

__all__ = [
    "SignedPerm",
    "enumerate_group",
    "simple_reflections",
    "antisymmetrize",
    "alternating_monomial_sum",
    "is_regular",
]

ENUMERATION_GUARD = 6


class SignedPerm:
    """A signed permutation of {1..k}; image and flips are 1-indexed tuples."""

    __slots__ = ("image", "flips")

    def __init__(self, image, flips):
        image = tuple(image)
        flips = tuple(flips)
        k = len(image)
        if sorted(image) != list(range(1, k + 1)):
            raise ValueError("image is not a permutation of 1..k")
        if len(flips) != k or any(f not in (1, -1) for f in flips):
            raise ValueError("flips must be a +-1 vector of length k")
        self.image = image
        self.flips = flips

    @classmethod
    def identity(cls, k):
        return cls(tuple(range(1, k + 1)), (1,) * k)

    @classmethod
    def longest(cls, k):
        """w_0: all sign flips, identity permutation (sends x to x^-1)."""
        return cls(tuple(range(1, k + 1)), (-1,) * k)

    @property
    def k(self):
        return len(self.image)

    def __eq__(self, other):
        return (
            isinstance(other, SignedPerm)
            and self.image == other.image
            and self.flips == other.flips
        )

    def __hash__(self):
        return hash((self.image, self.flips))

    def __repr__(self):
        return "SignedPerm(image=%r, flips=%r)" % (self.image, self.flips)

    def __mul__(self, other):
        """Composition self*other: apply other first, then self."""
        if self.k != other.k:
            raise ValueError("rank mismatch")
        image = tuple(self.image[other.image[i] - 1] for i in range(self.k))
        inv_self = self.inverse_image()
        flips = tuple(
            self.flips[j - 1] * other.flips[inv_self[j - 1] - 1]
            for j in range(1, self.k + 1)
        )
        return SignedPerm(image, flips)

    def inverse_image(self):
        inv = [0] * self.k
        for i, j in enumerate(self.image, 1):
            inv[j - 1] = i
        return tuple(inv)

    def inverse(self):
        inv = self.inverse_image()
        # the inverse's flip at target i is the original flip at image(i)
        flips = tuple(self.flips[self.image[i] - 1] for i in range(self.k))
        return SignedPerm(inv, flips)

    def sgn(self):
        """Determinant character: permutation parity times (-1)^#flips."""
        sign = 1
        seen = [False] * self.k
        for i in range(self.k):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.image[j] - 1
                length += 1
            if length % 2 == 0:
                sign = -sign
        for f in self.flips:
            if f == -1:
                sign = -sign
        return sign

    # -- actions -------------------------------------------------------

    def act_on_point(self, values):
        """Transform a k-tuple of values: (w.x)_j = x_{image^-1(j)}^{flips_j}."""
        if len(values) != self.k:
            raise ValueError("length mismatch")
        inv = self.inverse_image()
        out = []
        for j in range(1, self.k + 1):
            val = values[inv[j - 1] - 1]
            out.append(val if self.flips[j - 1] == 1 else 1 / val)
        return tuple(out)

    def act_on_exponents(self, mu):
        """Exponent remap of the substitution: x^mu -> x^(w*mu).

        (w*mu)_i = flips[image(i)] * mu[image(i)], so that substituting
        ``act_on_point`` into the monomial x^mu yields x^(w*mu).
        """
        if len(mu) != self.k:
            raise ValueError("length mismatch")
        return tuple(
            self.flips[self.image[i] - 1] * mu[self.image[i] - 1]
            for i in range(self.k)
        )

    def embed_remap(self, size, offset):
        """Exponent remap on a larger lattice, acting on slots offset..offset+k-1."""
        image = self.image
        flips = self.flips
        k = self.k

        def remap(exp):
            out = list(exp)
            for i in range(k):
                j = image[i] - 1
                out[offset + i] = flips[j] * exp[offset + j]
            return tuple(out)

        return remap


@lru_cache(maxsize=None)
def enumerate_group(k, guard=ENUMERATION_GUARD):
    """All 2^k k! elements of W(C_k), in deterministic order.

    Images run in lexicographic order; within each image the flip vectors
    run in binary counting order (+1 before -1 per coordinate).
    """
    if k > guard:
        raise ValueError(
            "W(C_%d) has %d elements; exact enumeration is guarded at k=%d "
            "(use the numeric mode for larger ranks)" % (k, _order(k), guard)
        )
    out = []
    for image in permutations(range(1, k + 1)):
        for bits in product((1, -1), repeat=k):
            out.append(SignedPerm(image, bits))
    return tuple(out)


def _order(k):
    n = 1
    for i in range(1, k + 1):
        n *= 2 * i
    return n


def simple_reflections(k):
    """The simple reflections of C_k: s_i swaps i,i+1; s_k flips the last sign."""
    out = []
    for i in range(1, k):
        image = list(range(1, k + 1))
        image[i - 1], image[i] = image[i], image[i - 1]
        out.append(SignedPerm(image, (1,) * k))
    flips = [1] * k
    flips[k - 1] = -1
    out.append(SignedPerm(tuple(range(1, k + 1)), tuple(flips)))
    return out


def is_regular(mu):
    """An exponent pattern is regular iff its |entries| are distinct and nonzero."""
    seen = set()
    for e in mu:
        if e == 0 or abs(e) in seen:
            return False
        seen.add(abs(e))
    return True


def antisymmetrize(fn, k, guard=ENUMERATION_GUARD):
    """Signed sum over W(C_k): sum_w sgn(w) * fn(w).

    ``fn`` receives each group element and returns a value supporting + and
    scalar * (typically a RatFun built from the transformed variables).
    Reduction follows the enumeration order, so results are reproducible.
    """
    total = None
    for w in enumerate_group(k, guard=guard):
        term = fn(w) * w.sgn()
        total = term if total is None else total + term
    return total


def alternating_monomial_sum(vars_, mu, offset, k, guard=ENUMERATION_GUARD):
    """The alternant sum_w sgn(w) X^(w*mu) as a Poly, acting on slots
    offset..offset+k-1 of the exponent lattice; other slots of ``mu`` pass
    through unchanged.  Non-regular patterns collapse to 0.
    """
    acc = {}
    for w in enumerate_group(k, guard=guard):
        e = w.embed_remap(vars_.size, offset)(tuple(mu))
        s = acc.get(e, 0) + w.sgn()
        if s:
            acc[e] = s
        else:
            del acc[e]
    return Poly(vars_, {e: Fraction(c) for e, c in acc.items()}, prune=False)
