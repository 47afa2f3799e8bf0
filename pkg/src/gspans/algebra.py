"""Exact arithmetic: finite abelian groups, the group ring QG, cyclotomic fields.

Conventions.  A finite abelian group Z_{n1} x ... x Z_{nk} is written
additively; its elements are exponent tuples (e1,...,ek) with 0 <= ei < ni.
Group-ring coefficients are fractions.Fraction, never floats.  Character
values live in the exact field Q(zeta_m), represented as polynomial residues
mod the m-th cyclotomic polynomial; a decimal rendering exists for display
only.  The isomorphism with the multiplicative picture (roots of unity) is
g = (e1,...,ek)  <->  zeta^(sum ei*gi*(m/ni)) under a character with
exponents (g1,...,gk).
"""

import itertools
import math
from fractions import Fraction
from functools import lru_cache


class GroupMismatchError(ValueError):
    """Operands live over different groups."""


class NotASubgroupError(ValueError):
    """A subset that was required to be a subgroup is not one."""


# ---------------------------------------------------------------------------
# finite abelian groups


class AbelianGroup:
    """Z_{n1} x ... x Z_{nk}; elements are exponent tuples, added mod n_i.

    Enumeration order is lexicographic on tuples.  The empty list of orders
    gives the trivial group.
    """

    def __init__(self, orders):
        orders = tuple(int(n) for n in orders)
        for n in orders:
            if n < 1:
                raise ValueError("cyclic order must be >= 1, got %r" % (n,))
        self.orders = orders
        self.order = math.prod(orders)
        self.identity = (0,) * len(orders)

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.orders == other.orders

    def __hash__(self):
        return hash(self.orders)

    def __repr__(self):
        return "AbelianGroup(%r)" % (list(self.orders),)

    def check(self, g):
        if len(g) != len(self.orders) or any(
            not (0 <= gi < ni) for gi, ni in zip(g, self.orders)
        ):
            raise ValueError("%r is not an element of %r" % (g, self))
        return tuple(g)

    def add(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    # aliases so an AbelianGroup can act as the group of an action groupoid
    def op(self, a, b):
        return self.add(a, b)

    def inv(self, a):
        return self.neg(a)

    def elements(self):
        return [tuple(t) for t in itertools.product(*[range(n) for n in self.orders])]

    def generators(self):
        gens = []
        for i, n in enumerate(self.orders):
            if n > 1:
                gens.append(tuple(1 if j == i else 0 for j in range(len(self.orders))))
        return gens

    def element_order(self, g):
        k = 1
        x = g
        while x != self.identity:
            x = self.add(x, g)
            k += 1
        return k

    def is_subgroup(self, subset):
        subset = set(subset)
        if self.identity not in subset:
            return False
        for a in subset:
            if self.neg(a) not in subset:
                return False
            for b in subset:
                if self.add(a, b) not in subset:
                    return False
        return True

    def subgroup_closure(self, gens):
        seen = {self.identity}
        frontier = [self.identity]
        gens = [tuple(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def all_subgroups(self):
        """All subgroups, found as closures of generating sets of size <= k."""
        els = self.elements()
        found = {self.subgroup_closure([])}
        # every subgroup of a product of k cyclic groups needs <= k generators
        k = max(1, len(self.orders))
        for r in range(1, k + 1):
            for gens in itertools.combinations(els, r):
                found.add(self.subgroup_closure(gens))
        return sorted(found, key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------------------
# the group ring QG


class GroupRingElement:
    """Finitely supported Fraction-valued function on an AbelianGroup.

    Zero coefficients are never stored, so == is structural equality.
    Multiplication is the convolution product (commutative here).
    """

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=()):
        self.group = group
        clean = {}
        for g, c in dict(terms).items():
            c = Fraction(c)
            if c != 0:
                clean[group.check(g)] = c
        self.terms = clean

    @classmethod
    def zero(cls, group):
        return cls(group, {})

    @classmethod
    def basis(cls, group, g, coeff=1):
        return cls(group, {tuple(g): Fraction(coeff)})

    @classmethod
    def one(cls, group):
        return cls.basis(group, group.identity)

    def coefficient(self, g):
        return self.terms.get(tuple(g), Fraction(0))

    def support(self):
        return sorted(self.terms)

    def is_zero(self):
        return not self.terms

    def _require_same_group(self, other):
        if self.group != other.group:
            raise GroupMismatchError(
                "group mismatch: %r vs %r" % (self.group, other.group)
            )

    def __add__(self, other):
        self._require_same_group(other)
        terms = dict(self.terms)
        for g, c in other.terms.items():
            terms[g] = terms.get(g, Fraction(0)) + c
        return GroupRingElement(self.group, terms)

    def __neg__(self):
        return GroupRingElement(self.group, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        self._require_same_group(other)
        add = self.group.add
        terms = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in other.terms.items():
                g = add(g1, g2)
                terms[g] = terms.get(g, Fraction(0)) + c1 * c2
        return GroupRingElement(self.group, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def scaled(self, c):
        c = Fraction(c)
        return GroupRingElement(self.group, {g: c * x for g, x in self.terms.items()})

    def augmentation(self):
        """Sum of coefficients (the image under the trivial character)."""
        return sum(self.terms.values(), Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElement)
            and self.group == other.group
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.group, frozenset(self.terms.items())))

    def render(self):
        """Canonical text form: lexicographic terms "<num>[/<den>]*g(e1,...,ek)"."""
        if not self.terms:
            return "0"
        parts = []
        for g in sorted(self.terms):
            c = self.terms[g]
            num = str(c.numerator) if c.denominator == 1 else "%d/%d" % (
                c.numerator,
                c.denominator,
            )
            parts.append("%s*g(%s)" % (num, ",".join(str(e) for e in g)))
        return " + ".join(parts)

    def __repr__(self):
        return "<QG %s>" % self.render()


def average_idempotent(group, subgroup_elements):
    """(1/|U|) sum of the elements of a subgroup U; an idempotent of QG."""
    subset = {group.check(g) for g in subgroup_elements}
    if not group.is_subgroup(subset):
        raise NotASubgroupError("%r is not a subgroup of %r" % (sorted(subset), group))
    c = Fraction(1, len(subset))
    return GroupRingElement(group, {g: c for g in subset})


# ---------------------------------------------------------------------------
# cyclotomic polynomials and Q(zeta_m)
#
# Polynomials are tuples of coefficients, index = degree.


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(num, den):
    """Exact-arithmetic long division; den need not be monic."""
    num = list(num)
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    lead = Fraction(den[-1])
    while len(num) >= len(den) and _poly_trim(num):
        num = list(_poly_trim(num))
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        coef = Fraction(num[-1]) / lead
        q[shift] = coef
        for i, d in enumerate(den):
            num[shift + i] -= coef * d
    return _poly_trim(q), _poly_trim(num)


def divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def euler_phi(m):
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Phi_m as an integer coefficient tuple, by exact division of x^m - 1."""
    if m < 1:
        raise ValueError("conductor must be >= 1")
    num = tuple([-1] + [0] * (m - 1) + [1])  # x^m - 1
    for d in divisors(m):
        if d < m:
            q, r = _poly_divmod(num, cyclotomic_polynomial(d))
            assert r == (), "cyclotomic division must be exact"
            num = q
    out = tuple(int(c) for c in num)
    assert all(Fraction(c).denominator == 1 for c in num)
    return out


class CyclotomicNumber:
    """Element of Q(zeta_m): a Fraction polynomial of degree < phi(m) mod Phi_m.

    Equality is exact polynomial equality; z^m reduces to 1.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor, coeffs=()):
        self.conductor = int(conductor)
        modulus = cyclotomic_polynomial(self.conductor)
        c = [Fraction(x) for x in coeffs]
        if len(c) >= len(modulus):
            _, c = _poly_divmod(c, modulus)
            c = list(c)
        c = c + [Fraction(0)] * (len(modulus) - 1 - len(c))
        self.coeffs = tuple(c[: len(modulus) - 1])

    @classmethod
    def zero(cls, conductor):
        return cls(conductor, ())

    @classmethod
    def one(cls, conductor):
        return cls(conductor, (1,))

    @classmethod
    def from_rational(cls, conductor, q):
        return cls(conductor, (Fraction(q),))

    @classmethod
    def zeta_power(cls, conductor, e):
        e = e % conductor
        return cls(conductor, (0,) * e + (1,))

    def _require_same_field(self, other):
        if self.conductor != other.conductor:
            raise ValueError(
                "conductor mismatch: %d vs %d" % (self.conductor, other.conductor)
            )

    def __add__(self, other):
        self._require_same_field(other)
        return CyclotomicNumber(
            self.conductor, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        return CyclotomicNumber(self.conductor, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return CyclotomicNumber(self.conductor, [c * a for a in self.coeffs])
        self._require_same_field(other)
        return CyclotomicNumber(self.conductor, _poly_mul(self.coeffs, other.coeffs))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, CyclotomicNumber)
            and self.conductor == other.conductor
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    def approx(self):
        """Floating complex value; display only, never used in comparisons."""
        z = complex(math.cos(2 * math.pi / self.conductor),
                    math.sin(2 * math.pi / self.conductor))
        out = 0j
        for c in reversed(self.coeffs):
            out = out * z + complex(c)
        return out

    def render(self):
        """Polynomial in z plus a 12-digit decimal hint."""
        parts = []
        for deg, c in enumerate(self.coeffs):
            if c == 0:
                continue
            num = str(c.numerator) if c.denominator == 1 else "%d/%d" % (
                c.numerator,
                c.denominator,
            )
            parts.append(num if deg == 0 else "%s*z^%d" % (num, deg))
        poly = " + ".join(parts) if parts else "0"
        v = self.approx()
        return "%s (%.12f%+.12fi)" % (poly, v.real, v.imag)

    def __repr__(self):
        return "<Q(zeta_%d) %s>" % (self.conductor, self.render())


class Character:
    """Character of an abelian group: rho(g) = zeta_m^(sum e_i g_i (m/n_i)).

    m = lcm of the cyclic orders, so every character of G arises from some
    exponent tuple.  rho extends Q-linearly to GroupRingElements.
    """

    def __init__(self, group, exponents):
        if len(exponents) != len(group.orders):
            raise ValueError("need one exponent per cyclic factor")
        self.group = group
        self.exponents = tuple(
            e % n for e, n in zip(exponents, group.orders)
        )
        self.conductor = math.lcm(*group.orders) if group.orders else 1

    @classmethod
    def trivial(cls, group):
        return cls(group, (0,) * len(group.orders))

    def exponent_of(self, g):
        m = self.conductor
        g = self.group.check(g)
        return sum(
            e * gi * (m // n) for e, gi, n in zip(self.exponents, g, self.group.orders)
        ) % m

    def value(self, g):
        return CyclotomicNumber.zeta_power(self.conductor, self.exponent_of(g))

    def apply(self, x):
        if x.group != self.group:
            raise GroupMismatchError("character and element over different groups")
        out = CyclotomicNumber.zero(self.conductor)
        for g, c in x.terms.items():
            out = out + self.value(g) * c
        return out

    def is_injective(self):
        seen = set()
        for g in self.group.elements():
            e = self.exponent_of(g)
            if e in seen:
                return False
            seen.add(e)
        return True

    def __repr__(self):
        return "Character(%r, %r)" % (self.group, list(self.exponents))
