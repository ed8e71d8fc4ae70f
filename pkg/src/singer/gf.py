"""Exact arithmetic in GF(p^n) at desk scale, plus polynomial root finding.

Field elements are encoded as integers in [0, p^n): the coefficient vector
(c_0, ..., c_{n-1}) of the residue class mod the field's modulus becomes
sum c_i p^i.  That encoding is the enumeration order.  The modulus is the
lexicographically least monic irreducible of its degree, coefficients
compared low-to-high, so fields are reproducible without external tables.

Root finding is an exhaustive scan (the size cap is 2^20); over the
rationals only the rational root theorem is used.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, CapError

SIZE_CAP = 2 ** 20


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q):
    """Return (p, k) with q = p^k, or raise DomainError."""
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise DomainError(f"{q} is not a prime power")
            return p, k
        p += 1
    return q, 1


# ---------------------------------------------------------------------------
# polynomials over GF(p): coefficient tuples, low-to-high, no trailing zeros

def poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(out)


def poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        f = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        a.pop()
    return poly_trim(a)


def _poly_divides(d, a, p):
    return poly_mod(a, d, p) == ()


def poly_is_irreducible(f, p):
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    f = poly_trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    if f[0] == 0 and n > 1:
        return False
    for deg in range(1, n // 2 + 1):
        for code in range(p ** deg):
            cs = []
            c = code
            for _ in range(deg):
                cs.append(c % p)
                c //= p
            cand = tuple(cs) + (1,)
            if _poly_divides(cand, f, p):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p, n):
    """Lexicographically least monic irreducible of degree n over GF(p).

    Low-degree coefficients are compared first."""
    if n == 1:
        return (0, 1)
    for lows in _lex_tuples(p, n):
        f = lows + (1,)
        if poly_is_irreducible(f, p):
            return f
    raise DomainError(f"no irreducible of degree {n} over GF({p})")  # unreachable


def _lex_tuples(p, n):
    # lexicographic with the first coordinate most significant
    import itertools
    for t in itertools.product(range(p), repeat=n):
        yield t


class GF:
    """GF(p^n) with integer-coded elements."""

    def __init__(self, p, n=1, modulus=None):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if n < 1:
            raise DomainError("degree must be >= 1")
        if p ** n > SIZE_CAP:
            raise CapError(f"field size {p}^{n} exceeds cap 2^20")
        self.p, self.n = p, n
        self.q = p ** n
        self.modulus = least_irreducible(p, n) if modulus is None else poly_trim(modulus)
        if len(self.modulus) - 1 != n or self.modulus[-1] != 1:
            raise DomainError("modulus must be monic of the extension degree")
        if not poly_is_irreducible(self.modulus, p):
            raise DomainError("modulus is not irreducible")

    # -- encoding -----------------------------------------------------------
    def to_coeffs(self, a):
        cs = []
        for _ in range(self.n):
            cs.append(a % self.p)
            a //= self.p
        return tuple(cs)

    def from_coeffs(self, cs):
        a = 0
        for c in reversed(list(cs)[: self.n]):
            a = a * self.p + (c % self.p)
        return a

    def validate(self, a):
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise DomainError(f"{a!r} is not an element of GF({self.p}^{self.n})")

    def elements(self):
        return range(self.q)

    # -- arithmetic ----------------------------------------------------------
    def add(self, a, b):
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.n):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a):
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.n):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.n == 1:
            return (a * b) % self.p
        c = poly_mul(self.to_coeffs(a), self.to_coeffs(b), self.p)
        return self.from_coeffs(poly_mod(c, self.modulus, self.p) + (0,) * self.n)

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise DomainError("inversion of zero")
            return 0 if e else 1
        e %= self.q - 1
        out, base = 1, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a):
        if a == 0:
            raise DomainError("inversion of zero")
        return self.pow(a, self.q - 2)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def mult_order(self, a):
        if a == 0:
            raise DomainError("order of zero undefined")
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    def primitive_element(self):
        """Least element (enumeration order) of multiplicative order q-1."""
        if self.q == 2:
            return 1
        for a in range(1, self.q):
            if self.mult_order(a) == self.q - 1:
                return a
        raise DomainError("no primitive element found")  # unreachable

    # -- polynomial evaluation / roots ---------------------------------------
    def eval_poly(self, coeffs, x):
        """Evaluate a polynomial with integer-coded coefficients at x."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def spec_string(self):
        return f"gf:p={self.p},n={self.n}"

    def __repr__(self):
        return f"<GF({self.p}^{self.n})>"

    def __eq__(self, other):
        return (isinstance(other, GF) and self.p == other.p
                and self.n == other.n and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))


def make_field(p, n):
    return GF(p, n)


def field_for_order(q):
    p, k = factor_prime_power(q)
    return GF(p, k)


def roots_in_field(coeffs, F):
    """All roots in F of the polynomial with integer-coded coefficients.

    Exhaustive scan; every root is re-verified by evaluation."""
    coeffs = tuple(coeffs)
    if not any(coeffs):
        raise DomainError("zero polynomial")
    if len(poly_trim_codes(coeffs)) - 1 < 1:
        raise DomainError("degree must be >= 1")
    return [a for a in F.elements() if F.eval_poly(coeffs, a) == 0]


def poly_trim_codes(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def rational_roots(coeffs):
    """Roots in Q of a polynomial with Fraction/int coefficients.

    Rational root theorem on the cleared-denominator form; exact arithmetic."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise DomainError("zero polynomial")
    if len(coeffs) - 1 < 1:
        raise DomainError("degree must be >= 1")
    from math import lcm
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)
        # x = 0 is a root of the original iff constant term was 0
    a0 = ints[0]
    an = ints[-1]
    roots = set()
    if coeffs[0] == 0:
        roots.add(Fraction(0))

    def divisors(k):
        k = abs(k)
        out = []
        d = 1
        while d * d <= k:
            if k % d == 0:
                out.append(d)
                out.append(k // d)
            d += 1
        return out

    for r in divisors(a0):
        for s in divisors(an):
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if sum(c * cand ** i for i, c in enumerate(coeffs)) == 0:
                    roots.add(cand)
    return sorted(roots)


def singer_divisibility(p, i, j):
    """Whether p^{2i} + p^i + 1 divides p^{2j} + p^j + 1 (requires i | j)."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if i < 1 or j < 1:
        raise DomainError("exponents must be >= 1")
    if j % i != 0:
        raise DomainError(f"{i} does not divide {j}")
    a = p ** (2 * i) + p ** i + 1
    b = p ** (2 * j) + p ** j + 1
    return b % a == 0


def subfield_embedding(Fs, Fb):
    """Embedding GF(p^i) -> GF(p^j) for i | j, as an element map (dict).

    Sends the small field's generator class to the least root (enumeration
    order) of the small modulus in the big field; extends multiplicatively
    and additively via the coefficient representation."""
    if Fs.p != Fb.p:
        raise DomainError("characteristics differ")
    if Fb.n % Fs.n != 0:
        raise DomainError(f"{Fs.n} does not divide {Fb.n}")
    codes = tuple(c for c in Fs.modulus)
    root = None
    for a in Fb.elements():
        # modulus coefficients are prime-field scalars, valid in both fields
        if Fb.eval_poly(codes, a) == 0:
            root = a
            break
    if root is None:
        raise DomainError("no root of subfield modulus found")  # unreachable
    emb = {}
    for a in Fs.elements():
        cs = Fs.to_coeffs(a)
        acc = 0
        for c in reversed(cs):
            acc = Fb.add(Fb.mul(acc, root), c)
        emb[a] = acc
    return emb
