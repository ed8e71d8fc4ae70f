"""Group backends with a fixed, deterministic element enumeration.

Every backend fixes a total order on its elements starting at the identity:
residues ascending, integers in zigzag order (0, 1, -1, 2, -2, ...),
free-group words in shortlex order with letter order a < a^-1 < b < b^-1,
tuple-valued groups lexicographically.  Canonical forms are the equality
oracle, so reduction (mod v, free-word cancellation) happens eagerly and
infinite groups are only ever touched through enumeration prefixes.
"""

import itertools
import string

from .errors import DomainError, CapError


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class GroupHandle:
    """Base class; subclasses fix kind, order and the element encoding."""

    kind = None
    order = None        # None means infinite
    abelian = False

    @property
    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def elements(self):
        """Yield elements in enumeration order, identity first."""
        raise NotImplementedError

    def validate(self, a):
        """Raise DomainError if `a` is not a canonical element of this group."""
        raise NotImplementedError

    def canon(self, a):
        """Canonical string form of an element."""
        raise NotImplementedError

    def parse(self, s):
        """Inverse of canon."""
        raise NotImplementedError

    def enumerate(self, count):
        if count < 0:
            raise DomainError("count must be nonnegative")
        if self.order is not None and count > self.order:
            raise CapError(
                f"count {count} exceeds group order {self.order}")
        return list(itertools.islice(self.elements(), count))

    def spec_string(self):
        raise NotImplementedError

    def __repr__(self):
        return f"<group {self.spec_string()}>"

    def __eq__(self, other):
        return (type(self) is type(other)
                and self.spec_string() == other.spec_string())

    def __hash__(self):
        return hash(self.spec_string())


class Cyclic(GroupHandle):
    kind = "cyclic"
    abelian = True

    def __init__(self, v):
        if v < 1:
            raise DomainError("cyclic order must be >= 1")
        self.v = v
        self.order = v

    @property
    def identity(self):
        return 0

    def validate(self, a):
        if not isinstance(a, int) or not 0 <= a < self.v:
            raise DomainError(f"{a!r} is not a residue mod {self.v}")

    def mul(self, a, b):
        self.validate(a)
        self.validate(b)
        return (a + b) % self.v

    def inv(self, a):
        self.validate(a)
        return (-a) % self.v

    def elements(self):
        return iter(range(self.v))

    def canon(self, a):
        return str(a)

    def parse(self, s):
        a = int(s)
        self.validate(a)
        return a

    def spec_string(self):
        return f"cyclic:{self.v}"


class FieldQuotient(Cyclic):
    """F_{q^m}^x / F_q^x with q = p^n: cyclic of order (q^m - 1)/(q - 1).

    Elements are exponents of a primitive-element coset, so the group law
    is addition mod v; the field data is kept for the constructions that
    index projective points by these exponents.
    """

    kind = "field-quotient"

    def __init__(self, p, n, m):
        if not _is_prime(p):
            raise DomainError(f"{p} is not prime")
        if n < 1 or m < 1:
            raise DomainError("degrees must be >= 1")
        q = p ** n
        if q ** m > 2 ** 20:
            raise CapError("field size cap 2^20 exceeded")
        self.p, self.n, self.m = p, n, m
        self.q = q
        super().__init__((q ** m - 1) // (q - 1))

    def spec_string(self):
        return f"fieldquot:p={self.p},n={self.n},m={self.m}"


class Abelian(GroupHandle):
    kind = "abelian"
    abelian = True

    def __init__(self, factors):
        factors = tuple(int(d) for d in factors)
        if not factors or any(d < 1 for d in factors):
            raise DomainError("invariant factors must be positive")
        self.factors = factors
        self.order = 1
        for d in factors:
            self.order *= d

    @property
    def identity(self):
        return (0,) * len(self.factors)

    def validate(self, a):
        if (not isinstance(a, tuple) or len(a) != len(self.factors)
                or any(not 0 <= x < d for x, d in zip(a, self.factors))):
            raise DomainError(f"{a!r} is not an element of {self.spec_string()}")

    def mul(self, a, b):
        self.validate(a)
        self.validate(b)
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def inv(self, a):
        self.validate(a)
        return tuple((-x) % d for x, d in zip(a, self.factors))

    def elements(self):
        return itertools.product(*(range(d) for d in self.factors))

    def canon(self, a):
        return "(" + ",".join(str(x) for x in a) + ")"

    def parse(self, s):
        s = s.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        a = tuple(int(x) for x in s.split(","))
        self.validate(a)
        return a

    def spec_string(self):
        return "abelian:" + ",".join(str(d) for d in self.factors)


class Integers(GroupHandle):
    kind = "integers"
    abelian = True
    order = None

    @property
    def identity(self):
        return 0

    def validate(self, a):
        if not isinstance(a, int):
            raise DomainError(f"{a!r} is not an integer")

    def mul(self, a, b):
        self.validate(a)
        self.validate(b)
        return a + b

    def inv(self, a):
        self.validate(a)
        return -a

    def elements(self):
        yield 0
        k = 1
        while True:
            yield k
            yield -k
            k += 1

    def canon(self, a):
        return str(a)

    def parse(self, s):
        return int(s)

    def spec_string(self):
        return "integers"


class Free(GroupHandle):
    """Free group of finite rank.

    Words are tuples of letter codes: code 2k is generator k, code 2k+1 its
    inverse; a word is reduced iff no adjacent pair of codes differs only in
    the low bit.  Shortlex enumeration uses the code order directly, which
    realizes a < a^-1 < b < b^-1 < ...
    """

    kind = "free"
    order = None

    def __init__(self, rank):
        if rank < 1:
            raise DomainError("free rank must be >= 1")
        if rank > 26:
            raise CapError("free rank capped at 26 (letter names)")
        self.rank = rank

    @property
    def identity(self):
        return ()

    def validate(self, a):
        if not isinstance(a, tuple):
            raise DomainError(f"{a!r} is not a word")
        for c in a:
            if not isinstance(c, int) or not 0 <= c < 2 * self.rank:
                raise DomainError(f"letter code {c!r} out of range")
        for c1, c2 in zip(a, a[1:]):
            if c1 ^ 1 == c2:
                raise DomainError(f"word {a!r} is not reduced")

    def mul(self, a, b):
        self.validate(a)
        self.validate(b)
        a = list(a)
        i = 0
        while a and i < len(b) and a[-1] ^ 1 == b[i]:
            a.pop()
            i += 1
        return tuple(a) + b[i:]

    def inv(self, a):
        self.validate(a)
        return tuple(c ^ 1 for c in reversed(a))

    def elements(self):
        yield ()
        frontier = [()]
        while True:
            nxt = []
            for w in frontier:
                banned = w[-1] ^ 1 if w else None
                for c in range(2 * self.rank):
                    if c == banned:
                        continue
                    nxt.append(w + (c,))
            for w in nxt:
                yield w
            frontier = nxt

    def canon(self, a):
        if not a:
            return "e"
        parts = []
        for c in a:
            name = string.ascii_lowercase[c // 2]
            parts.append(name if c % 2 == 0 else name + "^-1")
        return "*".join(parts)

    def parse(self, s):
        s = s.strip()
        if s == "e":
            return ()
        word = []
        for part in s.split("*"):
            if part.endswith("^-1"):
                name, off = part[:-3], 1
            else:
                name, off = part, 0
            k = string.ascii_lowercase.index(name)
            word.append(2 * k + off)
        w = tuple(word)
        self.validate(w)
        return w

    def spec_string(self):
        return f"free:{self.rank}"


class Symmetric(GroupHandle):
    """Symmetric group on {0, ..., m-1}; permutations as image tuples.

    mul(p, q) applies p first, then q (right-action convention, consistent
    with the point actions used elsewhere).
    """

    kind = "symmetric"

    def __init__(self, m):
        if m < 1:
            raise DomainError("symmetric degree must be >= 1")
        self.m = m
        self.order = 1
        for k in range(2, m + 1):
            self.order *= k

    @property
    def identity(self):
        return tuple(range(self.m))

    def validate(self, a):
        if (not isinstance(a, tuple) or len(a) != self.m
                or sorted(a) != list(range(self.m))):
            raise DomainError(f"{a!r} is not a permutation of degree {self.m}")

    def mul(self, a, b):
        self.validate(a)
        self.validate(b)
        return tuple(b[a[i]] for i in range(self.m))

    def inv(self, a):
        self.validate(a)
        out = [0] * self.m
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    def elements(self):
        return itertools.permutations(range(self.m))

    def canon(self, a):
        return "[" + ",".join(str(x) for x in a) + "]"

    def parse(self, s):
        s = s.strip()
        if s.startswith("[") and s.endswith("]"):
            s = s[1:-1]
        a = tuple(int(x) for x in s.split(","))
        self.validate(a)
        return a

    def spec_string(self):
        return f"symmetric:{self.m}"


class Monomial(GroupHandle):
    """Wreath product C_n wr S_m acting on m fibers of size n.

    Elements are (perm, twists): the permutation moves fiber i to perm[i]
    and a point (i, t) goes to (perm[i], t + twists[i] mod n).  mul(g, h)
    applies g first, then h.
    """

    kind = "monomial"

    def __init__(self, n, m):
        if n < 1 or m < 1:
            raise DomainError("monomial parameters must be >= 1")
        self.n, self.m = n, m
        self.order = n ** m
        for k in range(2, m + 1):
            self.order *= k

    @property
    def identity(self):
        return (tuple(range(self.m)), (0,) * self.m)

    def validate(self, a):
        if not (isinstance(a, tuple) and len(a) == 2):
            raise DomainError(f"{a!r} is not a monomial element")
        perm, tw = a
        if sorted(perm) != list(range(self.m)):
            raise DomainError(f"{perm!r} is not a fiber permutation")
        if len(tw) != self.m or any(not 0 <= t < self.n for t in tw):
            raise DomainError(f"{tw!r} is not a twist vector mod {self.n}")

    def mul(self, a, b):
        self.validate(a)
        self.validate(b)
        (pa, ta), (pb, tb) = a, b
        perm = tuple(pb[pa[i]] for i in range(self.m))
        tw = tuple((ta[i] + tb[pa[i]]) % self.n for i in range(self.m))
        return (perm, tw)

    def inv(self, a):
        self.validate(a)
        perm, tw = a
        ip = [0] * self.m
        for i, x in enumerate(perm):
            ip[x] = i
        itw = tuple((-tw[ip[i]]) % self.n for i in range(self.m))
        return (tuple(ip), itw)

    def act(self, a, point):
        """Image of point = (fiber, twist) under a."""
        perm, tw = a
        i, t = point
        return (perm[i], (t + tw[i]) % self.n)

    def elements(self):
        for perm in itertools.permutations(range(self.m)):
            for tw in itertools.product(range(self.n), repeat=self.m):
                yield (perm, tw)

    def canon(self, a):
        perm, tw = a
        return ("[" + ",".join(map(str, perm)) + "|"
                + ",".join(map(str, tw)) + "]")

    def parse(self, s):
        s = s.strip()
        if s.startswith("[") and s.endswith("]"):
            s = s[1:-1]
        ps, ts = s.split("|")
        a = (tuple(int(x) for x in ps.split(",")),
             tuple(int(x) for x in ts.split(",")))
        self.validate(a)
        return a

    def spec_string(self):
        return f"monomial:{self.n},{self.m}"


def parse_group(spec):
    """Parse a group spec string: kind ':' comma-separated parameters."""
    spec = spec.strip()
    if spec == "integers":
        return Integers()
    if ":" not in spec:
        raise DomainError(f"bad group spec {spec!r}")
    kind, _, params = spec.partition(":")
    try:
        if kind == "cyclic":
            return Cyclic(int(params))
        if kind == "abelian":
            return Abelian(int(x) for x in params.split(","))
        if kind == "free":
            return Free(int(params))
        if kind == "symmetric":
            return Symmetric(int(params))
        if kind == "monomial":
            n, m = (int(x) for x in params.split(","))
            return Monomial(n, m)
        if kind == "fieldquot":
            kv = dict(item.split("=") for item in params.split(","))
            return FieldQuotient(int(kv["p"]), int(kv["n"]), int(kv["m"]))
    except DomainError:
        raise
    except Exception as exc:
        raise DomainError(f"bad group spec {spec!r}: {exc}") from exc
    raise DomainError(f"unknown group kind {kind!r}")


def has_involution(G, bound=None):
    """Scan the first `bound` elements for h != e with h^2 = e.

    Returns (found, witness).  Exhaustive when bound covers a finite group;
    for infinite groups the result is a bounded statement only.
    """
    if bound is None:
        if G.order is None:
            raise DomainError("bound required for infinite groups")
        bound = G.order
    e = G.identity
    for h in G.enumerate(min(bound, G.order) if G.order else bound):
        if h != e and G.mul(h, h) == e:
            return True, h
    return False, None


def square_roots(G, h, bound=None):
    """All x among the first `bound` enumerated elements with x^2 = h."""
    G.validate(h)
    if bound is None:
        if G.order is None:
            raise DomainError("bound required for infinite groups")
        bound = G.order
    count = min(bound, G.order) if G.order else bound
    return [x for x in G.enumerate(count) if G.mul(x, x) == h]


def conjugacy_sample(G, h, bound=None):
    """{ g^-1 h g : g among the first `bound` elements } as a set.

    A lower-bound witness for the conjugacy class size."""
    G.validate(h)
    if bound is None:
        if G.order is None:
            raise DomainError("bound required for infinite groups")
        bound = G.order
    count = min(bound, G.order) if G.order else bound
    return {G.mul(G.mul(G.inv(g), h), g) for g in G.enumerate(count)}
