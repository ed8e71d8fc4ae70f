"""Finite hyperfield algebra: axiom checks, the two-element hyperfield with
1+1 = {0,1}, group algebras over it, unit-orbit quotients of finite rings,
and the correspondence with projective point-line geometries.

Hyperaddition tables are stored as bitmask-valued matrices so the cubic
axiom scans run on the kernel backend.  Carriers are capped at 256."""

import itertools
from dataclasses import dataclass, field

from .errors import DomainError, CapError
from . import gf
from ._backend import assoc_witness, distrib_witness
from .geometry import IncidenceStructure

CARRIER_CAP = 256


class HyperTable:
    """Finite carrier with set-valued addition and single-valued product.

    hyperadd[x][y] is a bitmask over carrier indices; mul[x][y] an index.
    Index 0 is the additive neutral by convention of the constructors here,
    but check_axioms does not assume it."""

    def __init__(self, labels, zero, one, mul, hyperadd):
        n = len(labels)
        if n > CARRIER_CAP:
            raise CapError(f"carrier cap {CARRIER_CAP} exceeded")
        if not (0 <= zero < n and 0 <= one < n):
            raise DomainError("zero/one out of range")
        self.labels = list(labels)
        self.n = n
        self.zero = zero
        self.one = one
        self.mul = [list(row) for row in mul]
        self.hyperadd = [list(row) for row in hyperadd]
        full = (1 << n) - 1
        for row in self.hyperadd:
            for m in row:
                if m == 0 or m & ~full:
                    raise DomainError("hyperaddition values must be nonempty "
                                      "subsets of the carrier")

    def add_set(self, x, y):
        m = self.hyperadd[x][y]
        out = []
        while m:
            out.append((m & -m).bit_length() - 1)
            m &= m - 1
        return out

    def to_json(self):
        return {
            "carrier": self.labels,
            "zero": self.zero,
            "one": self.one,
            "mul": self.mul,
            "hyperadd": [[self.add_set(x, y) for y in range(self.n)]
                         for x in range(self.n)],
        }

    @staticmethod
    def from_json(obj):
        n = len(obj["carrier"])
        hyperadd = [[sum(1 << k for k in cell) for cell in row]
                    for row in obj["hyperadd"]]
        return HyperTable(obj["carrier"], obj["zero"], obj["one"],
                          obj["mul"], hyperadd)

    def __repr__(self):
        return f"<hypertable n={self.n}>"


@dataclass
class AxiomReport:
    results: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    AXIOMS = (
        "commutativity",
        "associativity",
        "neutral-zero",
        "unique-negative",
        "reversibility",
        "distributivity",
        "monoid-multiplication",
        "zero-one-distinct",
        "multiplicative-group",
    )

    def passed(self):
        return all(self.results.get(a, False) for a in self.AXIOMS)

    def to_json(self):
        return {"axioms": self.results,
                "witnesses": {k: list(v) for k, v in self.witnesses.items()},
                "hyperfield": self.passed()}


def check_axioms(T):
    """Exhaustive verification of the hyperfield axioms over all triples."""
    n, z, o = T.n, T.zero, T.one
    rep = AxiomReport()

    def fail(name, witness):
        rep.results[name] = False
        rep.witnesses[name] = witness

    # commutativity of hyperaddition
    rep.results["commutativity"] = True
    for x in range(n):
        for y in range(x + 1, n):
            if T.hyperadd[x][y] != T.hyperadd[y][x]:
                fail("commutativity", (x, y))
                break
        if not rep.results["commutativity"]:
            break

    w = assoc_witness(n, T.hyperadd)
    rep.results["associativity"] = w is None
    if w is not None:
        rep.witnesses["associativity"] = w

    rep.results["neutral-zero"] = all(
        T.hyperadd[x][z] == 1 << x for x in range(n))
    if not rep.results["neutral-zero"]:
        rep.witnesses["neutral-zero"] = tuple(
            x for x in range(n) if T.hyperadd[x][z] != 1 << x)[:1]

    rep.results["unique-negative"] = True
    for x in range(n):
        negs = [y for y in range(n) if T.hyperadd[x][y] >> z & 1]
        if len(negs) != 1:
            fail("unique-negative", (x, tuple(negs)))
            break

    # reversibility: x in y + z  =>  z in x + (-y)
    rep.results["reversibility"] = True
    neg = [None] * n
    for x in range(n):
        negs = [y for y in range(n) if T.hyperadd[x][y] >> z & 1]
        neg[x] = negs[0] if negs else None
    for y in range(n):
        if neg[y] is None:
            continue
        for zz in range(n):
            m = T.hyperadd[y][zz]
            while m:
                x = (m & -m).bit_length() - 1
                if not T.hyperadd[x][neg[y]] >> zz & 1:
                    fail("reversibility", (x, y, zz))
                    m = 0
                    break
                m &= m - 1
            if not rep.results["reversibility"]:
                break
        if not rep.results["reversibility"]:
            break

    w = distrib_witness(n, T.hyperadd, T.mul)
    rep.results["distributivity"] = w is None
    if w is not None:
        rep.witnesses["distributivity"] = w
    # absorbing zero is part of the multiplication contract
    if rep.results["distributivity"]:
        bad = [u for u in range(n)
               if T.mul[u][z] != z or T.mul[z][u] != z]
        if bad:
            fail("distributivity", (bad[0], z, z))

    rep.results["monoid-multiplication"] = True
    for x in range(n):
        if T.mul[x][o] != x or T.mul[o][x] != x:
            fail("monoid-multiplication", (x,))
            break
    if rep.results["monoid-multiplication"]:
        for x in range(n):
            for y in range(n):
                for zz in range(n):
                    if T.mul[T.mul[x][y]][zz] != T.mul[x][T.mul[y][zz]]:
                        fail("monoid-multiplication", (x, y, zz))
                        break
                else:
                    continue
                break
            else:
                continue
            break

    rep.results["zero-one-distinct"] = z != o

    rep.results["multiplicative-group"] = True
    nonzero = [x for x in range(n) if x != z]
    for x in nonzero:
        row = [T.mul[x][y] for y in nonzero]
        if z in row or sorted(row) != nonzero:
            fail("multiplicative-group", (x,))
            break
    return rep


def krasner():
    """The two-element hyperfield: 1 + 1 = {0, 1}."""
    labels = ["0", "1"]
    mul = [[0, 0], [0, 1]]
    hyperadd = [[0b01, 0b10], [0b10, 0b11]]
    return HyperTable(labels, 0, 1, mul, hyperadd)


def k_algebra(G):
    """Group algebra over the two-element hyperfield, |G| >= 3.

    Carrier is {0} + G; hyperaddition is the single-line table
    x + y = carrier minus {0, x, y} for distinct nonzero x, y and
    x + x = {0, x}."""
    if not G.abelian:
        raise DomainError("group must be abelian")
    if G.order is None or G.order < 3:
        raise DomainError("need |G| >= 3 (smaller carriers force an empty "
                          "hypersum)")
    els = list(G.elements())
    n = G.order + 1
    if n > CARRIER_CAP:
        raise CapError("carrier cap exceeded")
    index = {e: i + 1 for i, e in enumerate(els)}
    labels = ["0"] + [G.canon(e) for e in els]
    mul = [[0] * n for _ in range(n)]
    for a in els:
        ia = index[a]
        for b in els:
            mul[ia][index[b]] = index[G.mul(a, b)]
    full = (1 << n) - 1
    hyperadd = [[0] * n for _ in range(n)]
    for x in range(n):
        hyperadd[x][0] = 1 << x
        hyperadd[0][x] = 1 << x
    for x in range(1, n):
        for y in range(1, n):
            if x == y:
                hyperadd[x][y] = 0b1 | 1 << x
            else:
                hyperadd[x][y] = full & ~(0b1 | 1 << x | 1 << y)
    return HyperTable(labels, 0, 1, mul, hyperadd)


@dataclass(frozen=True)
class QuotientSpec:
    """Finite ring (GF(p^n) or Z/mZ) with a unit subgroup given by
    generators (ring element codes)."""
    ring: object           # gf.GF or ("zmod", m)
    generators: tuple

    def ring_elements(self):
        if isinstance(self.ring, gf.GF):
            return range(self.ring.q)
        return range(self.ring[1])

    def ring_mul(self, a, b):
        if isinstance(self.ring, gf.GF):
            return self.ring.mul(a, b)
        return (a * b) % self.ring[1]

    def ring_add(self, a, b):
        if isinstance(self.ring, gf.GF):
            return self.ring.add(a, b)
        return (a + b) % self.ring[1]

    def unit_group(self):
        """Closure of the generators under multiplication; checks they are
        units."""
        m = self.ring[1] if not isinstance(self.ring, gf.GF) else None
        group = {1}
        frontier = [1]
        gens = tuple(self.generators)
        for g in gens:
            if isinstance(self.ring, gf.GF):
                if g == 0:
                    raise DomainError("0 is not a unit")
            else:
                from math import gcd
                if gcd(g, m) != 1:
                    raise DomainError(f"{g} is not a unit mod {m}")
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.ring_mul(x, g)
                if y not in group:
                    group.add(y)
                    frontier.append(y)
        return sorted(group)


def quotient_hyperring(Q):
    """Unit-orbit quotient of a finite ring: carrier = G-orbits, with
    xG + yG = {xg + yh} as orbits and xG * yG = xyG."""
    G = Q.unit_group()
    elements = list(Q.ring_elements())
    orbit_of = {}
    orbits = []
    for x in elements:
        if x in orbit_of:
            continue
        orb = sorted({Q.ring_mul(x, g) for g in G})
        idx = len(orbits)
        orbits.append(orb)
        for y in orb:
            orbit_of[y] = idx
    n = len(orbits)
    if n > CARRIER_CAP:
        raise CapError("carrier cap exceeded")
    labels = ["{" + ",".join(map(str, orb)) + "}" for orb in orbits]
    zero = orbit_of[0]
    one = orbit_of[1]
    mul = [[orbit_of[Q.ring_mul(orbits[x][0], orbits[y][0])]
            for y in range(n)] for x in range(n)]
    hyperadd = [[0] * n for _ in range(n)]
    for x in range(n):
        rx = orbits[x][0]
        for y in range(x, n):
            mask = 0
            for g in G:
                xg = Q.ring_mul(rx, g)
                for h in G:
                    mask |= 1 << orbit_of[Q.ring_add(xg, Q.ring_mul(orbits[y][0], h))]
            hyperadd[x][y] = mask
            hyperadd[y][x] = mask
    T = HyperTable(labels, zero, one, mul, hyperadd)
    T.quotient = Q
    T.unit_subgroup = G
    T.orbits = orbits
    return T


def field_quotient_table(q, m):
    """GF(q^m) / GF(q)^x as a hypertable."""
    p, a = gf.factor_prime_power(q)
    F = gf.GF(p, a * m)
    if q == 2:
        gens = (1,)
    else:
        g = F.primitive_element()
        gens = (F.pow(g, (F.q - 1) // (q - 1)),)
    return quotient_hyperring(QuotientSpec(F, gens))


def contains_krasner(T):
    """Whether {0bar, 1bar} is closed as a sub-hypertable, i.e. the
    two-element hyperfield maps into T in the inclusion sense
    (1+1 a subset of {0,1}).  For unit-orbit quotients this is equivalent
    to {0} + G being a subfield of the ring."""
    z, o = T.zero, T.one
    sub = (1 << z) | (1 << o)
    for x in (z, o):
        for y in (z, o):
            if T.hyperadd[x][y] & ~sub:
                return False
            if T.mul[x][y] not in (z, o):
                return False
    return True


def subfield_test(Q):
    """Whether {0} union the unit subgroup is a subfield of the ring."""
    G = Q.unit_group()
    S = {0} | set(G)
    for a in S:
        for b in S:
            if Q.ring_add(a, b) not in S or Q.ring_mul(a, b) not in S:
                return False
    return True


def is_k_vectorspace(T):
    """x + x = {0, x} for all nonzero x."""
    z = T.zero
    return all(T.hyperadd[x][x] == (1 << z | 1 << x)
               for x in range(T.n) if x != z)


def hyperfield_to_geometry(T):
    """Points = carrier minus zero; lines L(x,y) = (x+y) union {x,y}."""
    if not is_k_vectorspace(T):
        raise DomainError("table does not satisfy x + x = {0, x}")
    z = T.zero
    points = [x for x in range(T.n) if x != z]
    pidx = {x: i for i, x in enumerate(points)}
    lines = set()
    for i, x in enumerate(points):
        for y in points[i + 1:]:
            mask = T.hyperadd[x][y] | 1 << x | 1 << y
            line = []
            m = mask
            while m:
                w = (m & -m).bit_length() - 1
                if w != z:
                    line.append(pidx[w])
                m &= m - 1
            lines.add(tuple(sorted(line)))
    meta = {"construction": "hyperfield", "carrier": [T.labels[p] for p in points]}
    return IncidenceStructure(len(points), sorted(lines), meta)


def geometry_to_hyperfield(gamma, G, point_elements):
    """Rebuild the hypertable from a geometry with a group labeling.

    point_elements[i] is the group element labeling point i; the group
    must have order = number of points.  Requires >= 4 points per line.
    Hyperaddition: x + y = (line through x, y) minus {x, y} for x != y,
    and x + x = {0, x}."""
    if any(len(l) < 4 for l in gamma.lines):
        raise DomainError("need at least 4 points per line")
    n = gamma.npoints + 1
    if n > CARRIER_CAP:
        raise CapError("carrier cap exceeded")
    index = {e: i + 1 for i, e in enumerate(point_elements)}
    labels = ["0"] + [G.canon(e) for e in point_elements]
    mul = [[0] * n for _ in range(n)]
    for i, a in enumerate(point_elements):
        for j, b in enumerate(point_elements):
            mul[i + 1][j + 1] = index[G.mul(a, b)]
    one = index[G.identity]
    hyperadd = [[0] * n for _ in range(n)]
    for x in range(n):
        hyperadd[x][0] = 1 << x
        hyperadd[0][x] = 1 << x
    for x in range(1, n):
        hyperadd[x][x] = 0b1 | 1 << x
    for mask in gamma.masks:
        pts = []
        m = mask
        while m:
            pts.append((m & -m).bit_length() - 1)
            m &= m - 1
        full = 0
        for p in pts:
            full |= 1 << (p + 1)
        for i, p in enumerate(pts):
            for q in pts[i + 1:]:
                val = full & ~(1 << (p + 1) | 1 << (q + 1))
                hyperadd[p + 1][q + 1] = val
                hyperadd[q + 1][p + 1] = val
    for x in range(1, n):
        for y in range(1, n):
            if x != y and hyperadd[x][y] == 0:
                raise DomainError("labeling does not cover all point pairs")
    return HyperTable(labels, 0, one, mul, hyperadd)


class _CarrierGroup:
    """Multiplicative group of a hypertable's nonzero carrier, in the
    GroupHandle shape geometry_to_hyperfield consumes."""

    def __init__(self, T):
        self.T = T

    @property
    def identity(self):
        return self.T.one

    def mul(self, a, b):
        return self.T.mul[a][b]

    def canon(self, a):
        return self.T.labels[a]


def roundtrip_table(T):
    """hyperfield -> geometry -> hyperfield, labeling points by the
    nonzero carrier itself."""
    gamma = hyperfield_to_geometry(T)
    pts = [x for x in range(T.n) if x != T.zero]
    return geometry_to_hyperfield(gamma, _CarrierGroup(T), pts)


def tables_equal(T1, T2):
    """Structural equality under the identity carrier correspondence
    (T2's carrier may be a reordering placing zero first)."""
    if T1.n != T2.n:
        return False
    old = [T1.zero] + [x for x in range(T1.n) if x != T1.zero]
    # old[i] in T1 corresponds to index i in T2
    back = {i: x for i, x in enumerate(old)}
    for x2 in range(T1.n):
        for y2 in range(T1.n):
            x1, y1 = back[x2], back[y2]
            if old.index(T1.mul[x1][y1]) != T2.mul[x2][y2]:
                return False
            img = 0
            m = T1.hyperadd[x1][y1]
            while m:
                w = (m & -m).bit_length() - 1
                img |= 1 << old.index(w)
                m &= m - 1
            if img != T2.hyperadd[x2][y2]:
                return False
    return True


# ---------------------------------------------------------------------------
# isomorphism and classification

def _mult_generators(T):
    """Try to present the multiplicative group as cyclic: return a
    generator, or None if it is not cyclic."""
    nonzero = [x for x in range(T.n) if x != T.zero]
    k = len(nonzero)
    for g in nonzero:
        x = g
        seen = 1
        while x != T.one:
            x = T.mul[x][g]
            seen += 1
            if seen > k:
                break
        if seen == k and x == T.one or (k == 1 and g == T.one):
            return g
    return None


def tables_isomorphic(T1, T2):
    """Hypertable isomorphism fixing 0 and 1 (mult-group-first search)."""
    if T1.n != T2.n:
        return None
    n = T1.n
    g1 = _mult_generators(T1)
    if g1 is not None:
        # map a cyclic generator to every candidate generator of T2
        nonzero2 = [x for x in range(n) if x != T2.zero]
        k = n - 1
        powers1 = [T1.one]
        x = g1
        while x != T1.one:
            powers1.append(x)
            x = T1.mul[x][g1]
        powers1 = powers1[1:] + [T1.one]  # g, g^2, ..., g^k = 1
        for g2 in nonzero2:
            powers2 = []
            y = g2
            for _ in range(k):
                powers2.append(y)
                y = T2.mul[y][g2]
            if powers2[-1] != T2.one or len(set(powers2)) != k:
                continue
            phi = {T1.zero: T2.zero}
            for a, b in zip(powers1, powers2):
                phi[a] = b
            if _check_table_map(T1, T2, phi):
                return phi
        return None
    return _backtrack_iso(T1, T2)


def _check_table_map(T1, T2, phi):
    n = T1.n
    for x in range(n):
        for y in range(n):
            if phi[T1.mul[x][y]] != T2.mul[phi[x]][phi[y]]:
                return False
            img = 0
            m = T1.hyperadd[x][y]
            while m:
                w = (m & -m).bit_length() - 1
                img |= 1 << phi[w]
                m &= m - 1
            if img != T2.hyperadd[phi[x]][phi[y]]:
                return False
    return True


def _backtrack_iso(T1, T2):
    n = T1.n
    order = [x for x in range(n) if x not in (T1.zero, T1.one)]
    phi = {T1.zero: T2.zero, T1.one: T2.one}
    used = {T2.zero, T2.one}

    def consistent():
        for x in phi:
            for y in phi:
                if T1.mul[x][y] in phi:
                    if phi[T1.mul[x][y]] != T2.mul[phi[x]][phi[y]]:
                        return False
        return True

    def rec(i):
        if i == len(order):
            return _check_table_map(T1, T2, phi)
        x = order[i]
        for cand in range(n):
            if cand in used:
                continue
            phi[x] = cand
            used.add(cand)
            if consistent() and rec(i + 1):
                return True
            del phi[x]
            used.discard(cand)
        return False

    if rec(0):
        return dict(phi)
    return None


def classify_extension(T, max_q=16):
    """Place a finite hyperfield extension of the two-element hyperfield:
    (i) single-line group algebra, (ii) finite-field unit quotient, or the
    fallback 'plane-other' with the geometry as evidence."""
    rep = check_axioms(T)
    if not rep.passed():
        raise DomainError(f"not a hyperfield: {rep.to_json()['axioms']}")
    if not is_k_vectorspace(T):
        raise DomainError("not an extension of the two-element hyperfield")
    if T.n == 2:
        return {"case": "field-quotient", "q": None, "m": 1,
                "note": "degenerate: the base hyperfield itself"}
    gamma = hyperfield_to_geometry(T)
    if gamma.nlines == 1:
        return {"case": "single-line", "group_order": T.n - 1}
    npts = T.n - 1
    for q in range(2, max_q + 1):
        try:
            gf.factor_prime_power(q)
        except DomainError:
            continue
        m = 2
        while (q ** m - 1) // (q - 1) <= npts:
            if (q ** m - 1) // (q - 1) == npts:
                cand = field_quotient_table(q, m)
                if tables_isomorphic(T, cand) is not None:
                    return {"case": "field-quotient", "q": q, "m": m}
            m += 1
    from .geometry import verify_plane
    cert = verify_plane(gamma)
    return {"case": "plane-other", "plane": cert.to_json()}
