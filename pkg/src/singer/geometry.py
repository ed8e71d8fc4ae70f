"""Finite incidence structures: plane axioms, Singer actions, collineation
fixed points, and a backtracking plane-isomorphism test.

Incidence is stored as one bitmask of point indices per line; the axiom
scans are pairwise bitmask intersections routed through the kernel
backend (compiled when available)."""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, CapError
from . import gf
from ._backend import line_pair_witness, coverage_witness

POINT_CAP = 10 ** 5
ISO_NODE_CAP = 10 ** 7


class IncidenceStructure:
    """Points 0..n-1 and lines as sorted point-index tuples."""

    def __init__(self, npoints, lines, meta=None):
        if npoints > POINT_CAP:
            raise CapError(f"point cap {POINT_CAP} exceeded")
        self.npoints = npoints
        self.lines = [tuple(sorted(l)) for l in lines]
        seen = set()
        self.masks = []
        for l in self.lines:
            if l and not 0 <= l[0] <= l[-1] < npoints:
                raise DomainError("line index out of range")
            mask = 0
            for p in l:
                mask |= 1 << p
            if mask in seen:
                raise DomainError("repeated line")
            seen.add(mask)
            self.masks.append(mask)
        self.meta = dict(meta or {})

    @property
    def nlines(self):
        return len(self.lines)

    def line_set(self):
        return set(self.masks)

    def to_json(self):
        return {
            "points": self.npoints,
            "lines": [list(l) for l in self.lines],
            "meta": self.meta,
        }

    @staticmethod
    def from_json(obj):
        return IncidenceStructure(obj["points"], obj["lines"],
                                  obj.get("meta"))

    def __repr__(self):
        return f"<incidence {self.npoints}p/{self.nlines}l>"


@dataclass
class PlaneCertificate:
    ok: bool
    order: int | None
    checks: dict
    counterexample: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "order": self.order, "checks": self.checks,
                "counterexample": self.counterexample}


def verify_plane(gamma):
    """Exhaustive check of the three projective-plane axioms."""
    checks = {"two-points-one-line": True, "two-lines-one-point": True,
              "quadrangle-exists": True}

    w = line_pair_witness(gamma.masks, 1, 1)
    if w is not None:
        i, j, c = w
        if c == 0:
            checks["two-lines-one-point"] = False
            cx = {"lines": [i, j], "common_points": 0}
        else:
            checks["two-points-one-line"] = False
            common = gamma.masks[i] & gamma.masks[j]
            p = (common & -common).bit_length() - 1
            common &= common - 1
            q = (common & -common).bit_length() - 1
            cx = {"points": [p, q], "lines": [i, j]}
        return PlaneCertificate(False, None, checks, cx)

    w = coverage_witness(gamma.npoints, gamma.masks)
    if w is not None:
        checks["two-points-one-line"] = False
        return PlaneCertificate(False, None, checks,
                                {"points": list(w), "lines": []})

    quad = _find_quadrangle(gamma)
    if quad is None:
        checks["quadrangle-exists"] = False
        return PlaneCertificate(False, None, checks, {"points": []})

    sizes = {len(l) for l in gamma.lines}
    if len(sizes) != 1:
        return PlaneCertificate(False, None, checks,
                                {"line_sizes": sorted(sizes)})
    n = sizes.pop() - 1
    if gamma.npoints != n * n + n + 1:
        return PlaneCertificate(False, None, checks,
                                {"points": gamma.npoints, "expected": n * n + n + 1})
    return PlaneCertificate(True, n, checks)


def _line_through(gamma, p, q):
    for mask in gamma.masks:
        if mask >> p & 1 and mask >> q & 1:
            return mask
    return None


def _find_quadrangle(gamma):
    """Four points, no three collinear; assumes the pair axioms hold."""
    if not gamma.lines or len(gamma.lines[0]) < 2:
        return None
    l0 = gamma.lines[0]
    a, b = l0[0], l0[1]
    mask0 = gamma.masks[0]
    for c in range(gamma.npoints):
        if mask0 >> c & 1:
            continue
        lac = _line_through(gamma, a, c)
        lbc = _line_through(gamma, b, c)
        if lac is None or lbc is None:
            return None
        used = mask0 | lac | lbc
        for d in range(gamma.npoints):
            if not used >> d & 1:
                return (a, b, c, d)
        return None
    return None


def verify_partial_linear(gamma):
    """Any two distinct points on at most one line."""
    w = line_pair_witness(gamma.masks, 0, 1)
    if w is None:
        return PlaneCertificate(True, None, {"at-most-one-line": True})
    return PlaneCertificate(False, None, {"at-most-one-line": False},
                            {"lines": [w[0], w[1]], "common_points": w[2]})


def plane_from_difference_set(G, S):
    """Points = lines = G; point x on line y iff x y^-1 in S."""
    if G.order is None:
        raise DomainError("finite groups only")
    if not S.certified:
        raise DomainError("difference set must be certified")
    els = list(G.elements())
    index = {e: i for i, e in enumerate(els)}
    sset = set(S.elements)
    lines = []
    for y in els:
        y_inv = G.inv(y)
        line = [index[x] for x in els if G.mul(x, y_inv) in sset]
        lines.append(line)
    meta = {"construction": "difference-set", "group": G.spec_string(),
            "elements": [G.canon(e) for e in els]}
    return IncidenceStructure(len(els), lines, meta)


def right_translation_action(G, gamma=None):
    """Action of G on its own element indices by right multiplication."""
    els = list(G.elements())
    index = {e: i for i, e in enumerate(els)}

    def act(g, p):
        return index[G.mul(els[p], g)]

    return act


def pg_space(m, q):
    """Points = 1-spaces, lines = 2-spaces of GF(q)^{m+1}."""
    p_, a = gf.factor_prime_power(q)
    F = gf.GF(p_, a)
    v = (q ** (m + 1) - 1) // (q - 1)
    if v > POINT_CAP:
        raise CapError("point cap exceeded")
    dim = m + 1
    # canonical rep of a 1-space: first nonzero coordinate equals 1
    points = []
    index = {}
    for vec in itertools.product(range(F.q), repeat=dim):
        if not any(vec):
            continue
        lead = next(x for x in vec if x != 0)
        if lead != 1:
            continue
        index[vec] = len(points)
        points.append(vec)

    def normalize(vec):
        lead = next(x for x in vec if x != 0)
        il = F.inv(lead)
        return tuple(F.mul(il, x) for x in vec)

    lines = set()
    for i, u in enumerate(points):
        for w in points[i + 1:]:
            line = set()
            for s in range(F.q):
                su = tuple(F.mul(s, x) for x in u)
                for t in range(F.q):
                    if s == 0 and t == 0:
                        continue
                    vec = tuple(F.add(su[k], F.mul(t, w[k]))
                                for k in range(dim))
                    line.add(index[normalize(vec)])
            lines.add(tuple(sorted(line)))
    meta = {"construction": "pg", "m": m, "q": q}
    return IncidenceStructure(len(points), sorted(lines), meta)


def pg_singer_structure(q, m):
    """PG(m, q) with points re-indexed by powers of a primitive element of
    GF(q^{m+1}), so the cyclic shift i -> i+1 is multiplication by that
    element (prime q only: element digit vectors are the coordinates)."""
    p_, a = gf.factor_prime_power(q)
    if a != 1:
        raise DomainError("exponent indexing implemented for prime q")
    F = gf.GF(q, m + 1)
    v = (q ** (m + 1) - 1) // (q - 1)
    g = F.primitive_element()
    pg = pg_space(m, q)
    # pg_space enumerates canonical vectors in product order; rebuild that map
    coord_index = {}
    pts = []
    for vec in itertools.product(range(q), repeat=m + 1):
        if any(vec) and next(x for x in vec if x) == 1:
            coord_index[vec] = len(pts)
            pts.append(vec)

    def digits(code):
        out = []
        for _ in range(m + 1):
            out.append(code % q)
            code //= q
        return tuple(out)

    def normalize(vec):
        lead = next(x for x in vec if x != 0)
        il = pow(lead, q - 2, q)
        return tuple(x * il % q for x in vec)

    exp_of_pg = [None] * v
    x = 1
    for i in range(v):
        exp_of_pg[coord_index[normalize(digits(x))]] = i
        x = F.mul(x, g)
    if any(e is None for e in exp_of_pg):
        raise DomainError("primitive powers did not cover the points")
    lines = sorted(tuple(sorted(exp_of_pg[p] for p in line))
                   for line in pg.lines)
    return IncidenceStructure(v, lines, {"construction": "pg-singer",
                                         "m": m, "q": q})


@dataclass
class ActionCertificate:
    ok: bool
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def verify_singer_action(gamma, G, action):
    """Certify that every group element maps lines to lines and that the
    point action is regular (each ordered pair has exactly one mover)."""
    if G.order is None:
        raise DomainError("finite groups only")
    line_masks = gamma.line_set()
    els = G.enumerate(G.order)
    npts = gamma.npoints
    for g in els:
        images = [action(g, p) for p in range(npts)]
        if sorted(images) != list(range(npts)):
            return ActionCertificate(False, {"reason": "not a permutation",
                                             "g": G.canon(g)})
        for mask in gamma.masks:
            im = 0
            m = mask
            while m:
                p = (m & -m).bit_length() - 1
                im |= 1 << images[p]
                m &= m - 1
            if im not in line_masks:
                return ActionCertificate(False, {
                    "reason": "line not preserved", "g": G.canon(g)})
    for p in range(npts):
        seen = {}
        for g in els:
            q = action(g, p)
            if q in seen:
                return ActionCertificate(False, {
                    "reason": "not free", "point": p,
                    "movers": [G.canon(seen[q]), G.canon(g)]})
            seen[q] = g
        if len(seen) != npts:
            return ActionCertificate(False, {
                "reason": "not transitive", "point": p})
    return ActionCertificate(True, {"group_order": len(els),
                                    "points": npts})


def verify_virtual_singer(gamma, G, action):
    """(free, orbit_count): free iff only the identity fixes any point."""
    if G.order is None:
        raise DomainError("finite groups only")
    els = G.enumerate(G.order)
    e = G.identity
    free = True
    for g in els:
        if g == e:
            continue
        if any(action(g, p) == p for p in range(gamma.npoints)):
            free = False
            break
    seen = set()
    orbits = 0
    for p in range(gamma.npoints):
        if p in seen:
            continue
        orbits += 1
        for g in els:
            seen.add(action(g, p))
    return free, orbits


# ---------------------------------------------------------------------------
# collineations of PG(k, F) and their fixed points

class Collineation:
    """Semilinear map x -> A x^sigma of PG(dim-1, F); sigma is a power of
    Frobenius (ignored over the rationals)."""

    def __init__(self, field, matrix, frobenius_power=0):
        self.field = field      # a gf.GF or the string "Q"
        self.A = tuple(tuple(row) for row in matrix)
        self.dim = len(self.A)
        if any(len(r) != self.dim for r in self.A):
            raise DomainError("matrix must be square")
        self.sigma = frobenius_power
        if field == "Q" and frobenius_power:
            raise DomainError("no field automorphisms over the rationals")

    def is_linear(self):
        if self.field == "Q":
            return True
        return self.sigma % self.field.n == 0


def _proj_points(F, dim):
    pts = []
    for vec in itertools.product(range(F.q), repeat=dim):
        if not any(vec):
            continue
        if next(x for x in vec if x != 0) != 1:
            continue
        pts.append(vec)
    return pts


def _normalize(F, vec):
    lead = next((x for x in vec if x != 0), None)
    if lead is None:
        return None
    il = F.inv(lead)
    return tuple(F.mul(il, x) for x in vec)


def apply_collineation(c, vec):
    F = c.field
    if F == "Q":
        out = [sum(c.A[i][j] * vec[j] for j in range(c.dim))
               for i in range(c.dim)]
        return tuple(out)
    tw = [F.pow(x, F.p ** (c.sigma % F.n) if F.n > 1 else 1) for x in vec] \
        if c.sigma else list(vec)
    out = []
    for i in range(c.dim):
        acc = 0
        for j in range(c.dim):
            acc = F.add(acc, F.mul(c.A[i][j], tw[j]))
        out.append(acc)
    return tuple(out)


def char_poly(F, A):
    """det(xI - A) by cofactor expansion; coefficients low-to-high,
    integer-coded field elements (exact for the small dims used here)."""
    dim = len(A)
    # polynomial entries: tuples of field codes, low-to-high
    def padd(f, g):
        n = max(len(f), len(g))
        return tuple(F.add(f[i] if i < len(f) else 0,
                           g[i] if i < len(g) else 0) for i in range(n))

    def pmul(f, g):
        if not f or not g:
            return ()
        out = [0] * (len(f) + len(g) - 1)
        for i, x in enumerate(f):
            for j, y in enumerate(g):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return tuple(out)

    def pneg(f):
        return tuple(F.neg(x) for x in f)

    M = [[(F.neg(A[i][j]),) if i != j else (F.neg(A[i][j]), 1)
          for j in range(dim)] for i in range(dim)]

    def det(rows, cols):
        if len(cols) == 1:
            return M[rows[0]][cols[0]]
        acc = ()
        r = rows[0]
        for k, cidx in enumerate(cols):
            minor = det(rows[1:], cols[:k] + cols[k + 1:])
            term = pmul(M[r][cidx], minor)
            acc = padd(acc, term if k % 2 == 0 else pneg(term))
        return acc

    poly = det(tuple(range(dim)), tuple(range(dim)))
    return tuple(poly) + (0,) * (dim + 1 - len(poly))


def char_poly_rational(A):
    dim = len(A)

    def padd(f, g):
        n = max(len(f), len(g))
        return tuple((f[i] if i < len(f) else 0)
                     + (g[i] if i < len(g) else 0) for i in range(n))

    def pmul(f, g):
        if not f or not g:
            return ()
        out = [Fraction(0)] * (len(f) + len(g) - 1)
        for i, x in enumerate(f):
            for j, y in enumerate(g):
                out[i + j] += x * y
        return tuple(out)

    M = [[(Fraction(-A[i][j]),) if i != j else (Fraction(-A[i][j]), Fraction(1))
          for j in range(dim)] for i in range(dim)]

    def det(rows, cols):
        if len(cols) == 1:
            return M[rows[0]][cols[0]]
        acc = ()
        r = rows[0]
        for k, cidx in enumerate(cols):
            minor = det(rows[1:], cols[:k] + cols[k + 1:])
            term = pmul(M[r][cidx], minor)
            acc = padd(acc, term if k % 2 == 0
                       else tuple(-t for t in term))
        return acc

    return det(tuple(range(dim)), tuple(range(dim)))


def _nullspace_gf(F, M):
    """Basis of the nullspace of M over F (list of tuples)."""
    rows = [list(r) for r in M]
    dim = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(dim):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [F.sub(rows[i][j], F.mul(f, rows[r][j]))
                           for j in range(dim)]
        pivots.append(c)
        r += 1
    basis = []
    free = [c for c in range(dim) if c not in pivots]
    for fc in free:
        vec = [0] * dim
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = F.neg(rows[i][fc])
        basis.append(tuple(vec))
    return basis


def is_invertible(F, A):
    return len(_nullspace_gf(F, A)) == 0


def fixed_points(c):
    """Projective fixed points of a collineation.

    Linear case: eigenvalue roots of the characteristic polynomial plus a
    nullspace solve per root.  Semilinear over a finite field and the
    rational case fall back to their natural exhaustive/root-theorem
    routes."""
    F = c.field
    if F == "Q":
        poly = char_poly_rational(c.A)
        pts = []
        for rho in gf.rational_roots(list(poly)):
            M = [[Fraction(c.A[i][j]) - (rho if i == j else 0)
                  for j in range(c.dim)] for i in range(c.dim)]
            for vec in _nullspace_rational(M):
                pts.append(vec)
        return pts
    if not is_invertible(F, c.A):
        raise DomainError("matrix must be invertible")
    if c.sigma % max(F.n, 1) == 0:
        poly = char_poly(F, c.A)
        pts = set()
        for rho in gf.roots_in_field(poly, F):
            M = [[F.sub(c.A[i][j], rho if i == j else 0)
                  for j in range(c.dim)] for i in range(c.dim)]
            basis = _nullspace_gf(F, M)
            # every projective point of the eigenspace is fixed
            for coeffs in itertools.product(range(F.q), repeat=len(basis)):
                if not any(coeffs):
                    continue
                vec = [0] * c.dim
                for s, b in zip(coeffs, basis):
                    for k in range(c.dim):
                        vec[k] = F.add(vec[k], F.mul(s, b[k]))
                norm = _normalize(F, vec)
                if norm:
                    pts.add(norm)
        return sorted(pts)
    return fixed_points_scan(c)


def fixed_points_scan(c):
    """Exhaustive fixed-point scan over the projective points (oracle)."""
    F = c.field
    pts = []
    for p in _proj_points(F, c.dim):
        img = apply_collineation(c, p)
        if _normalize(F, img) == p:
            pts.append(p)
    return pts


def _nullspace_rational(M):
    rows = [list(map(Fraction, r)) for r in M]
    dim = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(dim):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [rows[i][j] - f * rows[r][j] for j in range(dim)]
        pivots.append(c)
        r += 1
    basis = []
    for fc in (c for c in range(dim) if c not in pivots):
        vec = [Fraction(0)] * dim
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(tuple(vec))
    return basis


# ---------------------------------------------------------------------------
# plane isomorphism

@dataclass
class IsoResult:
    status: str          # "iso" | "noniso" | "indeterminate"
    mapping: list | None = None

    def __bool__(self):
        return self.status == "iso"


def isomorphic_planes(g1, g2, node_cap=ISO_NODE_CAP):
    """Backtracking search for an incidence-preserving point bijection."""
    if g1.npoints != g2.npoints or g1.nlines != g2.nlines:
        return IsoResult("noniso")
    deg1 = sorted(len(l) for l in g1.lines)
    deg2 = sorted(len(l) for l in g2.lines)
    if deg1 != deg2:
        return IsoResult("noniso")

    n = g1.npoints
    lines1 = g1.masks
    lineset2 = g2.line_set()
    # lines through each point
    thru1 = [[] for _ in range(n)]
    for idx, mask in enumerate(lines1):
        m = mask
        while m:
            p = (m & -m).bit_length() - 1
            thru1[p].append(idx)
            m &= m - 1
    thru2count = [0] * n
    for mask in g2.masks:
        m = mask
        while m:
            p = (m & -m).bit_length() - 1
            thru2count[p] += 1
            m &= m - 1
    pdeg1 = [len(thru1[p]) for p in range(n)]

    mapping = [-1] * n
    used = [False] * n
    nodes = 0

    # map the image of every fully-mapped line to a line of g2
    def consistent(p):
        for lidx in thru1[p]:
            mask = lines1[lidx]
            im = 0
            complete = True
            m = mask
            while m:
                q = (m & -m).bit_length() - 1
                if mapping[q] < 0:
                    complete = False
                    break
                im |= 1 << mapping[q]
                m &= m - 1
            if complete and im not in lineset2:
                return False
        return True

    def rec(p):
        nonlocal nodes
        if p == n:
            return True
        for cand in range(n):
            if used[cand] or thru2count[cand] != pdeg1[p]:
                continue
            nodes += 1
            if nodes > node_cap:
                raise CapError("isomorphism node cap")
            mapping[p] = cand
            used[cand] = True
            if consistent(p) and rec(p + 1):
                return True
            mapping[p] = -1
            used[cand] = False
        return False

    try:
        if rec(0):
            return IsoResult("iso", list(mapping))
        return IsoResult("noniso")
    except CapError:
        return IsoResult("indeterminate")
