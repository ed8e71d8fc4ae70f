"""Partial and perfect difference sets, the classical cyclic construction,
and the greedy two-element successor builder with its abelian shortcut.

A subset S of a group is *partial* when the difference map
(a, b) -> a b^-1 on ordered pairs of distinct elements is injective, and
*perfect* when that map is a bijection onto the nonidentity elements.
The builder consumes target elements in enumeration order and, for each
target d not yet a difference, adjoins {x, d^-1 x} for the least x that
keeps the set partial; for abelian groups the absence of involutions
makes the conjugation collision impossible, which is checked up front and
asserted along the way.
"""

import hashlib
import json
from dataclasses import dataclass, field

from .errors import DomainError, BoundedFailure
from .groups import parse_group, has_involution
from . import gf

DEFAULT_SEARCH_BOUND = 10 ** 5


@dataclass(frozen=True)
class PartialDifferenceSet:
    group: object
    elements: tuple
    certified: bool = False

    def to_json(self):
        return {
            "group": self.group.spec_string(),
            "elements": [self.group.canon(e) for e in self.elements],
            "certified": self.certified,
        }

    @staticmethod
    def from_json(obj):
        G = parse_group(obj["group"])
        els = tuple(G.parse(s) for s in obj["elements"])
        return PartialDifferenceSet(G, els, bool(obj.get("certified", False)))


@dataclass
class Certificate:
    ok: bool
    kind: str
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def differences(S):
    """{ a b^-1 : a, b in S, a != b } as a set."""
    G = S.group
    out = set()
    els = S.elements
    for a in els:
        for b in els:
            if a != b:
                out.add(G.mul(a, G.inv(b)))
    return out


def _difference_pairs(S):
    """Map difference -> list of ordered pairs producing it."""
    G = S.group
    out = {}
    for a in S.elements:
        for b in S.elements:
            if a != b:
                out.setdefault(G.mul(a, G.inv(b)), []).append((a, b))
    return out


def verify_partial(S):
    """Certificate iff the difference map is injective; else the two
    colliding pairs are reported."""
    pairs = _difference_pairs(S)
    for d, ps in pairs.items():
        if len(ps) > 1:
            G = S.group
            return Certificate(False, "partial-difference-set", {
                "difference": G.canon(d),
                "pairs": [[G.canon(a), G.canon(b)] for a, b in ps[:2]],
            })
    return Certificate(True, "partial-difference-set",
                       {"differences": len(pairs)})


def certify(S):
    cert = verify_partial(S)
    if not cert:
        raise DomainError(f"not a partial difference set: {cert.detail}")
    return PartialDifferenceSet(S.group, S.elements, True)


def verify_perfect(S):
    """Certificate iff the difference map is a bijection onto G \\ {e}."""
    G = S.group
    if G.order is None:
        raise DomainError("perfect difference sets require a finite group")
    pairs = _difference_pairs(S)
    for d, ps in pairs.items():
        if len(ps) > 1:
            return Certificate(False, "perfect-difference-set", {
                "difference": G.canon(d),
                "pairs": [[G.canon(a), G.canon(b)] for a, b in ps[:2]],
            })
    e = G.identity
    missing = [g for g in G.elements() if g != e and g not in pairs]
    if missing:
        return Certificate(False, "perfect-difference-set", {
            "missing": G.canon(missing[0]),
        })
    k = len(S.elements)
    assert G.order == k * k - k + 1, "ordered pair count must match G \\ {e}"
    return Certificate(True, "perfect-difference-set", {"k": k, "v": G.order})


def classical_singer(q, m):
    """Perfect difference set for PG(m, q) in cyclic((q^{m+1}-1)/(q-1)).

    Points of the projective space are indexed by powers of a primitive
    element g of GF(q^{m+1}) modulo the scalar subgroup GF(q)^x; the set
    collects the exponents landing in the hyperplane spanned (over GF(q))
    by 1, g, ..., g^{m-1}."""
    p, a = gf.factor_prime_power(q)
    if m < 1:
        raise DomainError("dimension must be >= 1")
    F = gf.GF(p, a * (m + 1))
    N = F.q - 1
    v = (q ** (m + 1) - 1) // (q - 1)
    g = F.primitive_element()
    # discrete logs
    log = {}
    x = 1
    for i in range(N):
        log[x] = i
        x = F.mul(x, g)
    # GF(q) inside F: {0} plus the order-(q-1) subgroup of F^x
    if q == 2:
        subfield = [0, 1]
    else:
        s = F.pow(g, N // (q - 1))
        subfield = [0, 1]
        y = s
        while y != 1:
            subfield.append(y)
            y = F.mul(y, s)
    basis = [F.pow(g, i) for i in range(m)]
    S = set()
    import itertools
    for coeffs in itertools.product(subfield, repeat=m):
        h = 0
        for c, b in zip(coeffs, basis):
            h = F.add(h, F.mul(c, b))
        if h != 0:
            S.add(log[h] % v)
    from .groups import FieldQuotient
    G = FieldQuotient(p, a, m + 1)
    pds = PartialDifferenceSet(G, tuple(sorted(S)))
    if m == 2:
        # only planes give lambda = 1; in higher dimension the hyperplane
        # set indexes the Singer action but is not a partial set
        pds = certify(pds)
    return G, pds


# ---------------------------------------------------------------------------
# greedy builder

@dataclass
class BuilderState:
    current: PartialDifferenceSet
    targets_consumed: int = 0
    log: list = field(default_factory=list)

    def log_json(self):
        return self.log

    def log_hash(self):
        payload = json.dumps(self.log, sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()


def _new_differences(G, S_els, diffs, new_els):
    """Differences contributed by adjoining new_els to the set. Returns
    None on any collision (among themselves, with diffs, or identity)."""
    e = G.identity
    seen = set()
    all_els = list(S_els)
    for x in new_els:
        if x in all_els:
            return None
        for s in all_els:
            for d in (G.mul(x, G.inv(s)), G.mul(s, G.inv(x))):
                if d == e or d in diffs or d in seen:
                    return None
                seen.add(d)
        all_els.append(x)
    return seen


def hughes_step(state, d, search_bound=DEFAULT_SEARCH_BOUND,
                abelian_mode=None):
    """Extend the set so the target d occurs as a difference.

    No-op (cursor/log only) when d already is a difference; otherwise scans
    candidates x in enumeration order and adjoins {x, d^-1 x} (d^-1 x may
    coincide with an existing element, in which case only x is new).
    """
    S = state.current
    G = S.group
    if abelian_mode is None:
        abelian_mode = G.abelian
    e = G.identity
    if d == e:
        raise DomainError("target must be a nonidentity element")
    if not S.certified:
        raise DomainError("builder state must carry a certified set")
    diffs = differences(S)
    if d in diffs:
        new_log = state.log + [{"target": G.canon(d), "chosen_x": None,
                                "added": []}]
        return BuilderState(S, state.targets_consumed + 1, new_log)

    d_inv = G.inv(d)
    elset = set(S.elements)
    scanned = 0
    for x in G.elements():
        scanned += 1
        if scanned > search_bound:
            raise BoundedFailure(
                f"no candidate for target {G.canon(d)} within {search_bound}")
        if x in elset:
            continue
        y = G.mul(d_inv, x)
        new_els = [x] if y in elset else [x, y]
        if len(new_els) == 2 and x == y:
            continue
        new = _new_differences(G, S.elements, diffs, new_els)
        if new is None:
            continue
        if abelian_mode:
            # the conjugation collision d^x = s_j^-1 s_i cannot fire when
            # the group is abelian and d is not yet a difference
            conj = G.mul(G.mul(G.inv(x), d), x)
            assert conj == d, "abelian shortcut violated"
        elements = tuple(list(S.elements) + new_els)
        ext = PartialDifferenceSet(G, elements, True)
        assert d in new, "target must appear among the new differences"
        new_log = state.log + [{
            "target": G.canon(d),
            "chosen_x": G.canon(x),
            "added": [G.canon(z) for z in new_els],
        }]
        return BuilderState(ext, state.targets_consumed + 1, new_log)
    raise BoundedFailure(
        f"enumeration exhausted before bound for target {G.canon(d)}")


def hughes_build(G, num_targets, search_bound=DEFAULT_SEARCH_BOUND):
    """Run hughes_step over the first num_targets nonidentity elements.

    Abelian backends are refused outright when an involution is found
    within the scan bound (they can never carry a planar Singer action);
    general backends get the same squares check as a precondition."""
    if num_targets < 1:
        raise DomainError("need at least one target")
    scan = G.order if G.order is not None else min(search_bound, 10 ** 4)
    found, witness = has_involution(G, scan)
    if found:
        raise DomainError(
            f"group has an involution ({G.canon(witness)}); an involution "
            "fixes a point of any plane it acts on, so no Singer action "
            "exists (abelian groups act iff involution-free)")
    e = G.identity
    start = PartialDifferenceSet(G, (e,), True)
    state = BuilderState(start)
    consumed = 0
    for h in G.elements():
        if h == e:
            continue
        state = hughes_step(state, h, search_bound)
        consumed += 1
        if consumed >= num_targets:
            break
    if consumed < num_targets:
        raise BoundedFailure("group exhausted before target count")
    return state


def replay_chain(state):
    """Re-certify every prefix of the builder log (the chain lemma).

    Returns the list of prefix sizes checked."""
    G = state.current.group
    elements = [G.identity]
    sizes = []
    for entry in state.log:
        for s in entry["added"]:
            elements.append(G.parse(s))
        prefix = PartialDifferenceSet(G, tuple(elements))
        if not verify_partial(prefix):
            raise AssertionError(f"prefix of size {len(elements)} not partial")
        sizes.append(len(elements))
    if tuple(elements) != state.current.elements:
        raise AssertionError("log does not reproduce the final set")
    return sizes
