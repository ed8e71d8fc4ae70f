"""Acceptance suite: one criterion per test, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -s` to see the lines as they
print.  A failing criterion prints FAIL with the witness and then fails
the test; known-failing cases are not masked.
"""

import io
import itertools
import json
import time
from contextlib import redirect_stdout, redirect_stderr
from math import gcd

from singer import cli, diffsets, f1, geometry, gf, hyper
from singer.errors import DomainError
from singer.groups import Cyclic, parse_group, has_involution


def report(k, ok, detail):
    print(f"CRITERION {k}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"criterion {k}: {detail}"


def quiet_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf), redirect_stderr(io.StringIO()):
        code = cli.main(argv)
    return code, buf.getvalue()


def test_criterion_1_classical_suite():
    t0 = time.time()
    problems = []
    for q in (2, 3, 4, 5, 7, 8, 9):
        code, out = quiet_cli(["classical", "--q", str(q)])
        obj = json.loads(out)
        v = (q ** 3 - 1) // (q - 1)
        if code != 0:
            problems.append((q, "exit", code))
            continue
        if len(obj["difference_set"]["elements"]) != q + 1:
            problems.append((q, "size"))
        if not (obj["perfect"] and obj["action_regular"]
                and obj["plane_certificate"]["ok"]
                and obj["plane"]["points"] == v):
            problems.append((q, "certificates"))
    dt = time.time() - t0
    report(1, not problems and dt < 60,
           f"q in 2..9: perfect sets, plane axioms, regular action "
           f"({dt:.1f}s); problems={problems}")


def test_criterion_2_higher_dimension():
    t0 = time.time()
    gamma = geometry.pg_singer_structure(2, 3)
    ref = geometry.pg_space(3, 2)
    G = Cyclic(15)
    cert = geometry.verify_singer_action(
        gamma, G, geometry.right_translation_action(G))
    ok = (gamma.npoints == ref.npoints == 15
          and gamma.nlines == ref.nlines and cert.ok)
    dt = time.time() - t0
    report(2, ok and dt < 5,
           f"regular line-preserving action on the 15 points of PG(3,2) "
           f"({dt:.1f}s)")


def test_criterion_3_hughes_determinism():
    t0 = time.time()
    results = []
    for args in (["hughes", "--group", "integers", "--targets", "200"],
                 ["hughes", "--group", "free:2", "--targets", "100"]):
        code1, out1 = quiet_cli(args)
        code2, out2 = quiet_cli(args)
        obj = json.loads(out1)
        S = diffsets.PartialDifferenceSet.from_json(obj["difference_set"])
        results.append({
            "group": args[2],
            "exit": (code1, code2),
            "identical": out1 == out2,
            "certified": diffsets.verify_partial(S).ok,
            "prefixes": obj["prefixes_certified"],
        })
    dt = time.time() - t0
    ok = all(r["exit"] == (0, 0) and r["identical"] and r["certified"]
             and r["prefixes"] >= 1 for r in results) and dt < 10
    report(3, ok, f"builder deterministic + chain-certified ({dt:.1f}s): "
                  f"{results}")


def test_criterion_4_involution_refusal():
    problems = []
    for spec in ("cyclic:4", "abelian:2,6"):
        try:
            diffsets.hughes_build(parse_group(spec), 1)
            problems.append((spec, "accepted"))
        except DomainError as exc:
            if "involution" not in str(exc):
                problems.append((spec, str(exc)))
    for spec, targets in (("cyclic:7", 3), ("integers", 10)):
        try:
            diffsets.hughes_build(parse_group(spec), targets)
        except DomainError as exc:
            problems.append((spec, str(exc)))
    for v in range(1, 501):
        found, witness = has_involution(Cyclic(v))
        if found != (v % 2 == 0 and v > 1) or (found and witness != v // 2):
            problems.append(("cyclic", v))
    report(4, not problems,
           f"involution refusals + parity scan on cyclic groups up to 500; "
           f"problems={problems}")


def test_criterion_5_hyperfield_axioms():
    t0 = time.time()
    failures = []
    rep = hyper.check_axioms(hyper.krasner())
    if not rep.passed():
        failures.append(("krasner", rep.to_json()["axioms"]))
    for n in range(3, 11):
        T = hyper.k_algebra(Cyclic(n))
        rep = hyper.check_axioms(T)
        if not rep.passed():
            bad = [a for a in rep.AXIOMS if not rep.results[a]]
            failures.append((f"k_algebra(C_{n})", bad,
                             dict(rep.witnesses)))
        if not hyper.is_k_vectorspace(T):
            failures.append((f"k_algebra(C_{n})", "x+x != {0,x}"))
    for q, m in ((2, 2), (2, 3), (3, 2), (3, 3), (4, 3), (5, 3)):
        T = hyper.field_quotient_table(q, m)
        rep = hyper.check_axioms(T)
        if not rep.passed():
            bad = [a for a in rep.AXIOMS if not rep.results[a]]
            failures.append((f"quotient({q},{m})", bad))
        if not hyper.is_k_vectorspace(T):
            failures.append((f"quotient({q},{m})", "x+x != {0,x}"))
    dt = time.time() - t0
    # known honest failures: the 4-element single-line algebra is not
    # set-associative, and trivial-unit quotients (q=2) have x+x={0};
    # see the repository decision ledger
    report(5, not failures and dt < 30,
           f"axioms + K-vectorspace law over all listed tables ({dt:.1f}s); "
           f"failures={failures}")


def test_criterion_6_krasner_quotients():
    t0 = time.time()
    problems = []
    sizes = [q for q in range(4, 82)
             if _is_prime_power(q)]
    for s in sizes:
        T = hyper.field_quotient_table(s, 1)
        if hyper.tables_isomorphic(T, hyper.krasner()) is None:
            problems.append((s, "full-unit quotient not krasner"))
        p, a = gf.factor_prime_power(s)
        F = gf.GF(p, a)
        g = F.primitive_element()
        for d in _divisors(s - 1):
            Q = hyper.QuotientSpec(F, (F.pow(g, (s - 1) // d),))
            if hyper.contains_krasner(hyper.quotient_hyperring(Q)) \
                    != hyper.subfield_test(Q):
                problems.append((s, d, "closure vs subfield mismatch"))
    dt = time.time() - t0
    report(6, not problems and dt < 60,
           f"{len(sizes)} fields, every cyclic unit subgroup ({dt:.1f}s); "
           f"problems={problems}")


def test_criterion_7_roundtrip():
    t0 = time.time()
    problems = []
    for q, m in ((3, 3), (4, 3)):
        T = hyper.field_quotient_table(q, m)
        gamma = hyper.hyperfield_to_geometry(T)
        cert = geometry.verify_plane(gamma)
        if not (cert.ok and cert.order == q):
            problems.append((q, m, "plane"))
        if not hyper.tables_equal(T, hyper.roundtrip_table(T)):
            problems.append((q, m, "roundtrip"))
    fano_rejected = False
    G = Cyclic(7)
    S = diffsets.certify(diffsets.PartialDifferenceSet(G, (0, 1, 3)))
    fano = geometry.plane_from_difference_set(G, S)
    try:
        hyper.geometry_to_hyperfield(fano, G, list(G.elements()))
    except DomainError:
        fano_rejected = True
    dt = time.time() - t0
    report(7, not problems and fano_rejected and dt < 30,
           f"(3,3) and (4,3) invert table-exactly, Fano rejected "
           f"({dt:.1f}s); problems={problems}")


def test_criterion_8_fixed_point_lemma():
    t0 = time.time()
    mismatches = []
    counts = {}
    for F, dim in ((gf.GF(2, 1), 3), (gf.GF(3, 1), 2)):
        total = 0
        for flat in itertools.product(range(F.q), repeat=dim * dim):
            A = [flat[i * dim:(i + 1) * dim] for i in range(dim)]
            if not geometry.is_invertible(F, A):
                continue
            total += 1
            c = geometry.Collineation(F, A)
            has_fix = bool(geometry.fixed_points(c))
            has_root = bool(gf.roots_in_field(geometry.char_poly(F, A), F))
            if has_fix != has_root:
                mismatches.append((F.q, A))
            if geometry.fixed_points(c) != geometry.fixed_points_scan(c):
                mismatches.append((F.q, A, "scan"))
        counts[(F.q, dim)] = total
    # Singer cycle: companion matrix of x^3 + x + 1 over GF(2)
    F2 = gf.GF(2, 1)
    c = geometry.Collineation(F2, [[0, 0, 1], [1, 0, 1], [0, 1, 0]])
    orbit = set()
    x = (1, 0, 0)
    for _ in range(7):
        orbit.add(x)
        x = geometry._normalize(F2, geometry.apply_collineation(c, x))
    cycle_ok = len(orbit) == 7 and x == (1, 0, 0) \
        and geometry.fixed_points(c) == []
    dt = time.time() - t0
    # the invertible 3x3 count over GF(2) is 168 (group order of GL(3,2));
    # see the decision ledger for the discrepancy with the stated figure
    report(8, not mismatches and cycle_ok
           and counts == {(2, 3): 168, (3, 2): 48} and dt < 30,
           f"fixed point iff eigenvalue over {counts} matrices; order-7 "
           f"Singer orbit ({dt:.1f}s); mismatches={mismatches[:3]}")


def test_criterion_9_divisibility():
    t0 = time.time()
    failures = []
    for p in (2, 3, 5, 7):
        for j in range(1, 13):
            for i in range(1, j + 1):
                if j % i or gcd(j // i, 3) != 1:
                    continue
                a = p ** (2 * i) + p ** i + 1
                b = p ** (2 * j) + p ** j + 1
                if b % a != 0 or not gf.singer_divisibility(p, i, j):
                    failures.append((p, i, j))
    dt = time.time() - t0
    report(9, not failures and dt < 1,
           f"p in 2,3,5,7 and i | j <= 12 with gcd(j/i,3)=1 ({dt:.2f}s); "
           f"failures={failures}")


def test_criterion_10_f1_suite():
    t0 = time.time()
    problems = []
    pairs = [(m, n) for m in range(1, 24) for n in range(1, 25)
             if n * (m + 1) <= 24]
    for m, n in pairs:
        if not f1.verify_regular(f1.singer_first(m, n)).ok:
            problems.append(("first", m, n))
    # general construction on every transitive cyclic-stabilizer group
    # available at this scale
    generals = [f1.full_symmetric_group(3), f1.alternating_group(4),
                f1.dihedral_group(5), f1.dihedral_group(7),
                f1.affine_group(5, 4), f1.affine_group(7, 3),
                f1.cyclic_shift_group(11)]
    for S in generals:
        A = f1.singer_general(S)
        if not f1.verify_regular(A).ok:
            problems.append(("general", len(S)))
    for i in range(1, 13):
        for j in range(i, 13):
            if j % i == 0 and not f1.embed_singer(1, i, j).ok:
                problems.append(("embed", i, j))
    if not f1.direct_limit_demo(2, [1, 2, 4, 8])["coherent"]:
        problems.append(("chain",))
    surveys = {}
    for m, n in pairs:
        out = f1.regular_subgroup_survey(m, n)
        surveys[(m, n)] = out["mode"]
        if not out["confirmed"]:
            problems.append(("survey", m, n, out.get("counterexamples")))
    exhaustive = sum(1 for v in surveys.values() if v == "exhaustive")
    dt = time.time() - t0
    report(10, not problems and dt < 60,
           f"{len(pairs)} (m,n) pairs regular; embeddings i|j<=12; chain "
           f"1|2|4|8 coherent; survey confirmed ({exhaustive} exhaustive, "
           f"{len(pairs) - exhaustive} structural) ({dt:.1f}s); "
           f"problems={problems}")


def _is_prime_power(q):
    try:
        gf.factor_prime_power(q)
        return True
    except DomainError:
        return False


def _divisors(k):
    return [d for d in range(1, k + 1) if k % d == 0]
