"""Acceptance criteria 1-14, evaluated exactly as stated.

Every test records a PASS/FAIL line in ``RESULTS``; ``conftest.py`` prints the
lines at the end of the session.  Running this file directly prints them too.
"""

import random
from itertools import combinations, product

from arithmetree.algebras import (
    FormalSpace,
    MomentTable,
    OperatorValuedSpace,
    Poly,
    WordSpace,
    parse_formal,
    random_fraction,
    words_upto,
)
from arithmetree.arithmetic import (
    decompose_grove,
    dend_left,
    dend_right,
    is_prime,
    ltimes,
    nonprimes,
    over,
    star,
    under,
)
from arithmetree.freeprob import (
    composition_chain,
    cumulants_from_moments,
    evaluate_partition,
    fold_chain,
    format_chain,
    formal_family,
    freeness_check,
    identify,
    moment_family,
    moments_from_cumulants,
    operad_laws_check,
    unbalanced_family,
)
from arithmetree.ncp import NCPartition, enumerate_nc, from_partition, partition_dagger, to_partition
from arithmetree.tamari import leq, minimum, mobius_closed, mobius_poset
from arithmetree.trees import EMPTY, ONE, ZERO, Grove, Name, catalan, dagger, enumerate_names, exp_of, name_of, tree_of

RESULTS: dict[int, str] = {}


def record(number: int, title: str, checks: dict[str, bool]):
    failed = [k for k, ok in checks.items() if not ok]
    status = "PASS" if not failed else "FAIL"
    line = f"criterion {number:2d} {status}: {title}"
    if failed:
        line += " [failed: " + "; ".join(failed) + "]"
    RESULTS[number] = line
    print(line)
    assert not failed, line


def names_upto(k, start=1):
    return [v for n in range(start, k + 1) for v in enumerate_names(n)]


def coords(g):
    return {v.coords for v in g}


def test_criterion_01_catalan_census():
    want = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
    record(1, "Catalan census", {
        "names n=0..8": [len(enumerate_names(n)) for n in range(9)] == want,
        "noncrossing partitions n=1..8": [len(enumerate_nc(n)) for n in range(1, 9)] == want[1:],
    })


def test_criterion_02_golden_decodes():
    t = tree_of((1, 2, 1, 2))
    record(2, "golden decode of (1,2,1,2)", {
        "name (1,2,2,1)": name_of(t).coords == (1, 2, 2, 1),
        "exp ((x1((x2x3)x4))x5)": str(exp_of(t)) == "((x1((x2x3)x4))x5)",
    })


def test_criterion_03_golden_sums():
    record(3, "golden dendriform sums", {
        "(1)∔(1) = {(1,1),(1,2)}": coords(star((1,), (1,))) == {(1, 1), (1, 2)},
        "(1)∔(1,1) = {(1,1,1),(1,2,1),(1,2,2)}":
            coords(star((1,), (1, 1))) == {(1, 1, 1), (1, 2, 1), (1, 2, 2)},
        "(1,1)∔(1) = {(1,1,1),(1,3,1)}": coords(star((1, 1), (1,))) == {(1, 1, 1), (1, 3, 1)},
    })


def test_criterion_04_golden_product():
    names = names_upto(4)
    record(4, "golden dendriform product", {
        "(1,2)⋉(1,1) = {(1,1,3,3)}": coords(ltimes((1, 2), (1, 1))) == {(1, 1, 3, 3)},
        "(1) neutral": all(ltimes(v, ONE) == Grove([v]) == ltimes(ONE, v) for v in names),
        "(0) left-annihilates": all(ltimes(ZERO, v) == Grove([ZERO]) for v in names),
    })


def _axioms_hold(x, y, z):
    return (
        dend_left(dend_left(x, y), z) == dend_left(x, star(y, z))
        and dend_left(dend_right(x, y), z) == dend_right(x, dend_left(y, z))
        and dend_right(star(x, y), z) == dend_right(x, dend_right(y, z))
    )


def _l_monoid_holds(u, v, w):
    return (
        over(over(u, v), w) == over(u, over(v, w))
        and under(under(u, v), w) == under(u, under(v, w))
        and over(u, under(v, w)) == under(over(u, v), w)
    )


def _star_assoc_holds(u, v, w):
    left = star(star(u, v), w)
    if left != star(u, star(v, w)):
        return False
    lo, hi = over(over(u, v), w), under(under(u, v), w)
    return left.names == {t for t in enumerate_names(lo.degree) if leq(lo, t) and leq(t, hi)}


def _split_holds(v, w):
    l, r = dend_left(v, w), dend_right(v, w)
    return not (l.names & r.names) and (l | r) == star(v, w)


def _cancel_holds(v, x, y):
    if x == y:
        return True
    return (
        star(v, x) != star(v, y)
        and star(x, v) != star(y, v)
        and ltimes(v, x) != ltimes(v, y)
        and ltimes(x, v) != ltimes(y, v)
    )


def test_criterion_05_dendriform_laws():
    small = names_upto(2)
    rng = random.Random(2024)
    big = names_upto(4)
    triples = [tuple(rng.choice(big) for _ in range(3)) for _ in range(40)]
    same_degree = []
    for _ in range(40):
        v = rng.choice(big)
        n = rng.randint(1, 4)
        x, y = rng.choice(enumerate_names(n)), rng.choice(enumerate_names(n))
        same_degree.append((v, x, y))
    exhaustive_cancel = all(
        _cancel_holds(v, x, y)
        for v in small
        for n in (1, 2)
        for x, y in combinations(enumerate_names(n), 2)
    )
    record(5, "dendriform axioms, L-monoid, ⋆ associativity, splitting, cancellation", {
        "axioms exhaustive deg<=2": all(_axioms_hold(*t) for t in product(small, repeat=3)),
        "axioms random deg<=4": all(_axioms_hold(*t) for t in triples),
        "L-monoid exhaustive deg<=2": all(_l_monoid_holds(*t) for t in product(small, repeat=3)),
        "L-monoid random deg<=4": all(_l_monoid_holds(*t) for t in triples),
        "⋆ associativity + triple interval deg<=2": all(_star_assoc_holds(*t) for t in product(small, repeat=3)),
        "⋆ associativity + triple interval random deg<=4": all(_star_assoc_holds(*t) for t in triples[:15]),
        "splitting exhaustive deg<=2": all(_split_holds(v, w) for v, w in product(small, repeat=2)),
        "splitting random deg<=4": all(_split_holds(t[0], t[1]) for t in triples),
        "cancellation exhaustive deg<=2": exhaustive_cancel,
        "cancellation random deg<=4": all(_cancel_holds(*t) for t in same_degree),
    })


def test_criterion_06_mobius():
    closed_vs_poset = all(
        mobius_closed(v) == mobius_poset(minimum(n), v) for n in range(1, 6) for v in enumerate_names(n)
    )
    names = names_upto(4)
    over_ok = all(
        mobius_closed(over(v, w)) == mobius_closed(v) * mobius_closed(w) for v, w in product(names, repeat=2)
    )

    def under_want(v, w):
        m = w.degree
        return (-1) ** m * mobius_closed(v) if w.coords == tuple(range(1, m + 1)) else 0

    under_ok = all(mobius_closed(under(v, w)) == under_want(v, w) for v, w in product(names, repeat=2))
    anti = all(
        mobius_poset(v, w) == mobius_poset(dagger(w), dagger(v))
        for n in range(1, 6)
        for v in enumerate_names(n)
        for w in enumerate_names(n)
        if leq(v, w)
    )
    record(6, "Möbius identities", {
        "closed form = poset recursion deg<=5": closed_vs_poset,
        "M(v↗w) = M(v)M(w) deg<=4": over_ok,
        "M(v↘w) identity deg<=4": under_ok,
        "M(v,w) = M(w†,v†) deg<=5": anti,
    })


def test_criterion_07_involution():
    counts = {n: sum(dagger(v) == v for v in enumerate_names(n)) for n in range(1, 9)}
    record(7, "involution", {
        "†² = id deg<=8": all(dagger(dagger(v)) == v for v in names_upto(8, 0)),
        "self-dual even degrees 0": all(counts[n] == 0 for n in (2, 4, 6, 8)),
        "self-dual degrees 1,3,5,7 = 1,1,2,5": [counts[n] for n in (1, 3, 5, 7)] == [1, 1, 2, 5],
    })


def test_criterion_08_primality():
    record(8, "primality census", {
        "degree 3 all prime": all(is_prime(v) for v in enumerate_names(3)),
        "degree 5 all prime": all(is_prime(v) for v in enumerate_names(5)),
        "degree 4 nonprimes {(1,1,3,3),(1,2,1,4)}": {v.coords for v in nonprimes(4)} == {(1, 1, 3, 3), (1, 2, 1, 4)},
        "degree 6 nonprime count = 2c₂ = 4": len(nonprimes(6)) == 2 * catalan(2),
    })


def test_criterion_09_grove_algebra():
    total = all(
        star(Grove(enumerate_names(n)), Grove(enumerate_names(1))) == Grove(enumerate_names(n + 1))
        for n in range(1, 6)
    )
    rng = random.Random(99)
    recombined = True
    for _ in range(200):
        n = rng.randint(1, 5)
        pool = enumerate_names(n)
        g = Grove(rng.sample(pool, rng.randint(1, len(pool))))
        recombined = recombined and decompose_grove(g).recombine() == g
    d = decompose_grove(Grove.parse("(1,1)+(1,2)"))
    record(9, "grove algebra", {
        "n̲ ∔ 1̲ = (n+1)̲ for n<=5": total,
        "recombination on 200 random groves": recombined,
        "decompose((1,1)+(1,2)) = [(1),(1)], empty residual":
            d.sums == ((Name((1,)), Name((1,))),) and d.residual == EMPTY,
    })


def test_criterion_10_ncp_bridge():
    forward = all(
        name_of(from_partition(to_partition(v.tree()))) == v for v in names_upto(8)
    )
    backward = all(to_partition(from_partition(p)) == p for n in range(1, 9) for p in enumerate_nc(n))
    images = all(
        {to_partition(v.tree()) for v in enumerate_names(n)} == set(enumerate_nc(n)) for n in range(1, 9)
    )
    record(10, "noncrossing-partition bridge", {
        "bijective both ways n<=8": forward and backward,
        "every image noncrossing n<=8": images,
        "partition dagger involutive n<=6": all(
            partition_dagger(partition_dagger(p)) == p for n in range(1, 7) for p in enumerate_nc(n)
        ),
    })


def test_criterion_11_operad_evaluation():
    fs = FormalSpace()
    f = formal_family(fs)
    ex1 = evaluate_partition(f, to_partition(Name((1, 1, 3)).tree()), fs.word(3))
    ex2 = evaluate_partition(f, NCPartition.parse("{1,2}{3}"), fs.word(3))
    big = NCPartition.parse("{1,9}{2,6,7}{3,4}{5}{8}{10}")
    ex3 = evaluate_partition(f, big, fs.word(10))
    chain = composition_chain(big)
    rng = random.Random(11)
    agree = True
    for space in (WordSpace.random(rng, "ab", 6), OperatorValuedSpace(2, 2)):
        fam = moment_family(space)
        for n in range(1, 7):
            for p in enumerate_nc(n):
                op = fold_chain(fam, composition_chain(p))
                for _ in range(5):
                    w = [space.random_element(rng) for _ in range(n)]
                    agree = agree and space.beq(op(w), evaluate_partition(fam, p, w))
    formal_agree = all(
        fold_chain(f, composition_chain(p))(fs.word(n)) == evaluate_partition(f, p, fs.word(n))
        for n in range(1, 7)
        for p in enumerate_nc(n)
    )
    record(11, "operad evaluation", {
        "example 1": ex1 == parse_formal("f2(a1 f1(a2) ⊗ a3)"),
        "example 2": ex2 == parse_formal("f2(a1 ⊗ a2) f1(a3)"),
        "example 3": ex3 == parse_formal("f2(a1 f3(a2 f2(a3 ⊗ a4) f1(a5) ⊗ a6 ⊗ a7) ⊗ f1(a8) a9) f1(a10)"),
        "chain f2∘2f3∘3f2∘5f1∘8f1∘10f1": format_chain(chain) == "f2 ∘2 f3 ∘3 f2 ∘5 f1 ∘8 f1 ∘10 f1"
            and fold_chain(f, chain)(fs.word(10)) == ex3,
        "fold = nested evaluation, NC(n) n<=6, 5 seeded words": agree and formal_agree,
    })


def test_criterion_12_operad_relations():
    rng = random.Random(12)
    spaces = {"scalars": WordSpace.random(rng, "ab", 7), "2x2 matrices": OperatorValuedSpace(2, 2)}
    checks = {}
    for label, space in spaces.items():
        fam = moment_family(space)
        bad = total = 0
        for l, m, n in product(range(1, 6), repeat=3):
            if l + m + n <= 7:
                c, v = operad_laws_check(fam, l, m, n, samples=1, rng=rng)
                total += c
                bad += len(v)
        checks[f"{label}: {total} comparisons, zero violations"] = bad == 0 and total > 0
    broken = 0
    for l, m, n in [(1, 2, 1), (2, 2, 1), (1, 3, 2)]:
        broken += len(operad_laws_check(unbalanced_family(spaces["2x2 matrices"]), l, m, n, 1, rng)[1])
    checks["broken family caught"] = broken > 0
    record(12, "NCP-operad relations", checks)


def test_criterion_13_moments_cumulants():
    semi = MomentTable({"s" * k: v for k, v in zip(range(1, 7), [0, 1, 0, 2, 0, 5])})
    kappa = cumulants_from_moments(semi, 6)
    rng = random.Random(13)
    round_trip = True
    for _ in range(20):
        table = MomentTable({w: random_fraction(rng) for w in words_upto("ab", 6)})
        round_trip = round_trip and moments_from_cumulants(cumulants_from_moments(table, 6), 6, "ab") == table
    record(13, "moments and cumulants", {
        "semicircle κ2 = 1, others 0, n<=6": [kappa["s" * k] for k in range(1, 7)] == [0, 1, 0, 0, 0, 0],
        "20 random two-letter tables round trip n<=6": round_trip,
    })


def test_criterion_14_freeness():
    def semi(letter):
        return MomentTable({letter * k: v for k, v in zip(range(1, 7), [0, 1, 0, 2, 0, 5])})

    rep = freeness_check({"1": semi("s"), "2": semi("t")}, n=5)
    joint = identify(semi("s"), {"t": "s"}, "st", 5)
    neg = freeness_check({"1": semi("s"), "2": semi("t")}, n=5, mixed=joint)
    record(14, "freeness", {
        "alternating centered words vanish, length<=5":
            rep.alternating_checked > 0 and not rep.alternating_nonzero and not rep.mixed_nonzero,
        "identical generators report a nonzero mixed cumulant": bool(neg.mixed_nonzero),
    })


if __name__ == "__main__":
    import sys

    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
