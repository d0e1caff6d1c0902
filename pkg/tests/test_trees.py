import random

from cnfkc.core import BOT, apply_assignment, clause, variables
from cnfkc.errors import ParseError
from cnfkc.hardness import hd
from cnfkc.mpsdope import dope
from cnfkc.trees import (LEAF, Inner, alpha, apply_literal_to_tree,
                         clauses_to_tree, depth_subtrees,
                         doped_clause_of_leafset, extremal_tree, is_leaf,
                         leaf_paths, pure_of_leafset, tree_from_json,
                         tree_stats, tree_to_clauses, tree_to_json,
                         tree_to_term)

import oracles
import pytest


def cs(*clauses):
    return frozenset(clause(c) for c in clauses)


# the six-clause worked tree: v1(v2(v3, v4), v5)
T6 = Inner(1,
           Inner(2, Inner(3, LEAF, LEAF), Inner(4, LEAF, LEAF)),
           Inner(5, LEAF, LEAF))

F6 = cs([1, 2, 3], [1, 2, -3], [1, -2, 4], [1, -2, -4], [-1, 5], [-1, -5])


def test_tree_stats_examples():
    st = tree_stats(T6)
    assert st.hs == 2 and st.height == 3
    assert st.leaves == 6 and st.nodes == 2 * 6 - 1
    assert tree_stats(LEAF) == tree_stats(LEAF)
    assert tree_stats(LEAF).hs == 0 and tree_stats(LEAF).height == 0
    perfect = extremal_tree(3, 3)
    assert tree_stats(perfect).hs == 3 and tree_stats(perfect).leaves == 8


def test_tree_to_clauses_example():
    assert tree_to_clauses(T6) == F6
    assert tree_to_clauses(Inner(1, LEAF, LEAF)) == cs([1], [-1])
    st = tree_stats(T6)
    assert len(F6) == st.leaves
    assert len(variables(F6)) == st.nodes - st.leaves


def test_roundtrip_example():
    assert clauses_to_tree(F6) == T6
    assert clauses_to_tree(cs([1], [-1])) == Inner(1, LEAF, LEAF)


def test_clauses_to_tree_rejects_unsaturated():
    from cnfkc.cli import build_g_n
    with pytest.raises(ParseError):
        clauses_to_tree(build_g_n(3))
    with pytest.raises(ParseError):
        clauses_to_tree(frozenset())


def test_roundtrip_random_corpus():
    rng = random.Random(61)
    for _ in range(200):
        t = oracles.random_tree(rng, rng.randint(1, 16))
        f = tree_to_clauses(t)
        assert clauses_to_tree(f) == t
        assert tree_to_clauses(clauses_to_tree(f)) == f


def test_apply_literal_example():
    t2 = apply_literal_to_tree(T6, 2)
    assert tree_to_clauses(t2) == cs([1, 4], [1, -4], [-1, 5], [-1, -5])
    assert tree_to_clauses(t2) == apply_assignment({2: 1}, F6)


def test_apply_literal_matches_instantiation():
    rng = random.Random(62)
    for _ in range(60):
        t = oracles.random_tree(rng, rng.randint(2, 10))
        inner = sorted(v for v in variables(tree_to_clauses(t)))
        v = rng.choice(inner)
        x = v * rng.choice((1, -1))
        t2 = apply_literal_to_tree(t, x)
        phi = {v: 1 if x > 0 else 0}
        assert tree_to_clauses(t2) == apply_assignment(phi, tree_to_clauses(t))
        # the result stays a path clause-set
        assert clauses_to_tree(tree_to_clauses(t2)) == t2


def test_apply_root_of_smallest():
    t = Inner(1, LEAF, LEAF)
    assert apply_literal_to_tree(t, 1) is LEAF
    assert tree_to_clauses(apply_literal_to_tree(t, 1)) == frozenset([BOT])
    with pytest.raises(ParseError):
        apply_literal_to_tree(t, 2)


def test_extremal_tree_shapes():
    assert tree_stats(extremal_tree(2, 3)).leaves == 7
    for k in (1, 2, 3):
        perfect = extremal_tree(k, k)
        st = tree_stats(perfect)
        assert st.hs == k and st.leaves == 2 ** k
    for h in (1, 2, 3, 4, 5):
        assert tree_stats(extremal_tree(1, h)).leaves == h + 1
    with pytest.raises(ParseError):
        extremal_tree(3, 2)
    with pytest.raises(ParseError):
        extremal_tree(0, 1)
    assert extremal_tree(0, 0) is LEAF


def test_extremal_tree_measures():
    for k in (1, 2, 3):
        for h in range(k, 6):
            t = extremal_tree(k, h)
            st = tree_stats(t)
            assert st.hs == k and st.height == h
            assert st.leaves == alpha(k, h)


def test_alpha_values():
    assert alpha(2, 3) == 7
    assert alpha(0, 0) == 1
    for k in range(1, 6):
        assert alpha(k, k) == 2 ** k


def test_pure_of_leafset_example():
    # leaves numbered left to right; the worked subset is {1,3,4,7}
    t = Inner(1,
              Inner(2, Inner(3, LEAF, LEAF), Inner(4, LEAF, LEAF)),
              Inner(5, Inner(6, LEAF, LEAF), LEAF))
    addr = sorted(leaf_paths(t))
    v = {addr[0], addr[2], addr[3], addr[6]}
    assert pure_of_leafset(t, v) == clause([3, -5])
    # a single leaf gives its own path clause
    paths = leaf_paths(t)
    for a, c in paths.items():
        assert pure_of_leafset(t, {a}) == c
    # all leaves of a branching tree leave nothing pure
    assert pure_of_leafset(t, set(paths)) == BOT


def test_pure_of_leafset_matches_pure_clause():
    from cnfkc.mpsdope import pure_clause
    rng = random.Random(63)
    for _ in range(40):
        t = oracles.random_tree(rng, rng.randint(2, 8))
        paths = leaf_paths(t)
        addrs = rng.sample(sorted(paths), rng.randint(1, len(paths)))
        sub = frozenset(paths[a] for a in addrs)
        assert pure_of_leafset(t, addrs) == pure_clause(sub)


def test_doped_clause_of_leafset_example():
    t = Inner(1, Inner(2, LEAF, LEAF), Inner(3, LEAF, LEAF))
    d = dope(tree_to_clauses(t))
    addr = sorted(leaf_paths(t))
    cv = doped_clause_of_leafset(d, [addr[0], addr[2]])
    inverse = {c: u for u, c in d.doping_map.items()}
    u1 = inverse[clause([1, 2])]
    u3 = inverse[clause([-1, 3])]
    assert cv == frozenset([2, 3, u1, u3])


def test_doped_leafsets_enumerate_primes():
    from cnfkc.primes import prime_implicates
    import itertools
    rng = random.Random(64)
    for _ in range(10):
        t = oracles.random_tree(rng, rng.randint(2, 6))
        d = dope(tree_to_clauses(t))
        addrs = sorted(leaf_paths(t))
        generated = set()
        for r in range(1, len(addrs) + 1):
            for combo in itertools.combinations(addrs, r):
                generated.add(doped_clause_of_leafset(d, combo))
        assert generated == set(prime_implicates(d.doped))


def test_full_clause_iff_hs_at_most_1():
    from cnfkc.core import classify
    rng = random.Random(65)
    for _ in range(60):
        t = oracles.random_tree(rng, rng.randint(1, 10))
        f = tree_to_clauses(t)
        has_full = classify(f).contains_full_clause
        assert has_full == (tree_stats(t).hs <= 1)


def test_depth_subtrees():
    subs = depth_subtrees(T6, 1)
    assert [p for p, _ in subs] == ["0", "1"]
    assert tree_stats(subs[0][1]).leaves == 4
    with pytest.raises(ParseError):
        depth_subtrees(extremal_tree(1, 1), 2)


def test_serialization():
    rng = random.Random(66)
    for _ in range(40):
        t = oracles.random_tree(rng, rng.randint(1, 10))
        assert tree_from_json(tree_to_json(t)) == t
    assert tree_to_term(Inner(1, LEAF, LEAF)) == "(1 . .)"
    assert tree_to_term(LEAF) == "."


def test_duplicate_labels_rejected():
    bad = Inner(1, Inner(1, LEAF, LEAF), LEAF)
    with pytest.raises(ParseError):
        tree_to_clauses(bad)


def test_hd_equals_hs_small():
    rng = random.Random(67)
    for _ in range(20):
        t = oracles.random_tree(rng, rng.randint(1, 10))
        f = tree_to_clauses(t)
        assert hd(f) == tree_stats(t).hs
