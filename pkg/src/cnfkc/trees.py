"""Labeled full binary trees and their clause-set translation.

A tree is either a Leaf or an Inner node carrying a variable; the left
edge stands for the positive literal of the node variable, the right edge
for its complement.  Translating the root-to-leaf paths gives exactly the
saturated minimally unsatisfiable clause-sets of deficiency 1, and the
Horton-Strahler number of the tree is the propagation hardness.
"""

import json
from dataclasses import dataclass
from math import comb

from .core import BOT, apply_assignment
from .errors import ParseError


@dataclass(frozen=True)
class Leaf:
    pass


@dataclass(frozen=True)
class Inner:
    var: int
    left: object
    right: object


LEAF = Leaf()


def is_leaf(t):
    return isinstance(t, Leaf)


@dataclass(frozen=True)
class TreeStats:
    hs: int
    height: int
    leaves: int
    nodes: int


def tree_stats(t):
    """Horton-Strahler number, height, leaf and node counts."""
    if is_leaf(t):
        return TreeStats(hs=0, height=0, leaves=1, nodes=1)
    a = tree_stats(t.left)
    b = tree_stats(t.right)
    hs = max(a.hs, b.hs) if a.hs != b.hs else a.hs + 1
    return TreeStats(hs=hs, height=1 + max(a.height, b.height),
                     leaves=a.leaves + b.leaves,
                     nodes=1 + a.nodes + b.nodes)


def inner_variables(t):
    if is_leaf(t):
        return set()
    return {t.var} | inner_variables(t.left) | inner_variables(t.right)


def _check_labels(t):
    seen = set()

    def walk(node):
        if is_leaf(node):
            return
        if node.var in seen:
            raise ParseError("tree label %d repeats" % node.var)
        seen.add(node.var)
        walk(node.left)
        walk(node.right)

    walk(t)


def leaf_paths(t):
    """Map root-to-leaf address ('0' = left) to the path clause.

    The path clause collects the literal of each edge taken: positive on
    a left edge, complemented on a right edge.
    """
    out = {}

    def walk(node, addr, lits):
        if is_leaf(node):
            out[addr] = frozenset(lits)
            return
        walk(node.left, addr + "0", lits + [node.var])
        walk(node.right, addr + "1", lits + [-node.var])

    walk(t, "", [])
    return out


def tree_to_clauses(t):
    """Clause-set of all path clauses (one per leaf)."""
    _check_labels(t)
    paths = leaf_paths(t)
    f = frozenset(paths.values())
    if len(f) != len(paths):
        raise AssertionError("distinct leaves share a path clause")
    return f


def clauses_to_tree(f):
    """Inverse translation; input must be a path clause-set.

    The root variable is the unique variable occurring in every clause;
    subtrees come from instantiating it either way.  Inputs outside the
    image of tree_to_clauses are rejected with a diagnosis.
    """
    t = _rebuild(f)
    _check_labels(t)
    if tree_to_clauses(t) != f:
        raise ParseError("clause-set is not a path clause-set")
    return t


def _rebuild(f):
    if f == frozenset([BOT]):
        return LEAF
    if not f:
        raise ParseError("empty clause-set has no tree form")
    common = None
    for c in f:
        vs = {abs(x) for x in c}
        common = vs if common is None else common & vs
    if not common:
        raise ParseError("no variable occurs in every clause")
    v = min(common)
    left = apply_assignment({v: 0}, f)
    right = apply_assignment({v: 1}, f)
    return Inner(var=v, left=_rebuild(left), right=_rebuild(right))


def apply_literal_to_tree(t, x):
    """Tree counterpart of instantiating by x -> 1.

    The node labeled with var(x) drops the subtree whose edge literal
    became false and its sibling takes the node's place.
    """
    if abs(x) not in inner_variables(t):
        raise ParseError("variable %d labels no inner node" % abs(x))
    return _apply_lit(t, x)


def _apply_lit(t, x):
    if is_leaf(t):
        return t
    if t.var == abs(x):
        return t.right if x > 0 else t.left
    return Inner(var=t.var,
                 left=_apply_lit(t.left, x),
                 right=_apply_lit(t.right, x))


def extremal_tree(k, h):
    """Canonical largest tree of Horton-Strahler number k and height h.

    Needs h >= k, and k = 0 forces h = 0.  At k = 1 the right child is
    always a leaf; at k >= 2 the left subtree keeps the full budget
    min(k, h-1) while the right one drops to k - 1.  The higher-rated
    subtree sits on the left.  Inner nodes are labeled 1.. in preorder.
    """
    if k < 0 or h < k or (k == 0 and h != 0):
        raise ParseError("no extremal tree for hs=%d height=%d" % (k, h))
    counter = [0]

    def build(kk, hh):
        if kk == 0:
            return LEAF
        counter[0] += 1
        v = counter[0]
        if kk == 1:
            return Inner(var=v, left=build(1 if hh > 1 else 0, hh - 1),
                         right=LEAF)
        return Inner(var=v, left=build(min(kk, hh - 1), hh - 1),
                     right=build(kk - 1, hh - 1))

    return build(k, h)


def alpha(k, h):
    """Leaf count of the extremal tree: sum of C(h, i) for i <= k."""
    return sum(comb(h, i) for i in range(0, min(k, h) + 1))


def pure_of_leafset(t, addrs):
    """Pure clause of the path clauses named by leaf addresses."""
    paths = leaf_paths(t)
    try:
        sub = [paths[a] for a in addrs]
    except KeyError as e:
        raise ParseError("unknown leaf address %s" % e)
    lits = {x for c in sub for x in c}
    return frozenset(x for x in lits if -x not in lits)


def doped_clause_of_leafset(doped, addrs):
    """Prime implicate of a doped tree clause-set picked by leaf addresses.

    `doped` is the DopedClauseSet of a path clause-set; the result joins
    the doping variables of the chosen leaves with the pure clause of
    their path clauses.
    """
    t = clauses_to_tree(doped.base)
    paths = leaf_paths(t)
    inverse = {c: u for u, c in doped.doping_map.items()}
    lits = set()
    for a in addrs:
        if a not in paths:
            raise ParseError("unknown leaf address %s" % a)
        lits.add(inverse[paths[a]])
    return frozenset(lits) | pure_of_leafset(t, addrs)


def depth_subtrees(t, k):
    """Subtrees rooted at depth exactly k, left to right, with address
    prefixes.  Fails if a leaf sits above depth k."""
    if k == 0:
        return [("", t)]
    if is_leaf(t):
        raise ParseError("leaf above the requested depth")
    return ([("0" + p, s) for p, s in depth_subtrees(t.left, k - 1)]
            + [("1" + p, s) for p, s in depth_subtrees(t.right, k - 1)])


def tree_to_json(t):
    def conv(node):
        if is_leaf(node):
            return "leaf"
        return {"var": node.var, "left": conv(node.left),
                "right": conv(node.right)}

    return json.dumps(conv(t), sort_keys=True)


def tree_from_json(text):
    def conv(obj):
        if obj == "leaf":
            return LEAF
        if isinstance(obj, dict) and set(obj) == {"var", "left", "right"}:
            return Inner(var=int(obj["var"]), left=conv(obj["left"]),
                         right=conv(obj["right"]))
        raise ParseError("bad tree json node: %r" % (obj,))

    t = conv(json.loads(text))
    _check_labels(t)
    return t


def tree_to_term(t):
    """Compact parenthesized rendering, '.' for leaves."""
    if is_leaf(t):
        return "."
    return "(%d %s %s)" % (t.var, tree_to_term(t.left),
                           tree_to_term(t.right))
