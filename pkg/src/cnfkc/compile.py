"""Level-k base compilation, subset-collapse prime computation, and the
knowledge-compilation query suite."""

import itertools
from dataclasses import dataclass

from .core import (TOP, apply_assignment, clause_falsifier, clause_key,
                   sorted_clauses, subsumption_eliminate, variables)
from .errors import CapExceededError, IntegrityError, ParseError
from .hardness import hd_at_most, k_res_refutes
from .mpsdope import pure_clause
from .primes import implies
from .propagation import sat_oracle


@dataclass(frozen=True)
class KBase:
    clauses: frozenset
    level: int
    minimal: bool
    added: tuple = ()
    removed: tuple = ()
    anomaly: bool = False


def _equivalent_subset(sub, primes):
    return all(implies(sub, c) for c in primes - sub)


def k_base(primes, k, mode="heuristic", cap_primes=18):
    """Equivalent subset of the primes with propagation hardness <= k.

    Heuristic: seed with the essential primes, add the rest by ascending
    size until the subset is equivalent and within hardness k, then sweep
    removals by descending size (repeated to a fixpoint) so the result is
    minimal clause-wise.  Exhaustive mode instead scans subsets by
    ascending size for a true minimum.
    """
    primes = frozenset(primes)
    order = sorted_clauses(primes)
    ess = frozenset(c for c in order
                    if not implies(primes - {c}, c))

    def good(sub):
        return (_equivalent_subset(sub, primes)
                and hd_at_most(sub, k, primes))

    if mode == "exhaustive":
        # every equivalent subset contains all essential primes, so a
        # good essential core is already the unique minimum
        if good(ess):
            return KBase(clauses=ess, level=k, minimal=True)
        if len(order) > cap_primes:
            raise CapExceededError(
                "exhaustive base search capped at %d primes" % cap_primes)
        others = [c for c in order if c not in ess]
        for size in range(len(ess), len(order) + 1):
            for combo in itertools.combinations(others, size - len(ess)):
                sub = ess | frozenset(combo)
                if good(sub):
                    return KBase(clauses=sub, level=k, minimal=True)
        raise AssertionError("full prime set rejected; search is broken")

    current = set(ess)
    added = []
    # an equivalent-but-too-hard essential core would be noteworthy; the
    # flag records whether additions started from an equivalent set
    anomaly = (_equivalent_subset(frozenset(current), primes)
               and not hd_at_most(frozenset(current), k, primes))
    for c in order:
        if good(frozenset(current)):
            break
        if c not in current:
            current.add(c)
            added.append(c)
    removed = []
    changed = True
    while changed:
        changed = False
        for c in sorted(current, key=lambda c: (-len(c), clause_key(c))):
            trial = frozenset(current - {c})
            if good(trial):
                current = set(trial)
                removed.append(c)
                changed = True
    return KBase(clauses=frozenset(current), level=k, minimal=True,
                 added=tuple(added), removed=tuple(removed),
                 anomaly=anomaly)


def canon_primes(f, big_k, cap_subsets=2 ** 22):
    """Prime implicates via bounded-size subset collapse.

    Every subset of at most big_k clauses entailing its own pure clause
    contributes that clause; subsumption elimination keeps the minimal
    ones.  Equals the full prime set whenever every prime has a premise
    of at most big_k clauses (always true at big_k = c(f))."""
    order = sorted_clauses(f)
    total = sum(1 for size in range(1, big_k + 1)
                for _ in itertools.combinations(range(len(order)), size))
    if total > cap_subsets:
        raise CapExceededError(
            "subset collapse over %d candidates exceeds cap" % total)
    collected = set()
    for size in range(1, big_k + 1):
        for combo in itertools.combinations(order, size):
            sub = frozenset(combo)
            pure = pure_clause(sub)
            if implies(sub, pure):
                collected.add(pure)
    return subsumption_eliminate(collected)


def answer_query(kind, f, k, clause=None, assignment=None, other=None,
                 verify=False, cap_models=2 ** 20):
    """Knowledge-compilation queries answered by level-k resolution only.

    The caller promises that unsatisfiable instantiations of f are always
    refutable with one parent of size <= k; a violation discovered during
    model enumeration raises an integrity error naming the witness.
    """
    if verify:
        from .hardness import whd
        if whd(f) > k:
            raise IntegrityError("input exceeds asymmetric width %d" % k)
    if kind == "CO":
        return not k_res_refutes(f, k)[0]
    if kind == "CE":
        if clause is None:
            raise ParseError("CE needs a clause")
        g = apply_assignment(clause_falsifier(clause), f)
        return k_res_refutes(g, k)[0]
    if kind == "VA":
        return f == TOP
    if kind == "IM":
        if assignment is None:
            raise ParseError("IM needs an assignment")
        return apply_assignment(assignment, f) == TOP
    if kind == "SE":
        if other is None:
            raise ParseError("SE needs a second clause-set")
        return all(answer_query("CE", f, k, clause=c) for c in other)
    if kind == "EQ":
        if other is None:
            raise ParseError("EQ needs a second clause-set")
        return (answer_query("SE", f, k, other=other)
                and answer_query("SE", other, k, other=f))
    if kind == "ME":
        return enumerate_models(f, k, cap_models=cap_models)
    if kind == "MC":
        return len(enumerate_models(f, k, cap_models=cap_models))
    raise ParseError("unknown query kind %r" % kind)


def enumerate_models(f, k, cap_models=2 ** 20):
    """All total models over var(f), found by a decision tree whose dead
    branches are cut by level-k refutation (never by full search)."""
    vs = sorted(variables(f))
    out = []

    def rec(i, phi, g):
        if g == TOP:
            rest = vs[i:]
            for bits in itertools.product((0, 1), repeat=len(rest)):
                model = dict(phi)
                model.update(zip(rest, bits))
                out.append(model)
                if len(out) > cap_models:
                    raise CapExceededError(
                        "model enumeration exceeded %d" % cap_models)
            return True
        if k_res_refutes(g, k)[0]:
            return False
        if i == len(vs):
            raise AssertionError(
                "total assignment left a clause-set that is neither "
                "satisfied nor refutable")
        zero = dict(phi)
        zero[vs[i]] = 0
        one = dict(phi)
        one[vs[i]] = 1
        left = rec(i + 1, zero, apply_assignment({vs[i]: 0}, g))
        right = rec(i + 1, one, apply_assignment({vs[i]: 1}, g))
        if not (left or right):
            raise IntegrityError(
                "level-%d resolution missed an unsatisfiable branch" % k,
                witness=dict(phi))
        return True

    rec(0, {}, f)
    return out


def check_query_against_oracle(kind, f, k, cap_vars=16, **extra):
    """Semantic recomputation of a query answer (test support)."""
    if kind == "CO":
        return sat_oracle(f, cap_vars=cap_vars)[0]
    if kind == "CE":
        return implies(f, extra["clause"], cap_vars=cap_vars)
    raise ParseError("no oracle for %r" % kind)
