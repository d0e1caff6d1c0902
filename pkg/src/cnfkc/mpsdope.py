"""Minimal premise sets, minimal unsatisfiability classes, and doping.

Doping tags every clause of f with a fresh positive literal; the prime
implicates of the doped clause-set then enumerate exactly the minimal
premise sets of f, with the doping variables naming the members.
"""

import itertools
from dataclasses import dataclass

from .core import (assignment_satisfies, clause_falsifier, literals_of,
                   sorted_clauses, variables)
from .errors import CapExceededError
from .primes import implies, prime_implicates
from .propagation import sat_oracle


def pure_clause(f):
    """Literals of f whose complement never occurs in f."""
    lits = literals_of(f)
    return frozenset(x for x in lits if -x not in lits)


@dataclass(frozen=True)
class MuFlags:
    mu: bool
    smu: bool
    smu_delta1: bool


def classify_mu(f, cap_vars=24):
    """Minimal, saturated, and deficiency-1 saturated unsatisfiability."""
    ok, _ = sat_oracle(f, cap_vars=cap_vars)
    if ok:
        return MuFlags(False, False, False)
    mu = all(sat_oracle(f - {c}, cap_vars=cap_vars)[0] for c in f)
    smu = mu
    if mu:
        vs = variables(f)
        for c in f:
            rest = f - {c}
            for v in sorted(vs - {abs(x) for x in c}):
                for x in (v, -v):
                    widened = rest | {c | {x}}
                    if not sat_oracle(widened, cap_vars=cap_vars)[0]:
                        smu = False
                        break
                if not smu:
                    break
            if not smu:
                break
    delta = len(f) - len(variables(f))
    return MuFlags(mu=mu, smu=smu, smu_delta1=smu and delta == 1)


def _clause_images(phi, f):
    """Per-clause instantiation by phi, keeping one image per clause.

    Assumes phi satisfies no literal of f (true for falsifiers of the
    pure clause).
    """
    images = []
    for c in sorted_clauses(f):
        kept = frozenset(
            x for x in c if assignment_satisfies(phi, x) is None)
        images.append(kept)
    return images


def is_mps(f, cap_vars=24):
    """Is f a minimal premise set (of its pure clause)?

    Returns (flag, pure clause).  Criterion: instantiating by the
    falsifier of the pure clause must be contraction-free on f and leave
    a minimally unsatisfiable clause-set.
    """
    pure = pure_clause(f)
    if not f:
        return False, pure
    phi = clause_falsifier(pure)
    images = _clause_images(phi, f)
    if len(set(images)) != len(images):
        return False, pure
    flags = classify_mu(frozenset(images), cap_vars=cap_vars)
    return flags.mu, pure


@dataclass(frozen=True)
class MpsFamily:
    members: dict  # clause-set -> its pure clause


def mps_enumerate(f, cap_clauses=16, cap_vars=24):
    """All minimal premise subsets of f, by direct subset scan."""
    if len(f) > cap_clauses:
        raise CapExceededError(
            "minimal premise enumeration capped at %d clauses" % cap_clauses)
    order = sorted_clauses(f)
    members = {}
    for size in range(1, len(order) + 1):
        for combo in itertools.combinations(order, size):
            sub = frozenset(combo)
            flag, pure = is_mps(sub, cap_vars=cap_vars)
            if flag:
                members[sub] = pure
    return MpsFamily(members=members)


@dataclass(frozen=True)
class DopedClauseSet:
    base: frozenset
    doped: frozenset
    doping_map: dict  # doping variable -> original clause


def dope(f):
    """Add one fresh positive literal per clause, in canonical order."""
    base_vars = variables(f)
    start = max(base_vars, default=0)
    doping = {}
    doped = set()
    for i, c in enumerate(sorted_clauses(f), start=1):
        u = start + i
        doping[u] = c
        doped.add(c | {u})
    return DopedClauseSet(base=f, doped=frozenset(doped), doping_map=doping)


def undope_prime(prime, doping_map):
    """Split a doped prime implicate into (member clause-set, pure clause)."""
    member = frozenset(doping_map[abs(x)] for x in prime
                       if abs(x) in doping_map)
    pure = frozenset(x for x in prime if abs(x) not in doping_map)
    return member, pure


def mps_via_doping(f, cap_vars=24):
    """Minimal premise sets of f read off the doped prime implicates."""
    d = dope(f)
    if len(variables(d.doped)) > cap_vars:
        raise CapExceededError(
            "doped prime route capped at %d variables" % cap_vars)
    members = {}
    for prime in prime_implicates(d.doped):
        member, pure = undope_prime(prime, d.doping_map)
        members[member] = pure
    return MpsFamily(members=members)


def is_total_mps(f, cap_vars=24):
    """Every non-empty subset of f a minimal premise set?

    Holds exactly when instantiating by the falsifier of the pure clause
    is contraction-free and lands in saturated minimal unsatisfiability
    with deficiency 1.
    """
    if not f:
        return False
    phi = clause_falsifier(pure_clause(f))
    images = _clause_images(phi, f)
    if len(set(images)) != len(images):
        return False
    return classify_mu(frozenset(images), cap_vars=cap_vars).smu_delta1


def has_max_doped_primes(f, cap_vars=24):
    """Does the doped version reach 2^c - 1 prime implicates?

    True iff f is a total minimal premise set and every clause keeps a
    literal private to itself.
    """
    if not is_total_mps(f, cap_vars=cap_vars):
        return False
    for c in f:
        others = literals_of(f - {c}) | {-x for x in literals_of(f - {c})}
        if not any(x not in others for x in c):
            return False
    return True


def entailed_pure(f, cap_vars=24):
    """Does f entail its own pure clause?  (Prerequisite for premise sets.)"""
    return implies(f, pure_clause(f), cap_vars=cap_vars)


def mps_report(f, cap_clauses=16, cap_vars=24):
    """Direct and doped enumerations side by side; they must agree."""
    direct = mps_enumerate(f, cap_clauses=cap_clauses, cap_vars=cap_vars)
    doped = mps_via_doping(f, cap_vars=cap_vars)
    return direct, doped
