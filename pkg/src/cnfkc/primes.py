"""Prime implicates and implicants, entailment, equivalence."""

import itertools
from dataclasses import dataclass

from .core import (BOT, TOP, apply_assignment, clause_falsifier, clause_key,
                   resolvable, resolve, sorted_clauses, subsumption_eliminate,
                   variables)
from .errors import CapExceededError
from .propagation import sat_oracle


def implies(f, c, cap_vars=24):
    """Does every model of f satisfy clause c?"""
    g = apply_assignment(clause_falsifier(c), f)
    ok, _ = sat_oracle(g, cap_vars=cap_vars)
    return not ok


def equivalent(f, g, cap_vars=24):
    """Logical equivalence via mutual clause entailment."""
    return (all(implies(f, c, cap_vars) for c in g)
            and all(implies(g, c, cap_vars) for c in f))


def prime_implicates(f, cap_clauses=100000):
    """Resolution closure of f with subsumption elimination interleaved.

    Returns exactly the inclusion-minimal implicates.  TOP yields TOP,
    anything unsatisfiable yields {BOT}.
    """
    current = subsumption_eliminate(f)
    while True:
        cls = sorted_clauses(current)
        fresh = set()
        for i in range(len(cls)):
            for j in range(i):
                if not resolvable(cls[i], cls[j]):
                    continue
                r = resolve(cls[i], cls[j])
                if r not in current and not any(d <= r for d in current):
                    fresh.add(r)
        if not fresh:
            return current
        current = subsumption_eliminate(current | fresh)
        if len(current) > cap_clauses:
            raise CapExceededError(
                "prime implicate closure exceeded %d clauses" % cap_clauses)


def prime_implicates_bruteforce(f, cap_vars=12):
    """Independent oracle: enumerate candidate clauses by ascending size.

    Every implied clause with no implied strict subclause is prime.  Kept
    deliberately naive (3^n candidates) for cross-checking the closure.
    """
    vs = sorted(variables(f))
    if len(vs) > cap_vars:
        raise CapExceededError(
            "brute-force prime enumeration capped at %d variables" % cap_vars)
    primes = []
    for size in range(0, len(vs) + 1):
        for chosen in itertools.combinations(vs, size):
            for signs in itertools.product((1, -1), repeat=size):
                c = frozenset(v * s for v, s in zip(chosen, signs))
                if any(p <= c for p in primes):
                    continue
                if implies(f, c):
                    primes.append(c)
    return frozenset(primes)


def prime_implicants(f, cap_count=100000):
    """Minimal clash-free hitting sets of f (term representation).

    For unsatisfiable f there are none; for TOP the empty term qualifies.
    """
    if BOT in f:
        return TOP
    found = set()
    order = sorted_clauses(f)

    def rec(partial, idx):
        if len(found) > cap_count:
            raise CapExceededError(
                "prime implicant enumeration exceeded %d terms" % cap_count)
        while idx < len(order) and any(x in partial for x in order[idx]):
            idx += 1
        if idx == len(order):
            found.add(frozenset(partial))
            return
        for x in clause_key(order[idx]):
            if -x not in partial:
                rec(partial | {x}, idx + 1)

    rec(frozenset(), 0)
    return subsumption_eliminate(found)


def essential_primes(f, cap_vars=24):
    """Primes that no other primes can replace."""
    primes = prime_implicates(f)
    out = set()
    for c in primes:
        rest = primes - {c}
        if not implies(rest, c, cap_vars=cap_vars):
            out.add(c)
    return frozenset(out)


@dataclass(frozen=True)
class PrimeReport:
    primes: frozenset
    essential: frozenset
    count: int
    essential_count: int


def prime_report(f, cap_vars=24):
    primes = prime_implicates(f)
    ess = essential_primes(f, cap_vars=cap_vars)
    return PrimeReport(primes=primes, essential=ess,
                       count=len(primes), essential_count=len(ess))
