"""Hardness measures: propagation hardness, p-hardness, asymmetric and
symmetric width, and the width-based resolution size bound."""

import itertools
import math
from dataclasses import dataclass

from .core import (BOT, apply_assignment, clause_falsifier, resolve,
                   sorted_clauses, variables)
from .errors import CapExceededError
from .primes import prime_implicates
from .propagation import propagate, propagate_full, sat_oracle


def k_res_refutes(f, k, cap_clauses=200000, want_trace=False):
    """Can f be refuted by resolution where one parent has size <= k?

    Returns (refuted, trace); the trace lists (clause, parent, parent)
    derivation steps ending in the empty clause when requested.
    """
    seen = {}
    order = []
    for c in sorted_clauses(f):
        if c not in seen:
            seen[c] = None
            order.append(c)
    if BOT in seen:
        return True, ([] if want_trace else None)
    i = 0
    while i < len(order):
        c = order[i]
        for j in range(i):
            d = order[j]
            if len(c) > k and len(d) > k:
                continue
            clash = [x for x in c if -x in d]
            if len(clash) != 1:
                continue
            r = resolve(c, d)
            if r in seen:
                continue
            seen[r] = (c, d)
            order.append(r)
            if r == BOT:
                return True, (_trace(seen, r) if want_trace else None)
        i += 1
        if len(order) > cap_clauses:
            raise CapExceededError(
                "bounded resolution exceeded %d clauses" % cap_clauses)
    return False, None


def _trace(seen, goal):
    steps = []
    stack = [goal]
    done = set()
    while stack:
        c = stack.pop()
        if c in done:
            continue
        done.add(c)
        par = seen[c]
        if par is not None:
            steps.append((c, par[0], par[1]))
            stack.extend(par)
    steps.reverse()
    return steps


def width_refutes(f, w, cap_clauses=200000):
    """Resolution refutation where every clause (axioms too) has size <= w."""
    start = [c for c in sorted_clauses(f) if len(c) <= w]
    seen = set(start)
    order = list(start)
    if BOT in seen:
        return True
    i = 0
    while i < len(order):
        c = order[i]
        for j in range(i):
            d = order[j]
            clash = [x for x in c if -x in d]
            if len(clash) != 1:
                continue
            r = resolve(c, d)
            if len(r) > w or r in seen:
                continue
            seen.add(r)
            order.append(r)
            if r == BOT:
                return True
        i += 1
        if len(order) > cap_clauses:
            raise CapExceededError(
                "width-bounded resolution exceeded %d clauses" % cap_clauses)
    return False


def _min_refute_level(f, cache):
    """Smallest k with level-k propagation refuting the unsatisfiable f."""
    bound = len(variables(f)) + 1
    for k in range(bound + 1):
        if propagate(f, k, cache=cache).refuted:
            return k
    raise AssertionError("unsatisfiable input not refuted at saturation")


def hd(f, cap_vars=24, primes=None):
    """Propagation hardness.

    Unsatisfiable: smallest k whose propagation refutes f.  Satisfiable:
    worst case over the prime implicates c of the level needed to refute
    the instantiation by the falsifier of c.
    """
    if not f:
        return 0
    cache = {}
    ok, _ = sat_oracle(f, cap_vars=cap_vars)
    if not ok:
        return _min_refute_level(f, cache)
    if primes is None:
        primes = prime_implicates(f)
    return max(
        _min_refute_level(apply_assignment(clause_falsifier(c), f), cache)
        for c in primes)


def hd_at_most(f, k, primes, cache=None):
    """Fast check hd(f) <= k for satisfiable f with known prime implicates."""
    if cache is None:
        cache = {}
    return all(
        propagate(apply_assignment(clause_falsifier(c), f), k,
                  cache=cache).refuted
        for c in primes)


def whd(f, cap_vars=24, primes=None):
    """Asymmetric width: one resolution parent bounded per step."""
    if not f:
        return 0
    ok, _ = sat_oracle(f, cap_vars=cap_vars)
    if not ok:
        return _whd_unsat(f)
    if primes is None:
        primes = prime_implicates(f)
    return max(
        _whd_unsat(apply_assignment(clause_falsifier(c), f))
        for c in primes)


def _whd_unsat(f):
    for k in itertools.count():
        if k_res_refutes(f, k)[0]:
            return k
    raise AssertionError


def whd_at_most(f, k, primes):
    return all(
        k_res_refutes(apply_assignment(clause_falsifier(c), f), k)[0]
        for c in primes)


def wid(f, cap_vars=24, primes=None):
    """Symmetric width: every clause of the refutation bounded."""
    if not f:
        return 0
    ok, _ = sat_oracle(f, cap_vars=cap_vars)
    if not ok:
        return _wid_unsat(f)
    if primes is None:
        primes = prime_implicates(f)
    return max(
        _wid_unsat(apply_assignment(clause_falsifier(c), f))
        for c in primes)


def _wid_unsat(f):
    for w in itertools.count():
        if width_refutes(f, w):
            return w
    raise AssertionError


def phd(f, cap_vars=12):
    """p-hardness: smallest k where level-k propagation already computes
    the saturation-level reduction under every partial assignment.

    Exhaustive over 3^n partial assignments; capped accordingly.
    """
    best, _ = _phd_with_witness(f, cap_vars=cap_vars)
    return best


def res_lower_bound(whd_value, n):
    """exp(whd^2 / (8 n)): a floor on resolution refutation size."""
    if n == 0:
        return 1.0
    return math.exp(whd_value * whd_value / (8.0 * n))


@dataclass(frozen=True)
class HardnessReport:
    hd: int
    whd: int
    wid: int
    phd: int
    witnesses: dict


def hardness_report(f, cap_vars=12):
    """All four measures plus per-measure certificates: the critical
    prime implicate for the sat-case maxima, the demanding partial
    assignment for p-hardness."""
    witnesses = {}
    if not f:
        return HardnessReport(0, 0, 0, 0, witnesses)
    ok, _ = sat_oracle(f, cap_vars=24)
    primes = None if not ok else prime_implicates(f)
    cache = {}

    def lift(single):
        if not ok:
            return single(f), None
        best, crit = -1, None
        for c in sorted_clauses(primes):
            v = single(apply_assignment(clause_falsifier(c), f))
            if v > best:
                best, crit = v, c
        return best, crit

    v, crit = lift(lambda g: _min_refute_level(g, cache))
    witnesses["hd"] = {"critical_prime": crit, "level": v}
    v_whd, crit_whd = lift(_whd_unsat)
    witnesses["whd"] = {"critical_prime": crit_whd, "level": v_whd}
    v_wid, crit_wid = lift(_wid_unsat)
    witnesses["wid"] = {"critical_prime": crit_wid, "level": v_wid}
    v_phd, phi = _phd_with_witness(f, cap_vars=cap_vars)
    witnesses["phd"] = {"assignment": phi, "level": v_phd}
    return HardnessReport(hd=v, whd=v_whd, wid=v_wid, phd=v_phd,
                          witnesses=witnesses)


def report_to_json(rep):
    import json

    def conv(w):
        out = {}
        for key, value in w.items():
            if key == "critical_prime":
                out[key] = (None if value is None
                            else sorted(value, key=lambda x: (abs(x), x < 0)))
            elif key == "assignment":
                out[key] = {str(v): b for v, b in sorted(value.items())}
            else:
                out[key] = value
        return out

    doc = {"hd": rep.hd, "whd": rep.whd, "wid": rep.wid, "phd": rep.phd,
           "witnesses": {name: conv(w) for name, w in rep.witnesses.items()}}
    return json.dumps(doc, sort_keys=True, indent=1)


def _phd_with_witness(f, cap_vars=12):
    vs = sorted(variables(f))
    if len(vs) > cap_vars:
        raise CapExceededError(
            "p-hardness enumeration capped at %d variables" % cap_vars)
    cache = {}
    seen = set()
    best = 0
    witness = {}
    for values in itertools.product((None, 0, 1), repeat=len(vs)):
        phi = {v: b for v, b in zip(vs, values) if b is not None}
        g = apply_assignment(phi, f)
        if g in seen:
            continue
        seen.add(g)
        target = propagate_full(g, cache=cache).reduced
        k = 0
        while propagate(g, k, cache=cache).reduced != target:
            k += 1
        if k > best:
            best = k
            witness = phi
    return best, witness
