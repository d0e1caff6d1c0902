"""Clause-set basics: representation, instantiation, resolution, DIMACS I/O.

A literal is a nonzero int (sign = polarity), a clause is a frozenset of
literals that is free of complementary pairs, and a clause-set is a
frozenset of clauses.  TOP (the empty clause-set) is trivially satisfiable,
BOT (the empty clause) is unsatisfiable.
"""

from dataclasses import dataclass

from .errors import ParseError

BOT = frozenset()
TOP = frozenset()


def clause(literals):
    """Build a clause, rejecting 0 and complementary pairs."""
    c = frozenset(literals)
    for x in c:
        if not isinstance(x, int) or x == 0:
            raise ParseError("literal must be a nonzero int, got %r" % (x,))
        if -x in c:
            raise ParseError("tautological clause: %d and %d" % (x, -x))
    return c


def clause_set(clauses):
    return frozenset(clause(c) for c in clauses)


def variables(f):
    """Set of variables occurring in clause-set f."""
    return {abs(x) for c in f for x in c}


def literals_of(f):
    return {x for c in f for x in c}


def clause_key(c):
    """Canonical sort key: literals ordered by (variable, sign)."""
    return tuple(sorted(c, key=lambda x: (abs(x), x < 0)))


def sorted_clauses(f):
    """Clauses in canonical order (short first, then literal order)."""
    return sorted(f, key=lambda c: (len(c), clause_key(c)))


def sorted_literals(c):
    return sorted(c, key=lambda x: (abs(x), x < 0))


@dataclass(frozen=True)
class Measures:
    n: int
    c: int
    ell: int
    deficiency: int


def measures(f):
    n = len(variables(f))
    c = len(f)
    ell = sum(len(cl) for cl in f)
    return Measures(n=n, c=c, ell=ell, deficiency=c - n)


def literal_assignment(x, value):
    """Partial assignment sending literal x to value (0 or 1)."""
    if x > 0:
        return {x: value}
    return {-x: 1 - value}


def clause_falsifier(c):
    """The assignment setting every literal of clause c to false."""
    phi = {}
    for x in c:
        phi[abs(x)] = 0 if x > 0 else 1
    return phi


def assignment_satisfies(phi, x):
    v = phi.get(abs(x))
    if v is None:
        return None
    return v == (1 if x > 0 else 0)


def apply_assignment(phi, f):
    """Instantiate f by partial assignment phi (var -> 0/1).

    Satisfied clauses vanish, falsified literals are removed.
    """
    out = set()
    for c in f:
        kept = []
        satisfied = False
        for x in c:
            s = assignment_satisfies(phi, x)
            if s is True:
                satisfied = True
                break
            if s is None:
                kept.append(x)
        if not satisfied:
            out.add(frozenset(kept))
    return frozenset(out)


def compose_assignments(first, second):
    """Apply first, then second; second wins on conflicts."""
    phi = dict(first)
    phi.update(second)
    return phi


class ResolutionError(ValueError):
    """The two clauses do not clash in exactly one variable."""


def resolvable(c, d):
    clash = [x for x in c if -x in d]
    return len(clash) == 1


def resolve(c, d):
    """Resolvent of two clauses clashing in exactly one variable."""
    clash = [x for x in c if -x in d]
    if len(clash) != 1:
        raise ResolutionError(
            "clauses clash in %d variables, need exactly 1" % len(clash))
    x = clash[0]
    return (c | d) - {x, -x}


def subsumption_eliminate(f):
    """Keep only the inclusion-minimal clauses of f."""
    by_size = sorted(f, key=len)
    kept = []
    for c in by_size:
        if not any(d <= c for d in kept):
            kept.append(c)
    return frozenset(kept)


@dataclass(frozen=True)
class ClassifyFlags:
    hitting: bool
    one_regular_hitting: bool
    horn: bool
    contains_full_clause: bool


def classify(f):
    """Syntactic flags for f.

    For TOP the pairwise conditions hold vacuously, while there is no
    clause at all, so contains_full_clause is false.
    """
    cls = list(f)
    hitting = True
    one_regular = True
    for i in range(len(cls)):
        for j in range(i):
            clash = sum(1 for x in cls[i] if -x in cls[j])
            if clash == 0:
                hitting = False
            if clash != 1:
                one_regular = False
    horn = all(sum(1 for x in c if x > 0) <= 1 for c in cls)
    allvars = variables(f)
    full = any(variables([c]) == allvars for c in cls) if cls else False
    return ClassifyFlags(hitting=hitting, one_regular_hitting=one_regular,
                         horn=horn, contains_full_clause=full)


@dataclass(frozen=True)
class DimacsDocument:
    clauses: frozenset
    comments: tuple


def parse_dimacs_document(text):
    """Parse DIMACS CNF text, keeping comment lines."""
    comments = []
    clauses = []
    current = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("bad problem line at %d: %r" % (lineno, raw))
            try:
                declared = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("bad problem line at %d: %r" % (lineno, raw))
            continue
        for tok in line.split():
            try:
                x = int(tok)
            except ValueError:
                raise ParseError("bad token %r at line %d" % (tok, lineno))
            if x == 0:
                clauses.append(clause(current))
                current = []
            else:
                current.append(x)
    if current:
        raise ParseError("last clause not terminated by 0")
    f = frozenset(clauses)
    if declared is not None:
        nvar, _ = declared
        if any(abs(x) > nvar for c in f for x in c):
            raise ParseError("literal exceeds declared variable count")
    return DimacsDocument(clauses=f, comments=tuple(comments))


def parse_dimacs(text):
    return parse_dimacs_document(text).clauses


def emit_dimacs(f, comments=()):
    """Serialize f deterministically (canonical clause and literal order)."""
    lines = ["c %s" % c if c else "c" for c in comments]
    nvar = max(variables(f), default=0)
    lines.append("p cnf %d %d" % (nvar, len(f)))
    for c in sorted_clauses(f):
        lines.append(" ".join([str(x) for x in clause_key(c)] + ["0"]))
    return "\n".join(lines) + "\n"
