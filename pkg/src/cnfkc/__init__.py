"""cnfkc: a desk-scale workbench for CNF knowledge compilation.

Clause-sets are frozensets of frozensets of nonzero ints.  The modules
cover propagation hierarchies, prime implicates, hardness measures,
minimal premise sets with doping, labeled binary trees, trigger
hypergraph lower bounds, and level-k base compilation with the standard
query suite.
"""

__version__ = "0.1.0"
