"""Knowledge-graph-driven program synthesis.

A structured problem statement is matched against an ontology-backed
knowledge base of data sources, algorithms, and code structures; the match
is composed into an abstract program graph, rendered into concrete Python
statement forms, and written out as source code.
"""

__version__ = "0.1.0"
