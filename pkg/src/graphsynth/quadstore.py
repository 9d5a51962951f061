"""In-memory quad store with named graphs and a basic-graph-pattern engine.

The store keeps set semantics (inserting a quad twice is a no-op) and
answers conjunctive pattern queries by a natural join over per-pattern
matches. All results come back in a deterministic order derived from the
total order on terms, so everything built on top of the store is
reproducible run to run.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from graphsynth.errors import MalformedQuadError
from graphsynth.terms import Blank, Iri, Literal, Term, sort_key

_VAR_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True, slots=True)
class Quad:
    subject: Term
    predicate: Term
    object: Term
    graph: str

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise MalformedQuadError(f"quad subject may not be a literal: {self.subject!r}")
        if not isinstance(self.subject, (Iri, Blank)):
            raise MalformedQuadError(f"quad subject must be an IRI or blank node: {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise MalformedQuadError(f"quad predicate must be an IRI: {self.predicate!r}")
        if not isinstance(self.object, (Iri, Blank, Literal)):
            raise MalformedQuadError(f"quad object must be a term: {self.object!r}")
        if not self.graph or not isinstance(self.graph, str) or re.search(r"\s", self.graph):
            raise MalformedQuadError("quad graph must be a non-empty IRI string")


@dataclass(frozen=True, slots=True)
class Var:
    """A named variable usable in any pattern position."""

    name: str

    def __post_init__(self):
        if not _VAR_NAME.match(self.name):
            raise MalformedQuadError(f"variable name must be an identifier, got {self.name!r}")

    def __repr__(self):
        return f"?{self.name}"


@dataclass(frozen=True, slots=True)
class Pattern:
    """One quad pattern; the same variable name in two positions is a join constraint."""

    subject: Term | Var
    predicate: Term | Var
    object: Term | Var
    graph: str | Var

    def variables(self) -> set[str]:
        names = set()
        for pos in (self.subject, self.predicate, self.object, self.graph):
            if isinstance(pos, Var):
                names.add(pos.name)
        return names


# A binding set maps every variable of the originating pattern(s) to a term.
# Graph-position variables bind to the graph name as an Iri term.
BindingSet = dict[str, Term]


def _binding_order_key(variables: list[str]):
    def key(binding: BindingSet) -> tuple:
        return tuple(sort_key(binding[name]) for name in variables)

    return key


class QuadStore:
    """Mutable quad dataset. Single-writer during mutation; reads are pure."""

    def __init__(self):
        self._graphs: dict[str, set[Quad]] = {}

    def insert(self, quad: Quad) -> bool:
        """Add a quad; returns True iff it was not already present."""
        if not isinstance(quad, Quad):
            raise MalformedQuadError(f"expected a Quad, got {type(quad).__name__}")
        bucket = self._graphs.setdefault(quad.graph, set())
        if quad in bucket:
            return False
        bucket.add(quad)
        return True

    def __len__(self) -> int:
        return sum(len(bucket) for bucket in self._graphs.values())

    def __contains__(self, quad: Quad) -> bool:
        return quad in self._graphs.get(quad.graph, ())

    def graph_size(self, graph: str) -> int:
        return len(self._graphs.get(graph, ()))

    def graph_names(self) -> list[str]:
        return sorted(name for name, bucket in self._graphs.items() if bucket)

    def quads(self, graph: str | None = None) -> Iterator[Quad]:
        if graph is not None:
            yield from self._graphs.get(graph, ())
            return
        for bucket in self._graphs.values():
            yield from bucket

    def graph_quads(self, graph: str) -> frozenset[Quad]:
        return frozenset(self._graphs.get(graph, ()))

    def clone(self) -> QuadStore:
        other = QuadStore()
        other._graphs = {name: set(bucket) for name, bucket in self._graphs.items()}
        return other

    def match_pattern(self, pattern: Pattern) -> list[BindingSet]:
        """All bindings under which the pattern matches some quad, in deterministic order."""
        results = []
        if isinstance(pattern.graph, Var):
            candidates: Iterable[Quad] = self.quads()
        else:
            candidates = self._graphs.get(pattern.graph, ())
        for quad in candidates:
            binding = _unify(pattern, quad, {})
            if binding is not None:
                results.append(binding)
        variables = sorted(pattern.variables())
        results.sort(key=_binding_order_key(variables))
        return results

    def query_bgp(self, patterns: Iterable[Pattern]) -> list[BindingSet]:
        """Natural join of the per-pattern matches on shared variable names."""
        patterns = list(patterns)
        if not patterns:
            raise ValueError("query_bgp requires at least one pattern")
        partial: list[BindingSet] = [{}]
        for pattern in patterns:
            extended: list[BindingSet] = []
            if isinstance(pattern.graph, Var):
                candidates: list[Quad] = list(self.quads())
            else:
                candidates = list(self._graphs.get(pattern.graph, ()))
            for binding in partial:
                for quad in candidates:
                    merged = _unify(pattern, quad, binding)
                    if merged is not None:
                        extended.append(merged)
            partial = extended
            if not partial:
                return []
        variables = sorted(set().union(*(p.variables() for p in patterns)))
        partial.sort(key=_binding_order_key(variables))
        return partial


def _unify(pattern: Pattern, quad: Quad, binding: BindingSet) -> BindingSet | None:
    """Extend `binding` so the pattern matches the quad, or None if impossible."""
    out = binding
    graph_term = Iri(quad.graph)
    for pos, value in (
        (pattern.subject, quad.subject),
        (pattern.predicate, quad.predicate),
        (pattern.object, quad.object),
        (pattern.graph, graph_term),
    ):
        if isinstance(pos, Var):
            bound = out.get(pos.name)
            if bound is None:
                if out is binding:
                    out = dict(binding)
                out[pos.name] = value
            elif bound != value:
                return None
        elif isinstance(pos, str):
            # Concrete graph position, compared as a name.
            if pos != quad.graph:
                return None
        elif pos != value:
            return None
    return dict(out) if out is binding else out
