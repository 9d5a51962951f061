"""Loads a whole ontology set into the quad store, following owl:imports.

Each document is loaded exactly once (visited set keyed on ontology IRI and
file path), so import cycles are harmless. Blank node labels are file
scoped: on load they are renamed to dataset-unique ids derived from the
document key, which keeps the final quad set independent of load order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

from graphsynth.errors import CatalogError, ImportResolutionError
from graphsynth.quadstore import Quad, QuadStore
from graphsynth.terms import OWL_IMPORTS, OWL_ONTOLOGY, RDF_TYPE, Blank, Iri
from graphsynth.turtle import OntologyDocument, parse_document


@dataclass(frozen=True)
class LoadReport:
    files: int
    quads: int


class ImportCatalog:
    """Maps ontology IRIs to local files; the resolution table for owl:imports."""

    def __init__(self, mapping: dict[str, Path]):
        self._mapping = dict(mapping)
        self._by_path = {path.resolve(): iri for iri, path in self._mapping.items()}

    @classmethod
    def load(cls, catalog_path: Path) -> "ImportCatalog":
        """Read `<ontology-iri> <tab> relative/path.ttl` lines, one mapping per line."""
        mapping: dict[str, Path] = {}
        root = catalog_path.parent
        try:
            text = catalog_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise CatalogError(f"cannot read catalog {catalog_path}: {exc}") from exc
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            iri_part, _, path_part = line.partition("\t")
            path_part = path_part.strip()
            if not (iri_part.startswith("<") and iri_part.endswith(">")) or not path_part:
                raise CatalogError(f"{catalog_path}:{lineno}: expected '<iri><TAB>path', got {raw!r}")
            iri = iri_part[1:-1]
            if iri in mapping:
                raise CatalogError(f"{catalog_path}:{lineno}: ontology <{iri}> already mapped")
            path = root / path_part
            if not path.is_file():
                raise CatalogError(f"{catalog_path}:{lineno}: file not found: {path}")
            mapping[iri] = path
        return cls(mapping)

    def lookup(self, iri: str) -> Path | None:
        return self._mapping.get(iri)

    def iri_for_path(self, path: Path) -> str | None:
        return self._by_path.get(path.resolve())

    def __len__(self) -> int:
        return len(self._mapping)


def _document_key(path: Path, catalog: ImportCatalog) -> str:
    return catalog.iri_for_path(path) or path.resolve().as_posix()


def _rename_blank(doc_key: str, label: str) -> Blank:
    digest = hashlib.sha1(f"{doc_key}|{label}".encode("utf-8")).hexdigest()[:16]
    return Blank(f"b{digest}")


def _ontology_iris(doc: OntologyDocument) -> list[str]:
    return [
        q.subject.value
        for q in doc.statements
        if isinstance(q.subject, Iri)
        and q.predicate.value == RDF_TYPE
        and isinstance(q.object, Iri)
        and q.object.value == OWL_ONTOLOGY
    ]


def load_with_imports(
    entry: list[Path],
    catalog: ImportCatalog,
    store: QuadStore,
    graph: str,
) -> LoadReport:
    """Load the entry files and, transitively, everything they owl:import."""
    visited_iris: set[str] = set()
    visited_paths: set[Path] = set()
    pending: list[Path] = [Path(p) for p in entry]
    files = 0
    inserted = 0

    while pending:
        path = pending.pop(0)
        resolved = path.resolve()
        if resolved in visited_paths:
            continue
        known_iri = catalog.iri_for_path(path)
        if known_iri is not None and known_iri in visited_iris:
            continue
        visited_paths.add(resolved)
        if known_iri is not None:
            visited_iris.add(known_iri)

        text = path.read_text(encoding="utf-8")
        doc = parse_document(text, graph=graph)
        doc_key = _document_key(path, catalog)
        files += 1
        for declared in _ontology_iris(doc):
            visited_iris.add(declared)

        imports: list[str] = []
        for quad in doc.statements:
            subject = quad.subject
            obj = quad.object
            if isinstance(subject, Blank):
                subject = _rename_blank(doc_key, subject.id)
            if isinstance(obj, Blank):
                obj = _rename_blank(doc_key, obj.id)
            if quad.predicate.value == OWL_IMPORTS and isinstance(obj, Iri):
                imports.append(obj.value)
            if store.insert(Quad(subject, quad.predicate, obj, graph)):
                inserted += 1

        for target in sorted(imports):
            if target in visited_iris:
                continue
            target_path = catalog.lookup(target)
            if target_path is None:
                raise ImportResolutionError(f"imported ontology not in catalog: <{target}>")
            pending.append(target_path)

    return LoadReport(files=files, quads=inserted)
