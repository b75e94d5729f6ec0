"""The JSON workspace-document format: one coefficient ring per document,
named tables of modules, complexes, maps, homotopies, dominations, and
stable-freeness witnesses, with bit-exact round-tripping.

Element literals: integers as decimal strings, group-ring elements as
[[coeff, index], ...], Laurent elements as [[base-literal, exponent], ...],
quadratic elements as [a, b].  Canonical output is sorted-key, two-space
indented JSON with a trailing newline.
"""
from __future__ import annotations

import hashlib
import json

from .complexes import ChainMap, Homotopy, HomologyResult, ProjComplex, ProjModule
from .instant import Domination
from .matrices import Mat, ShapeError
from .projective import StableFreenessWitness
from .rings import LaurentRing, Ring, RingMismatch, ring_from_descriptor
from .verdicts import Report


class DocumentError(ValueError):
    """Malformed document content: bad literals, shapes, or references."""


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def content_digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


# --- literal writers --------------------------------------------------------

def matrix_literal(m: Mat) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [m.ring.literal(a) for a in m.entries]}


def module_literal(p: ProjModule) -> dict:
    lit: dict = {"ambient_rank": p.ambient_rank}
    lit["idempotent"] = "free" if p.is_free else matrix_literal(p.idem)
    return lit


def complex_literal(x: ProjComplex, base: Ring) -> dict:
    lit: dict = {
        "bottom_degree": x.bottom_degree,
        "modules": [module_literal(m) for m in x.modules],
        "boundaries": [matrix_literal(d) for d in x.boundaries],
    }
    if x.ring != base:
        if not (isinstance(x.ring, LaurentRing) and x.ring.base == base):
            raise DocumentError("complex over a ring not reachable from the document ring")
        lit["extension"] = "laurent"
    return lit


def _components_literal(components: dict) -> dict:
    return {str(n): matrix_literal(m) for n, m in sorted(components.items())}


def homology_literal(h: HomologyResult) -> dict:
    return h.as_dict()


def report_literal(rep: Report) -> dict:
    return rep.as_dict()


def witness_literal(w: StableFreenessWitness) -> dict:
    return {"a": w.a, "b": w.b, "iso": matrix_literal(w.iso),
            "iso_inverse": matrix_literal(w.iso_inverse)}


# --- literal readers --------------------------------------------------------

def _expect(lit, key, kind=None):
    if not isinstance(lit, dict) or key not in lit:
        raise DocumentError(f"missing field {key!r}")
    v = lit[key]
    if kind is not None and not isinstance(v, kind):
        raise DocumentError(f"field {key!r} has the wrong type")
    return v


def parse_matrix(lit, ring: Ring) -> Mat:
    rows = _expect(lit, "rows", int)
    cols = _expect(lit, "cols", int)
    entries = _expect(lit, "entries", list)
    if len(entries) != rows * cols:
        raise DocumentError(f"matrix needs {rows * cols} entries, got {len(entries)}")
    try:
        elems = [ring.parse_literal(e) for e in entries]
    except (ValueError, TypeError, KeyError, IndexError) as ex:
        raise DocumentError(f"bad ring-element literal: {ex}") from ex
    return Mat(ring, rows, cols, elems)


def parse_module(lit, ring: Ring) -> ProjModule:
    rank = _expect(lit, "ambient_rank", int)
    idem = _expect(lit, "idempotent")
    if idem == "free":
        return ProjModule.free(ring, rank)
    m = parse_matrix(idem, ring)
    if m.rows != rank:
        raise DocumentError("idempotent size disagrees with ambient_rank")
    if not m.is_idempotent():
        raise DocumentError("module matrix is not idempotent")
    return ProjModule(m)


def parse_complex(lit, ring: Ring) -> ProjComplex:
    if lit.get("extension") == "laurent":
        ring = LaurentRing(ring)
    bottom = _expect(lit, "bottom_degree", int)
    mods = [parse_module(m, ring) for m in _expect(lit, "modules", list)]
    bnds = [parse_matrix(b, ring) for b in _expect(lit, "boundaries", list)]
    try:
        return ProjComplex(ring, bottom, mods, bnds)
    except (ShapeError, RingMismatch) as ex:
        raise DocumentError(str(ex)) from ex


class Workspace:
    """A parsed document: the ring plus name-resolved object tables."""

    def __init__(self, ring: Ring, raw: dict):
        self.ring = ring
        self.raw = raw
        self.modules: dict[str, ProjModule] = {}
        self.complexes: dict[str, ProjComplex] = {}
        self.maps: dict[str, ChainMap] = {}
        self.homotopies: dict[str, Homotopy] = {}
        self.dominations: dict[str, Domination] = {}
        self.witnesses: dict[str, StableFreenessWitness] = {}

    def find(self, name: str):
        for table in (self.complexes, self.maps, self.dominations,
                      self.modules, self.homotopies, self.witnesses):
            if name in table:
                return table[name]
        raise DocumentError(f"unresolved reference: {name!r}")


def _ref(table: dict, name, what: str):
    if not isinstance(name, str) or name not in table:
        raise DocumentError(f"unresolved {what} reference: {name!r}")
    return table[name]


def parse_workspace(text: str) -> Workspace:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as ex:
        raise DocumentError(f"not valid JSON: {ex}") from ex
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    try:
        ring = ring_from_descriptor(_expect(raw, "ring", dict))
    except (ValueError, TypeError) as ex:
        raise DocumentError(f"bad ring descriptor: {ex}") from ex
    ws = Workspace(ring, raw)
    for name, lit in sorted(raw.get("modules", {}).items()):
        ws.modules[name] = parse_module(lit, ring)
    for name, lit in sorted(raw.get("complexes", {}).items()):
        ws.complexes[name] = parse_complex(lit, ring)

    def map_ends(lit):
        src = _ref(ws.complexes, _expect(lit, "source"), "complex")
        tgt = _ref(ws.complexes, _expect(lit, "target"), "complex")
        comps = {}
        for ds, mlit in _expect(lit, "components", dict).items():
            try:
                deg = int(ds)
            except ValueError as ex:
                raise DocumentError(f"bad degree key {ds!r}") from ex
            comps[deg] = parse_matrix(mlit, src.ring)
        return src, tgt, comps

    for name, lit in sorted(raw.get("maps", {}).items()):
        src, tgt, comps = map_ends(lit)
        try:
            ws.maps[name] = ChainMap(src, tgt, comps)
        except (ShapeError, RingMismatch) as ex:
            raise DocumentError(f"map {name!r}: {ex}") from ex
    for name, lit in sorted(raw.get("homotopies", {}).items()):
        src, tgt, comps = map_ends(lit)
        try:
            ws.homotopies[name] = Homotopy(src, tgt, comps)
        except (ShapeError, RingMismatch) as ex:
            raise DocumentError(f"homotopy {name!r}: {ex}") from ex
    for name, lit in sorted(raw.get("witnesses", {}).items()):
        ws.witnesses[name] = StableFreenessWitness(
            _expect(lit, "a", int), _expect(lit, "b", int),
            parse_matrix(_expect(lit, "iso"), ring),
            parse_matrix(_expect(lit, "iso_inverse"), ring))
    for name, lit in sorted(raw.get("dominations", {}).items()):
        ws.dominations[name] = Domination(
            A=_ref(ws.complexes, _expect(lit, "A"), "complex"),
            C=_ref(ws.complexes, _expect(lit, "C"), "complex"),
            i=_ref(ws.maps, _expect(lit, "i"), "map"),
            r=_ref(ws.maps, _expect(lit, "r"), "map"),
            s=_ref(ws.homotopies, _expect(lit, "s"), "homotopy"))
    return ws


def workspace_literal(ws: Workspace) -> dict:
    """Re-serialize a workspace; parse(print(parse(x))) == parse(x)."""
    out: dict = {"ring": ws.ring.descriptor()}
    if ws.modules:
        out["modules"] = {k: module_literal(v) for k, v in ws.modules.items()}
    if ws.complexes:
        out["complexes"] = {k: complex_literal(v, ws.ring)
                            for k, v in ws.complexes.items()}

    def map_lit(m, tables):
        name_of = {}
        for table in tables:
            for k, v in table.items():
                name_of.setdefault(id(v), k)
        return {"source": name_of[id(m.source)], "target": name_of[id(m.target)],
                "components": _components_literal(m.components)}

    if ws.maps:
        out["maps"] = {k: map_lit(v, [ws.complexes]) for k, v in ws.maps.items()}
    if ws.homotopies:
        out["homotopies"] = {k: map_lit(v, [ws.complexes])
                             for k, v in ws.homotopies.items()}
    if ws.witnesses:
        out["witnesses"] = {k: witness_literal(v) for k, v in ws.witnesses.items()}
    if ws.dominations:
        names: dict = {}
        for k, v in ws.complexes.items():
            names.setdefault(id(v), k)
        for k, v in ws.maps.items():
            names.setdefault(id(v), k)
        for k, v in ws.homotopies.items():
            names.setdefault(id(v), k)
        out["dominations"] = {
            k: {"A": names[id(d.A)], "C": names[id(d.C)], "i": names[id(d.i)],
                "r": names[id(d.r)], "s": names[id(d.s)]}
            for k, d in ws.dominations.items()}
    return out
