"""Exponential-triple enumeration and exponentiation-closure hypergraphs.

An exponential triple is an ordered triple (a, b, c) with a**b = c and
a, b >= 2.  The closure of a seed set under (a, b) -> a**b gives a finite
universe; its triples are the hyperedges whose k-colorability the coloring
module searches.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .config import Caps, DEFAULT_CAPS
from .errors import CapacityError, DomainError
from .tower import (
    PowerForm,
    normalize,
    powerform_record,
    powerform_from_record,
    sorted_forms,
    try_evaluate,
    vertex_label,
)

# Certification ceiling for materializing a triple's exponent part.  Real
# uses keep b within value_bit_cap, which is far below this.
_TRIPLE_B_BITS = 1 << 20


@dataclass(frozen=True, slots=True)
class ExpTriple:
    """Ordered triple (a, b, c) of canonical forms with a**value(b) = c."""

    a: PowerForm
    b: PowerForm
    c: PowerForm

    def __post_init__(self):
        if self.c.root != self.a.root:
            raise DomainError(f"not an exponential triple: {self}")
        lo = self.b.exponent * (self.b.root.bit_length() - 1) + 1
        if lo > _TRIPLE_B_BITS:
            raise DomainError(f"triple exponent part too large to certify: {self.b}")
        vb = self.b.root ** self.b.exponent
        if self.c.exponent != self.a.exponent * vb:
            raise DomainError(f"not an exponential triple: {self}")

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


def iter_int_triples(n: int) -> Iterator[tuple[int, int, int]]:
    """All (a, b, a**b) with a, b >= 2 and a**b <= n, ascending by (c, a, b)."""
    found = []
    a = 2
    while a * a <= n:
        v = a * a
        b = 2
        while v <= n:
            found.append((v, a, b))
            v *= a
            b += 1
        a += 1
    for c, a, b in sorted(found):
        yield a, b, c


def enumerate_triples(n: int, caps: Caps = DEFAULT_CAPS) -> list[ExpTriple]:
    """Exponential triples with c <= n as canonical-form records."""
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"bound must be a non-negative integer, got {n!r}")
    if n.bit_length() > caps.value_bit_cap:
        raise CapacityError(f"bound exceeds value_bit_cap {caps.value_bit_cap}")
    return [
        ExpTriple(normalize(a, caps), normalize(b, caps), normalize(c, caps))
        for a, b, c in iter_int_triples(n)
    ]


def triples_within(forms: Iterable[PowerForm], caps: Caps = DEFAULT_CAPS) -> list[ExpTriple]:
    """All triples with a, b, c in the set and b explicitly evaluable."""
    verts = sorted_forms(set(forms))
    index = {(v.root, v.exponent): v for v in verts}
    evaluable = [(v, try_evaluate(v, caps)) for v in verts]
    out = []
    for a in verts:
        for b, vb in evaluable:
            if vb is None:
                continue
            c = index.get((a.root, a.exponent * vb))
            if c is not None:
                out.append(ExpTriple(a, b, c))
    pos = {v: i for i, v in enumerate(verts)}
    out.sort(key=lambda t: (pos[t.c], pos[t.a], pos[t.b]))
    return out


@dataclass(frozen=True)
class ClosureMeta:
    seeds: tuple[int, ...]
    depth: int
    value_bit_cap: int
    exp_bit_cap: int
    vertex_budget: int
    dropped_count: int
    truncated_count: int


@dataclass(frozen=True)
class TripleHypergraph:
    """Vertices in ascending value order; edges as vertex-index triples."""

    vertices: tuple[PowerForm, ...]
    edges: tuple[tuple[int, int, int], ...]
    meta: ClosureMeta

    def edge_forms(self, edge: tuple[int, int, int]) -> ExpTriple:
        ai, bi, ci = edge
        return ExpTriple(self.vertices[ai], self.vertices[bi], self.vertices[ci])


def _edges_from_vertices(verts: Sequence[PowerForm], caps: Caps) -> tuple[tuple[int, int, int], ...]:
    pos = {v: i for i, v in enumerate(verts)}
    return tuple(
        (pos[t.a], pos[t.b], pos[t.c]) for t in triples_within(verts, caps)
    )


def exp_closure(seeds: Iterable[int], depth: int, caps: Caps = DEFAULT_CAPS) -> TripleHypergraph:
    """Close seeds under exponentiation `depth` times and collect all triples.

    Pairs whose exponent part is not explicitly evaluable are skipped;
    results over the exponent cap are dropped and counted.  If the vertex
    set outgrows the budget it is truncated to the smallest values, which
    is deterministic but loses monotonicity in depth.
    """
    seed_list = sorted(set(seeds))
    if not seed_list:
        raise DomainError("closure needs at least one seed")
    if not all(isinstance(s, int) and s >= 2 for s in seed_list):
        raise DomainError("closure seeds must be integers >= 2")
    if depth < 0:
        raise DomainError("depth must be >= 0")
    if depth > caps.max_closure_depth:
        raise CapacityError(
            f"depth {depth} exceeds max_closure_depth {caps.max_closure_depth}"
        )

    vertices = {normalize(s, caps) for s in seed_list}
    dropped = 0
    truncated = 0
    for _ in range(depth):
        current = sorted_forms(vertices)
        evaluable = [(v, try_evaluate(v, caps)) for v in current]
        new = set()
        for a in current:
            for b, vb in evaluable:
                if vb is None:
                    continue
                exp = a.exponent * vb
                if exp.bit_length() > caps.exp_bit_cap:
                    dropped += 1
                    continue
                new.add(PowerForm(a.root, exp))
        vertices |= new
        if len(vertices) > caps.vertex_budget:
            kept = sorted_forms(vertices)[: caps.vertex_budget]
            truncated += len(vertices) - len(kept)
            vertices = set(kept)

    verts = tuple(sorted_forms(vertices))
    meta = ClosureMeta(
        seeds=tuple(seed_list),
        depth=depth,
        value_bit_cap=caps.value_bit_cap,
        exp_bit_cap=caps.exp_bit_cap,
        vertex_budget=caps.vertex_budget,
        dropped_count=dropped,
        truncated_count=truncated,
    )
    return TripleHypergraph(vertices=verts, edges=_edges_from_vertices(verts, caps), meta=meta)


def sub_hypergraph(h: TripleHypergraph, indices: Iterable[int]) -> TripleHypergraph:
    """Induced sub-hypergraph on a vertex subset, reindexed."""
    keep = sorted(set(indices))
    if any(i < 0 or i >= len(h.vertices) for i in keep):
        raise DomainError("vertex index out of range")
    remap = {old: new for new, old in enumerate(keep)}
    edges = tuple(
        (remap[a], remap[b], remap[c])
        for a, b, c in h.edges
        if a in remap and b in remap and c in remap
    )
    return TripleHypergraph(
        vertices=tuple(h.vertices[i] for i in keep), edges=edges, meta=h.meta
    )


def triple_record(t: ExpTriple, caps: Caps = DEFAULT_CAPS) -> dict:
    return {
        "a": vertex_label(t.a, caps),
        "b": vertex_label(t.b, caps),
        "c": vertex_label(t.c, caps),
    }


def hypergraph_record(h: TripleHypergraph, caps: Caps = DEFAULT_CAPS) -> dict:
    return {
        "vertices": [powerform_record(v, caps) for v in h.vertices],
        "edges": [list(e) for e in h.edges],
        "meta": {
            "seeds": [str(s) for s in h.meta.seeds],
            "depth": h.meta.depth,
            "caps": {
                "value_bit_cap": h.meta.value_bit_cap,
                "exp_bit_cap": h.meta.exp_bit_cap,
                "vertex_budget": h.meta.vertex_budget,
            },
            "dropped": h.meta.dropped_count,
            "truncated": h.meta.truncated_count,
        },
    }


def hypergraph_from_record(rec: dict, caps: Caps = DEFAULT_CAPS) -> TripleHypergraph:
    try:
        verts = tuple(powerform_from_record(r) for r in rec["vertices"])
        raw_edges = [tuple(int(i) for i in e) for e in rec["edges"]]
        meta_rec = rec.get("meta", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed hypergraph record: {exc}") from exc
    if sorted_forms(verts) != list(verts) or len(set(verts)) != len(verts):
        raise DomainError("hypergraph vertices must be distinct and ascending")
    for e in raw_edges:
        if len(e) != 3 or any(i < 0 or i >= len(verts) for i in e):
            raise DomainError(f"edge {e} out of range")
        ExpTriple(verts[e[0]], verts[e[1]], verts[e[2]])  # validates the relation
    caps_rec = meta_rec.get("caps", {})
    meta = ClosureMeta(
        seeds=tuple(int(s) for s in meta_rec.get("seeds", [])),
        depth=int(meta_rec.get("depth", 0)),
        value_bit_cap=int(caps_rec.get("value_bit_cap", caps.value_bit_cap)),
        exp_bit_cap=int(caps_rec.get("exp_bit_cap", caps.exp_bit_cap)),
        vertex_budget=int(caps_rec.get("vertex_budget", caps.vertex_budget)),
        dropped_count=int(meta_rec.get("dropped", 0)),
        truncated_count=int(meta_rec.get("truncated", 0)),
    )
    return TripleHypergraph(vertices=verts, edges=tuple(raw_edges), meta=meta)
