"""JSON lattice files, DOT export and generation catalogs."""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass
from pathlib import Path

from .canonical import canonical_id
from .errors import LatticeError, ParseError, SchemaError, ValidationError
from .lattice import PlanarLattice, is_patch_lattice, is_sps

SCHEMA_KEYS = {"n", "labels", "upper_covers", "lower_covers"}


def to_dict(L: PlanarLattice) -> dict:
    return {
        "n": L.n,
        "labels": list(L.labels),
        "upper_covers": [list(c) for c in L.upper_covers],
        "lower_covers": [list(c) for c in L.lower_covers],
    }


def dumps(L: PlanarLattice) -> str:
    return json.dumps(to_dict(L), ensure_ascii=False) + "\n"


def from_dict(data) -> PlanarLattice:
    if not isinstance(data, dict):
        raise SchemaError("top-level JSON value must be an object")
    keys = set(data)
    if keys != SCHEMA_KEYS:
        missing, extra = SCHEMA_KEYS - keys, keys - SCHEMA_KEYS
        raise SchemaError(f"missing fields {sorted(missing)}, unexpected fields {sorted(extra)}")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError("n must be a positive integer")
    for key in ("labels", "upper_covers", "lower_covers"):
        if not isinstance(data[key], list) or len(data[key]) != n:
            raise SchemaError(f"{key} must be a list of length n")
    if len(set(data["labels"])) != n or not all(isinstance(s, str) for s in data["labels"]):
        raise SchemaError("labels must be n distinct strings")
    for key in ("upper_covers", "lower_covers"):
        for lst in data[key]:
            if not isinstance(lst, list) or not all(isinstance(c, int) and 0 <= c < n for c in lst):
                raise SchemaError(f"{key} entries must be lists of element ids")
    up, low = data["upper_covers"], data["lower_covers"]
    for x in range(n):
        for y in up[x]:
            if x not in low[y]:
                raise SchemaError(f"upper_covers[{x}] lists {y} but lower_covers[{y}] lacks {x}")
        for y in low[x]:
            if x not in up[y]:
                raise SchemaError(f"lower_covers[{x}] lists {y} but upper_covers[{y}] lacks {x}")
    try:
        return PlanarLattice(up, low, data["labels"])
    except LatticeError as exc:
        raise ValidationError(str(exc)) from exc


def loads(text: str) -> PlanarLattice:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    return from_dict(data)


def load(path) -> PlanarLattice:
    return loads(Path(path).read_text(encoding="utf-8"))


def save(L: PlanarLattice, path) -> None:
    Path(path).write_text(dumps(L), encoding="utf-8")


# -- DOT ----------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def planar_positions(L: PlanarLattice) -> list[int]:
    """Left-to-right rank: pre-order of a depth-first walk down from the top."""
    seen: dict[int, int] = {}
    stack = [L.top]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen[x] = len(seen)
        stack.extend(reversed(L.lower_covers[x]))
    return [seen[x] for x in range(L.n)]


def to_dot(L: PlanarLattice, name: str = "L") -> str:
    """Hasse diagram; one node per element, one edge per cover, ranks by height."""
    heights = L.heights()
    pos = planar_positions(L)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(L.n):
        lines.append(f"  n{x} [label={_quote(L.label(x))}];")
    for h in range(max(heights) + 1):
        row = sorted((x for x in range(L.n) if heights[x] == h), key=pos.__getitem__)
        lines.append("  { rank=same; " + " ".join(f"n{x};" for x in row) + " }")
        if len(row) > 1:
            lines.append("  " + " -> ".join(f"n{x}" for x in row) + " [style=invis];")
    for x in range(L.n):
        for y in L.upper_covers[x]:
            lines.append(f"  n{x} -> n{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def order_to_dot(nodes: list[str], covers: list[tuple[int, int]], name: str = "J") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for i, label in enumerate(nodes):
        lines.append(f"  j{i} [label={_quote(label)}];")
    for a, b in covers:
        lines.append(f"  j{a} -> j{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- catalog ------------------------------------------------------------------


@dataclass
class CatalogEntry:
    id: str
    path: str
    n: int
    fork_depth: int
    flags: dict


def write_catalog(generated, out_dir) -> list[CatalogEntry]:
    """Write one JSON file per generated lattice plus ``catalog.json``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for g in generated:
        fname = f"lattice_{g.depth}_{g.id}.json"
        save(g.lattice, out / fname)
        flags = {"sps": is_sps(g.lattice), "patch": is_patch_lattice(g.lattice)}
        entries.append(CatalogEntry(g.id, fname, g.lattice.n, g.depth, flags))
    index = [asdict(e) for e in entries]
    (out / "catalog.json").write_text(json.dumps(index, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    return entries


def read_catalog(out_dir) -> list[CatalogEntry]:
    out = Path(out_dir)
    entries = [CatalogEntry(**e) for e in json.loads((out / "catalog.json").read_text(encoding="utf-8"))]
    for e in entries:
        if canonical_id(load(out / e.path)) != e.id:
            raise ValidationError(f"{e.path}: canonical id mismatch")
    return entries


def worker_count(default: int = 1) -> int:
    try:
        return max(1, int(os.environ.get("SPSLAT_WORKERS", default)))
    except ValueError:
        return default
