"""
Files and diagrams
==================

JSON for storage, DOT for pictures.
"""

import tempfile
from pathlib import Path

from spslat import io
from spslat.constructions import fixture, generate_patch_lattices

S7 = fixture("S7")
print(io.dumps(S7))
print(io.to_dot(S7, "S7"))

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "s7.json"
    io.save(S7, path)
    print(io.load(path).upper_covers == S7.upper_covers)

    entries = io.write_catalog(generate_patch_lattices(2, with_meta=True), tmp)
    for e in io.read_catalog(tmp):
        print(e.id, e.n, e.fork_depth, e.flags)
