"""Regenerate tests/fixtures/ka_counts.json from the brute-force oracle (python tests/make_fixtures.py)."""

import json
import pathlib

from oracles import ka_f_vector

rows = []
for g, lam, mod, bound in [(1, "2Z", 2, 1), (1, "Z", 1, 1), (1, "2Z", 2, 2), (1, "Z", 1, 2), (2, "2Z", 2, 1)]:
    rows.append({"g": g, "lambda": lam, "bound": bound, "f_vector": ka_f_vector(g, mod, bound)})
path = pathlib.Path(__file__).parent / "fixtures" / "ka_counts.json"
path.write_text(json.dumps(rows, indent=1) + "\n")
print(path.read_text())
