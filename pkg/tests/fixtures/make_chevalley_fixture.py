"""Regenerate chevalley_degrees.json from the brute-force oracles.

    python tests/fixtures/make_chevalley_fixture.py

Each entry is produced by enumerating W as permutations of the roots; the
degrees are read off the root-height partition and must reproduce the
enumerated Poincare polynomial.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent))

from oracles import degrees_from_heights, expand_degrees, root_closure, weyl_permutation_poincare  # noqa: E402

from tamagawa_calc.root_datum import DynkinType, cartan_matrix  # noqa: E402

TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4)]
FIXTURE = HERE / "chevalley_degrees.json"


def build() -> dict[str, dict[str, object]]:
    table = {}
    for letter, rank in TYPES:
        cartan = cartan_matrix(DynkinType(letter, rank))
        roots = root_closure(cartan)
        poincare = weyl_permutation_poincare(cartan, roots)
        degrees = degrees_from_heights(roots)
        if expand_degrees(degrees) != poincare:
            raise SystemExit(f"{letter}{rank}: height partition does not reproduce the Poincare polynomial")
        table[f"{letter}_{rank}"] = {
            "degrees": degrees,
            "weyl_order": sum(poincare),
            "num_roots": len(roots),
            "poincare": poincare,
        }
    return table


if __name__ == "__main__":
    FIXTURE.write_text(json.dumps(build(), indent=1) + "\n", encoding="utf-8")
    print(f"wrote {FIXTURE}")
