#!/usr/bin/env python3
"""Regenerate the scenario files in scenarios/ from the built-in catalog.

Run from the repository root:

    python3 scripts/export_scenarios.py

Each catalog entry becomes one YAML document that `orefield extend`,
`orefield tower`, and `orefield verify` accept via --scenario.  The files
are meant to be copied and edited: change a coefficient, a labelling, or
the pinned root and re-run the checks to watch the certificates catch it.
"""

from pathlib import Path

from orefield.catalog import scenario_catalog, scenario_names, tower_catalog, tower_names
from orefield.scenario_io import dump_document

OUT = Path(__file__).resolve().parent.parent / "scenarios"

EXTENSION_HEADER = """\
{name}: one extension scenario, ready for `orefield extend --scenario {path}`.

kind/field    extension document over the named ground field
              (rationals | gauss | hamilton, or an inline field spec).
f             coefficients of the monic central polynomial, ascending in x;
              entries are expressions in the ground fraction field.
group         the symmetry group: elements, identity, full Cayley table.
images        for each non-identity map, the image of x as coefficients.
newton        seed (and optionally cleared coefficients) for lifting the
              series root; replace with an explicit `root:` block to pin
              the series verbatim and let root-residual judge it.
precision     how many series coefficients the root carries.
"""

TOWER_HEADER = """\
{name}: a tower of compatible extensions, for `orefield tower|verify --scenario {path}`.

system        the abstract side: one finite group per level and the
              connecting surjections (top level first element maps down).
levels        one extension document per level, all over the same field.
eps           per level, the labelling that matches system group elements
              to the level's own generator names.
embeddings    for each consecutive pair, the lower generator written as a
              polynomial in the upper one; `null` marks a missing map and
              the compatibility checks will refuse to run.
nonsquares    labelled central witnesses whose odd-multiplicity factors
              certify that consecutive quadratic layers stay independent.
"""


def main() -> None:
    OUT.mkdir(exist_ok=True)
    for name in scenario_names():
        path = OUT / f"{name}.yaml"
        header = EXTENSION_HEADER.format(name=name, path=path.relative_to(OUT.parent))
        path.write_text(dump_document(scenario_catalog(name), header=header))
        print(f"wrote {path}")
    for name in tower_names():
        path = OUT / f"{name}.yaml"
        header = TOWER_HEADER.format(name=name, path=path.relative_to(OUT.parent))
        path.write_text(dump_document(tower_catalog(name, validate=False), header=header))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
