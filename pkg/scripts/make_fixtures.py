"""Write the morphism JSON files under fixtures/ from oikomplex.catalog.

    python3 scripts/make_fixtures.py [outdir]
"""

import sys
from pathlib import Path

from oikomplex import catalog
from oikomplex.cli import dump_json
from oikomplex.free_mod import morphism_to_json

FIXTURES = {
    "generic_3xw.json": catalog.generic_3xw,
    "koszul_x1.json": catalog.koszul_x1,
    "koszul_xd_d2.json": lambda: catalog.koszul_xd(2),
    "koszul_x2_y3.json": catalog.koszul_x2_y3,
    "koszul_non_acyclic_x2.json": catalog.koszul_non_acyclic,
    "be_generic_c2_d2.json": lambda: catalog.be_generic(2, 2),
    "be_generic_2_3_c4.json": catalog.be_generic_2_3,
}


def main(outdir="fixtures"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, build in FIXTURES.items():
        (out / name).write_text(dump_json(morphism_to_json(build())), encoding="utf-8")
        print("wrote", out / name)


if __name__ == "__main__":
    main(*sys.argv[1:])
