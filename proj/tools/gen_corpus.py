#!/usr/bin/env python3
"""Regenerate the bundled knot corpus from SnapPy.

Requires `pip install snappy knot_floer_homology`. PD codes are shifted to
1-based arc labels; Omega is emitted as [alexander, maslov, rank] triples.
"""
import json
import sys
import warnings

warnings.filterwarnings("ignore")

import snappy  # noqa: E402
from knot_floer_homology import pd_to_hfk  # noqa: E402

ROLFSEN_COUNTS = {3: 1, 4: 1, 5: 2, 6: 3, 7: 7, 8: 21, 9: 49}


def record(name, pd):
    pd1 = [[x + 1 for x in crossing] for crossing in pd]
    ranks = pd_to_hfk(pd)["ranks"]
    omega = sorted([a, m, r] for (a, m), r in ranks.items())
    return {
        "name": name,
        "pd": json.dumps(pd1, separators=(",", ":")),
        "omega": omega,
    }


def link_pd(name):
    return snappy.Link(name).PD_code()


def manifold_pd(name):
    return snappy.Manifold(name).link().PD_code()


def main(out_dir):
    with open(f"{out_dir}/corpus_le9.jsonl", "w") as out:
        for n, count in ROLFSEN_COUNTS.items():
            for k in range(1, count + 1):
                name = f"{n}_{k}"
                out.write(json.dumps(record(name, link_pd(name))) + "\n")
    with open(f"{out_dir}/named_examples.jsonl", "w") as out:
        out.write(json.dumps(record("10_123", link_pd("10_123"))) + "\n")
        out.write(json.dumps(record("11_6", link_pd("K11a6"))) + "\n")
        out.write(json.dumps(record("15n139630", manifold_pd("15n139630"))) + "\n")
    with open(f"{out_dir}/determined_knots.jsonl", "w") as out:
        for name in ["3_1", "4_1", "5_1", "5_2"]:
            out.write(json.dumps(record(name, link_pd(name))) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data")
