#!/usr/bin/env python3
"""Build data/knots.csv from the KnotInfo export.

Usage: extract_knotinfo.py KNOTINFO_CSV [OUT]

KNOTINFO_CSV is knotinfo_data_complete.csv from the `database_knotinfo`
Python package (pipe-delimited). Only the non-alternating 11-crossing knots
are written.
"""

import csv
import json
import re
import sys

# slicing unknotting numbers not carried by KnotInfo
US_OVERRIDES = {"11n115": (1, 1), "11n119": (1, 1), "11n182": (1, 1)}

# sign required of the intersection form of the double branched cover of a
# bounding Mobius band, where the knot would bound one
DEFINITENESS = {
    "11n17": "+1",
    "11n38": "-1",
    "11n40": "-1",
    "11n159": "+1",
    "11n166": "+1",
    "11n177": "+1",
    "11n178": "-1",
}

COLUMNS = [
    "name", "crossings", "pd", "signature", "arf", "g4", "u_lo", "u_hi",
    "us_lo", "us_hi", "c4_lo", "c4_hi", "crosscap_hi", "slice",
    "determinant", "definiteness",
]


def interval(cell):
    cell = cell.strip()
    if not cell:
        return ("", "")
    if cell.startswith("["):
        lo, hi = json.loads(cell)
        return (str(lo), str(hi))
    return (cell, cell)


def pd_text(cell):
    quads = json.loads(cell)
    return "PD[" + ", ".join("X[" + ",".join(map(str, q)) + "]" for q in quads) + "]"


def natural_key(name):
    m = re.match(r"(\d+)([an]?)_?(\d+)", name)
    return (int(m.group(1)), m.group(2), int(m.group(3)))


def main():
    src = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else "data/knots.csv"
    csv.field_size_limit(10**9)
    with open(src, newline="") as fh:
        reader = csv.DictReader(fh, delimiter="|")
        rows = [r for r in reader if re.fullmatch(r"11n_\d+", r["name"])]
    rows.sort(key=lambda r: natural_key(r["name"]))

    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in rows:
            name = r["name"].replace("_", "")
            g4 = r["smooth_four_genus"].strip()
            u_lo, u_hi = interval(r["unknotting_number"])
            us_lo, us_hi = map(str, US_OVERRIDES.get(name, ("", "")))
            _, cc_hi = interval(r["crosscap_number"])
            w.writerow([
                name,
                r["crossing_number"],
                pd_text(r["pd_notation"]),
                r["signature"],
                r["arf_invariant"],
                g4,
                u_lo,
                u_hi,
                us_lo,
                us_hi,
                "",
                "",
                cc_hi,
                "true" if g4 == "0" else "false",
                r["determinant"],
                DEFINITENESS.get(name, ""),
            ])
    print(f"wrote {len(rows)} knots to {out}")


if __name__ == "__main__":
    main()
