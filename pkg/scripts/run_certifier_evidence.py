"""Reproduce the headline window-certification results.

Four center families, smallest to hardest: a single center forced with
one color in dimensions 1 to 3, a generic two-point family that stays
colorable, and the two sandwich nuclei whose windows are forced with 2
and 3 colors.  Emits one JSON document with verdicts, proof windows,
and decision counts.  Exit code 1 if any case misses its expected
verdict.
"""
import argparse
import json
import sys
import time

from centerpole.certifier import DEFAULT_BUDGET, certify_schedule
from centerpole.cube import build_sandwich, lattice


def schedule_row(name, centers, colors, r_list, expected, budget, r_factor=3):
    started = time.perf_counter()
    schedule = certify_schedule(
        sorted(centers), colors, r_list, r_factor=r_factor, budget=budget
    )
    verdicts = [row.verdict.kind.value for row in schedule.rows]
    return {
        "name": name,
        "centers": [list(p.coords) for p in schedule.centers],
        "colors": colors,
        "rList": r_list,
        "rFactor": r_factor,
        "verdicts": verdicts,
        "provedAtOuter": [row.proved_at_outer for row in schedule.rows],
        "decisions": [row.verdict.stats.decisions for row in schedule.rows],
        "expected": expected,
        "ok": verdicts == expected,
        "seconds": round(time.perf_counter() - started, 3),
    }


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    parser.add_argument("--skip-hard", action="store_true",
                        help="skip the 3-color spatial case")
    parser.add_argument("--out", help="output file; default stdout")
    args = parser.parse_args(argv)

    cases = []
    for dim in (1, 2, 3):
        cases.append(
            schedule_row(
                f"singleton-dim{dim}",
                [lattice(*(0,) * dim)],
                1,
                [1],
                ["Forced"],
                args.budget,
            )
        )
    cases.append(
        schedule_row(
            "generic-pair",
            [lattice(0, 0), lattice(3, 0)],
            2,
            [1, 2],
            ["Colorable", "Colorable"],
            args.budget,
        )
    )
    cases.append(
        schedule_row(
            "planar-nucleus",
            build_sandwich(1, -1).points(),
            2,
            [1, 2, 3],
            ["Forced", "Forced", "Forced"],
            args.budget,
        )
    )
    if not args.skip_hard:
        cases.append(
            schedule_row(
                "spatial-nucleus",
                build_sandwich(2, 0).points(),
                3,
                [1, 2],
                ["Forced", "Forced"],
                args.budget,
            )
        )

    all_ok = all(case["ok"] for case in cases)
    doc = {
        "budget": args.budget,
        "ok": all_ok,
        "cases": cases,
    }
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
