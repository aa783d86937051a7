"""Rebuild the hexagon-plus-apex graph, its blowup, and report the R_6 census."""

import json
import sys

from recolor_lab.verify import figure2_reproduction


def main() -> int:
    report = figure2_reproduction()
    for v in report.verdicts:
        print(f"{'ok  ' if v['ok'] else 'FAIL'} {v['check']}")
    for note in report.notes:
        print(note)
    print(f"elapsed {report.elapsed:.1f}s")
    if "--json" in sys.argv:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
