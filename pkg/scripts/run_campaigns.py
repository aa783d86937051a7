"""Run every verification campaign at its default desk-scale size and save the reports.

Usage: python scripts/run_campaigns.py [OUT_DIR] [--jobs N]
"""

import argparse
import json
import logging
import time
from pathlib import Path

from recolor_lab import verify
from recolor_lab.patterns import NAMED_CLASSES


def campaigns(jobs):
    for key in ("p5-diamond", "p5-house-bull", "semi-p4-sparse", "all"):
        yield f"class-{key}", lambda key=key: verify.campaign_class_recolorable(NAMED_CLASSES[key], 6, 2, jobs)
    yield "skeleton", lambda: verify.campaign_skeleton_equivalence(6, 2, jobs)
    yield "sibling", lambda: verify.campaign_sibling(5, 4, jobs=jobs)
    yield "hereditary-diamond", lambda: verify.campaign_hereditary_reduction("diamond", 6, 2, jobs)
    yield "hereditary-2K2", lambda: verify.campaign_hereditary_reduction("2K2", 6, 2, jobs)
    yield "conjecture", lambda: verify.campaign_conjecture(5, 2, 1, jobs)
    yield "staircase", lambda: verify.campaign_staircase(10)
    yield "structure", lambda: verify.campaign_structure_theorems(8)
    yield "figure2", verify.figure2_reproduction


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("out", nargs="?", default="campaign_reports")
    parser.add_argument("--jobs", type=int, default=verify.default_jobs())
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = {}
    for name, run in campaigns(args.jobs):
        t0 = time.perf_counter()
        report = run()
        (out / f"{name}.json").write_text(json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n")
        status = "pass" if report.passed else ("FAIL" if report.must_pass else "report-only")
        summary[name] = status
        print(f"{name:22s} {status:12s} {len(report.verdicts):5d} items  {time.perf_counter() - t0:7.1f}s")
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
