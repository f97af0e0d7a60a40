"""Finite-N reports and calibrated constants for the built-in families.

Run: python3 demos/04_harness_reports.py [outdir]
"""

import sys

from addrep.harness import run_experiment

outdir = sys.argv[1] if len(sys.argv) > 1 else None

for family in ("full", "complement-of-powers", "complement-of-greedy-sidon"):
    bundle = run_experiment({"family": family, "N": 4096, "checks": ["all"], "calibrate": True},
                            outdir=f"{outdir}/{family}" if outdir else None)
    print(f"\n== {family}: {bundle['summary']}")
    cal = bundle["calibration"]
    for variant, info in cal.get("theorem1_c1", {}).items():
        print(f"  minimal c1 ({variant}): {info['c1']:.4f}, holds from N = {info['threshold_N']}")
    print(f"  minimal c for the psi lower bound: {cal.get('theorem2_c')}")
    for r in bundle["reports"]:
        if r["status"] in ("fail", "not-applicable") and r["check_id"] != "lemma5b":
            scale = r["params"].get("N", r["params"].get("Y"))
            print(f"  {r['status']:>14}  {r['check_id']}[{r['variant']}] at {scale}: "
                  f"lhs={r['lhs']:.4g} rhs={r['rhs']:.4g}")
