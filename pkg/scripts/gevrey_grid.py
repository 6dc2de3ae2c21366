#!/usr/bin/env python3
"""Sweep Gevrey index pairs through every mixed-condition checker.

For each (s, t) the exact inclusion criterion is s <= t, so the grid doubles
as an end-to-end correctness experiment: any cell whose verdict disagrees
with the criterion is printed with its witnesses.  The cross-checker rerun
(--consistency) additionally runs all five checkers on each pair and applies
the equivalence-theorem implications between them.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time

from ultragrowth.conditions import (
    MixedConditionSpec,
    gevrey_harness,
    implication_consistency,
)
from ultragrowth.sequences import make_sequence


@dataclasses.dataclass
class GridConfig:
    s_values: tuple
    t_values: tuple
    kinds: tuple
    K: int
    consistency: bool
    out: str | None


def parse_args(argv=None) -> GridConfig:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--s", default="1.25,1.5,2,3", help="comma list of s")
    ap.add_argument("--t", default="1.25,1.5,2,3", help="comma list of t")
    ap.add_argument("--kinds", default="SV,L,gamma1,BMT_kappa",
                    help="comma list of condition kinds")
    ap.add_argument("--K", type=int, default=2000)
    ap.add_argument("--consistency", action="store_true",
                    help="also run the implication cross-checker per pair")
    ap.add_argument("--out", default=None, help="write cell JSON here")
    a = ap.parse_args(argv)
    return GridConfig(
        s_values=tuple(float(v) for v in a.s.split(",")),
        t_values=tuple(float(v) for v in a.t.split(",")),
        kinds=tuple(a.kinds.split(",")),
        K=a.K, consistency=a.consistency, out=a.out,
    )


def main(argv=None) -> int:
    cfg = parse_args(argv)
    all_cells = {}
    bad = 0
    for kind in cfg.kinds:
        t0 = time.perf_counter()
        cells = gevrey_harness(cfg.s_values, cfg.t_values, kind=kind, K=cfg.K)
        dt = time.perf_counter() - t0
        agree = sum(c["agree"] for c in cells)
        print(f"{kind:12s} {agree}/{len(cells)} cells agree   {dt:6.2f}s")
        for c in cells:
            if not c["agree"]:
                gated = (c["verdict"] == "INCONCLUSIVE"
                         and "not certified" in json.dumps(c["witnesses"]))
                if gated:
                    print(f"  gated    s={c['s']} t={c['t']}: "
                          f"hypothesis not certified, cell excluded")
                    continue
                bad += 1
                print(f"  MISMATCH s={c['s']} t={c['t']}: "
                      f"{c['verdict']} (expected {c['expected']}) "
                      f"{json.dumps(c['witnesses'], default=str)[:160]}")
        all_cells[kind] = cells
    if cfg.consistency:
        spec = MixedConditionSpec(kind="SV", K=cfg.K)
        for s in cfg.s_values:
            for t in cfg.t_values:
                M = make_sequence("gevrey", cfg.K, s=s)
                N = make_sequence("gevrey", cfg.K, s=t)
                rep = implication_consistency(M, N, spec)
                flag = "" if rep.verdict != "FAILS_TREND" else "  <-- FINDINGS"
                print(f"consistency s={s} t={t}: {rep.verdict}{flag}")
                if rep.witnesses["findings"]:
                    bad += 1
                    for f in rep.witnesses["findings"]:
                        print(f"    {f}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(all_cells, fh, sort_keys=True, indent=1, default=str)
        print(f"wrote {cfg.out}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
