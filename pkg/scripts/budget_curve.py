"""Tabulate the step budget of the decaying flow over a grid of amplitudes.

Writes ``M, tau_per_step, steps`` rows as CSV, plus the tau(t) curve for one
parameter set when ``--curve`` is given.
"""
import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

from tmdyn.ns_budget import NSParams, step_budget, tau_curve


@dataclass
class BudgetConfig:
    nu: str = "1"
    amplitudes: tuple = ("1", "2", "5", "10", "20", "50")
    steps: tuple = ("0.1", "0.5", "1", "3")
    curve_samples: int = 0
    t_max: float = 8.0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nu", default=BudgetConfig.nu)
    ap.add_argument("--curve", type=int, default=0, help="samples of tau(t) for the largest amplitude")
    ap.add_argument("--t-max", type=float, default=BudgetConfig.t_max)
    args = ap.parse_args()
    cfg = BudgetConfig(nu=args.nu, curve_samples=args.curve, t_max=args.t_max)

    w = csv.writer(sys.stdout, lineterminator="\n")
    if cfg.curve_samples:
        p = NSParams(cfg.nu, cfg.amplitudes[-1])
        w.writerow(["t", "tau"])
        w.writerows(tau_curve(p, cfg.t_max, cfg.curve_samples))
        return
    w.writerow(["nu", "M", "tau_per_step", "tau_sup", "steps"])
    for m in cfg.amplitudes:
        p = NSParams(cfg.nu, m)
        for s in cfg.steps:
            w.writerow([cfg.nu, m, s, str(p.tau_sup), step_budget(p, Fraction(s))])


if __name__ == "__main__":
    main()
