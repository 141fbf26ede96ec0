"""Compile every corpus machine through the whole chain and report the checks.

For each machine T the script builds the looped restart machine, compiles it
to a generalized shift and a block map, runs the exact conjugacy self-test and
the block audit, and classifies a few input orbits.  Output is one JSON
document on stdout.
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from tmdyn.corpus import CORPUS, corpus_inputs
from tmdyn.orbit import orbit_census, periodic_system
from tmdyn.pipeline import audit, compile_machine, conjugacy_selftest, random_configurations


@dataclass
class PipelineConfig:
    samples: int = 50
    steps: int = 40
    inputs: int = 12
    budget: int = 20_000
    seed: int = 0


def run_one(entry, cfg: PipelineConfig) -> dict:
    t0 = time.perf_counter()
    system = periodic_system(entry.machine)
    comp = compile_machine(system)
    conj = conjugacy_selftest(comp, random_configurations(system, cfg.samples, cfg.seed), cfg.steps)
    au = audit(comp)
    tapes = corpus_inputs(entry.machine, cfg.inputs, seed=cfg.seed, halts=entry.halts)
    census = orbit_census(system, tapes, cfg.budget)
    return {
        "machine": entry.name,
        "states": len(system.states),
        "shift_alphabet": len(comp.gshift.alphabet),
        "code_width": comp.code.width,
        "components": len(comp.blockmap.components),
        "conjugacy_checked": conj.checked,
        "conjugacy_ok": bool(conj),
        "audit": au.as_dict() | {"overlaps": len(au.overlaps)},
        "census": census.counts,
        "seconds": round(time.perf_counter() - t0, 3),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(PipelineConfig()).items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    cfg = PipelineConfig(**vars(ap.parse_args()))
    rows = [run_one(e, cfg) for e in CORPUS]
    print(json.dumps({"config": asdict(cfg), "machines": rows}, indent=2))


if __name__ == "__main__":
    main()
