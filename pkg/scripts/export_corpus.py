"""Write every corpus machine to machines/<name>.tm."""
import argparse
from pathlib import Path

from tmdyn.corpus import CORPUS

ap = argparse.ArgumentParser()
ap.add_argument("--out", default="machines")
args = ap.parse_args()

out = Path(args.out)
out.mkdir(parents=True, exist_ok=True)
for e in CORPUS:
    (out / f"{e.name}.tm").write_text(e.text, encoding="utf-8")
    print(out / f"{e.name}.tm")
