"""Line enumeration on the Fermat cubic over several seeds."""
import argparse
import time
from collections import Counter
from dataclasses import dataclass

from twistorlines.acceptance import fermat_cubic
from twistorlines.linefinder import LineFinderOptions, find_lines


@dataclass(frozen=True)
class Config:
    seeds: int = 10
    n_starts: int | None = None


def run(cfg: Config):
    f = fermat_cubic()
    counts = Counter()
    for s in range(cfg.seeds):
        t = time.perf_counter()
        res = find_lines(f, LineFinderOptions(seed=s, n_starts=cfg.n_starts))
        counts[len(res)] += 1
        worst = max(x.residual for x in res)
        print(f"seed {s:3d}: {len(res):2d} lines, {res.n_twistor} twistor, "
              f"worst residual {worst:.1e}, {time.perf_counter() - t:.1f}s")
    print("line counts:", dict(counts))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seeds", type=int, default=Config.seeds)
    p.add_argument("--n-starts", type=int, default=None, help="starts per chart")
    a = p.parse_args()
    run(Config(a.seeds, a.n_starts))
