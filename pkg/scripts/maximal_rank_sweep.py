"""Compare (h0, h1) for k random twistor lines with the expected maximal-rank values."""
import argparse
from dataclasses import dataclass
from math import comb

from twistorlines.linsys import Configuration, cohomology, nu
from twistorlines.twistor import sample_twistor_lines


@dataclass(frozen=True)
class Config:
    max_d: int = 6
    seeds: int = 5
    extra_k: int = 2


def run(cfg: Config):
    print("d,k,seed,h0,h1,expected_h0,expected_h1,method")
    off = 0
    for d in range(1, cfg.max_d + 1):
        cols = comb(d + 3, 3)
        for k in range(1, nu("plain", d) + cfg.extra_k + 1):
            want = (max(0, cols - k * (d + 1)), max(0, k * (d + 1) - cols))
            for s in range(cfg.seeds):
                rep = cohomology(Configuration(tuple(sample_twistor_lines(k, (d, k, s)))), d)
                off += (rep.h0, rep.h1) != want
                print(f"{d},{k},{s},{rep.h0},{rep.h1},{want[0]},{want[1]},{rep.method}")
    print(f"# {off} draws off the expected values")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-d", type=int, default=Config.max_d)
    p.add_argument("--seeds", type=int, default=Config.seeds)
    p.add_argument("--extra-k", type=int, default=Config.extra_k, help="how far to go past nu(d)")
    a = p.parse_args()
    run(Config(a.max_d, a.seeds, a.extra_k))
