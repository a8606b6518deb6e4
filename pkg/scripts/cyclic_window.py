"""Maximal cyclic subgroups <(p^k, 1)> of Z + Z_p, restricted to a finite window."""
import argparse
from dataclasses import dataclass

from relpres.up import maximal_cyclic_window


@dataclass
class Config:
    p: int = 3
    bound: int = 100
    count: int = 4


def main(cfg: Config) -> None:
    rep = maximal_cyclic_window(cfg.p, cfg.bound, cfg.count)
    for g, w in zip(rep.generators, rep.windows):
        print(f"<{g}>: {len(w)} elements with |first coordinate| <= {cfg.bound}")
    print(f"pairwise distinct={rep.pairwise_distinct} no containment={rep.no_containment} "
          f"maximal={rep.maximal_in_window}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f, default in vars(Config()).items():
        ap.add_argument(f"--{f}", type=int, default=default)
    main(Config(**vars(ap.parse_args())))
