"""Time the C'(lambda) check on both explicit relator families."""
import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from relpres.small_cancellation import build_lemma3_family, build_section5_family, check_cprime


@dataclass
class Config:
    count: int = 3
    blocks: int = 1000
    l: int = 2
    J: int = 2017


def main(cfg: Config) -> None:
    runs = [
        ("s_i prod (r t_ij)", lambda: build_section5_family(cfg.count, cfg.blocks)[0],
         Fraction(1, 100)),
        ("v_i s_i^-1", lambda: build_lemma3_family(cfg.l, cfg.count, cfg.J)[0],
         Fraction(1, 100 * cfg.l)),
    ]
    for name, build, lam in runs:
        t0 = time.perf_counter()
        rep = check_cprime(build(), lam)
        dt = time.perf_counter() - t0
        p = rep.pieces
        print(f"{name:20s} lambda={lam}  holds={rep.holds}  piece={p.max_piece_syllables}  "
              f"min_len={p.min_relator_syllables}  ratio={p.ratio}  {dt:.2f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f, default in vars(Config()).items():
        ap.add_argument(f"--{f}", type=int, default=default)
    main(Config(**vars(ap.parse_args())))
