"""Translates of the coset set X1 under T = Z^2 form a set system passing the
min/max conditions, as the strong UP of T/<t> = Z predicts."""
import argparse
import random
from dataclasses import dataclass

from relpres.groups import Free, FreeAbelian
from relpres.presentations import (
    GeneralizedPresentation,
    SetSystem,
    SplittingCase,
    check_omega_conditions,
    rewrite_to_coset_form,
    translate_cosets,
)


@dataclass
class Config:
    trials: int = 200
    translates: int = 6
    seed: int = 0


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    G, T = Free(("a",)), FreeAbelian(2)
    passed = tried = 0
    while tried < cfg.trials:
        ts = [T.element((rng.randint(-3, 3), rng.randint(-3, 3))) for _ in range(rng.randint(2, 4))]
        p = GeneralizedPresentation(G, T, [G.element("a")] * len(ts), ts)
        try:
            form = rewrite_to_coset_form(p)
        except (SplittingCase, ValueError):
            continue
        tried += 1
        shifts = {tuple(rng.randint(-4, 4) for _ in range(2)) for _ in range(cfg.translates)}
        omega = {translate_cosets(T, form.t, form.X1, T.element(x)) for x in shifts}
        universe = set().union(*omega)
        passed += check_omega_conditions(SetSystem(universe, omega)).ok
    print(f"{passed}/{tried} translate systems satisfy the min/max conditions")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f, default in vars(Config()).items():
        ap.add_argument(f"--{f}", type=int, default=default)
    main(Config(**vars(ap.parse_args())))
