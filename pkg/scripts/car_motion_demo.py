"""Run the car motion on every fixture diagram and list the complete collisions."""
import argparse
from dataclasses import dataclass

from relpres import fixtures
from relpres.howie import check_parity_invariant, reducedness_report, simulate


@dataclass
class Config:
    verbose: bool = False


def main(cfg: Config) -> None:
    for name, d in fixtures.all_fixtures().items():
        rep = simulate(d)
        par = check_parity_invariant(d)
        red = reducedness_report(d)
        pts = ", ".join(f"{k} {w}" + (f"@{p}" if p else "") for k, w, p in rep.complete_points)
        print(f"{name:12s} m={d.m} faces={len(d.faces):2d} parity={par.ok} "
              f"strongly_reduced={red.strongly_reduced} complete: {pts}")
        if cfg.verbose:
            for e in rep.events:
                mark = "*" if e.complete else " "
                print(f"    {mark} t={e.time!s:>5} {e.kind:6s} {e.where:4s} {','.join(e.faces)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    main(Config(**vars(ap.parse_args())))
