"""Command-line front end: JSON in, JSON out.

Exit status: 0 when every check holds, 1 when some check fails, 2 for
unreadable or malformed input (the message names a JSON pointer).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, List, Optional, Tuple

from . import howie
from .groups import Element, GroupError, backend_from_json
from .presentations import (
    GeneralizedPresentation,
    NotUnimodular,
    RelativePresentation,
    SetSystem,
    SplittingCase,
    check_omega_conditions,
    generalized_unimodular_report,
    hypothesis_report,
    is_unimodular,
    rewrite_to_coset_form,
    split_cases,
)
from .small_cancellation import build_lemma3_family, build_section5_family, check_cprime
from .up import FiniteSubset, has_strong_up, unique_products
from .words import FreeProduct, FreeSyllable, SubproductSpec, Word

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"
        self.message = message


@dataclass
class RunConfig:
    subcommand: str
    input: Optional[Path] = None
    output: Optional[Path] = None
    lam: Optional[Fraction] = None
    family: Optional[str] = None
    l: int = 2
    J: int = 2017
    blocks: int = 1000
    count: int = 3
    action: Optional[str] = None
    edge: Optional[str] = None
    subfamily: List[str] = field(default_factory=list)


def q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("lambda must be positive")
    return value


# -- schema helpers ------------------------------------------------------------

def _get(obj, key, ptr: str, kind=None, default=...):
    if not isinstance(obj, dict):
        raise InputError(ptr, "expected an object")
    if key not in obj:
        if default is not ...:
            return default
        raise InputError(f"{ptr}/{key}", "missing")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise InputError(f"{ptr}/{key}", f"expected {getattr(kind, '__name__', kind)}")
    return val


def _guard(ptr: str, fn, *args):
    try:
        return fn(*args)
    except InputError:
        raise
    except (GroupError, KeyError, TypeError, ValueError) as exc:
        raise InputError(ptr, str(exc)) from None


def parse_ambient(obj: dict, ptr: str = "") -> FreeProduct:
    factors = _get(obj, "factors", ptr, dict, {})
    gens = _get(obj, "free_gens", ptr, list, [])
    backends = {name: _guard(f"{ptr}/factors/{name}", backend_from_json, spec)
                for name, spec in factors.items()}
    return _guard(ptr, FreeProduct, backends, [str(g) for g in gens])


def parse_word(amb: FreeProduct, items, ptr: str) -> Word:
    if not isinstance(items, list):
        raise InputError(ptr, "expected a list of syllables")
    raw = []
    for i, s in enumerate(items):
        p = f"{ptr}/{i}"
        if isinstance(s, dict) and "gen" in s:
            exp = _get(s, "exp", p, int, 1)
            if s["gen"] not in amb.free_gens:
                raise InputError(f"{p}/gen", f"unknown generator {s['gen']!r}")
            raw.append(FreeSyllable(s["gen"], exp))
        elif isinstance(s, dict) and "factor" in s:
            raw.append(_guard(p, amb.syllable, s["factor"], _get(s, "elem", p)))
        else:
            raise InputError(p, "syllable needs 'factor'/'elem' or 'gen'/'exp'")
    return _guard(ptr, amb.reduce, raw)


def parse_subproduct(obj, ptr: str) -> SubproductSpec:
    if obj is None:
        return SubproductSpec()
    return SubproductSpec(_get(obj, "factors", ptr, list, []), _get(obj, "free_gens", ptr, list, []))


def word_json(w: Word) -> str:
    return repr(w)


# -- subcommands -----------------------------------------------------------------

def cmd_analyze(doc, cfg: RunConfig) -> Tuple[dict, int]:
    if "generalized" in doc:
        return _analyze_generalized(_get(doc, "generalized", "", dict), "/generalized")
    amb = parse_ambient(doc)
    w = parse_word(amb, _get(doc, "relator", ""), "/relator")
    p = _guard("/relator", RelativePresentation.from_word, w)
    gen = _get(doc, "gen", "", str, None) or (amb.free_gens[0] if amb.free_gens else None)
    if gen is None:
        raise InputError("/free_gens", "need at least one added generator")
    if gen not in amb.free_gens:
        raise InputError("/gen", f"{gen!r} is not an added generator")
    sub = parse_subproduct(_get(doc, "subfamily", "", dict, None), "/subfamily")
    if cfg.subfamily:
        sub = sub | SubproductSpec(factors=cfg.subfamily)
    hyp = hypothesis_report(p, sub, gen)
    cases = split_cases(p)
    report = {"relator": word_json(p.relator), "gen": gen,
              "unimodular": is_unimodular(p, gen),
              "hypotheses": hyp.to_json(), "cases": cases.to_json()}
    return report, EXIT_OK if hyp.all_green else EXIT_FAIL


def _analyze_generalized(doc: dict, ptr: str) -> Tuple[dict, int]:
    G = _guard(f"{ptr}/G", backend_from_json, _get(doc, "G", ptr, dict))
    T = _guard(f"{ptr}/T", backend_from_json, _get(doc, "T", ptr, dict))
    pairs = _get(doc, "pairs", ptr, list)
    gs, ts = [], []
    for i, pr in enumerate(pairs):
        p = f"{ptr}/pairs/{i}"
        if not isinstance(pr, list) or len(pr) != 2:
            raise InputError(p, "expected [g, t]")
        gs.append(_guard(f"{p}/0", G.element, pr[0]))
        ts.append(_guard(f"{p}/1", T.element, pr[1]))
    pres = _guard(f"{ptr}/pairs", GeneralizedPresentation, G, T, gs, ts)
    rep = generalized_unimodular_report(pres)
    out = {"unimodularity": rep.to_json(), "relator": word_json(pres.relator)}
    try:
        form = rewrite_to_coset_form(pres)
        out["coset_form"] = {
            "t": list(form.t.value),
            "entries": [{"g": repr(e.g), "coset": list(e.coset), "k": e.k} for e in form.entries],
            "X1": sorted(list(c) for c in form.X1),
            "expands_to_relator": form.expand() == pres.relator,
        }
    except (NotUnimodular, SplittingCase) as exc:
        out["coset_form"] = {"skipped": str(exc)}
    return out, EXIT_OK if rep.verdict else EXIT_FAIL


def cmd_sc_check(doc, cfg: RunConfig) -> Tuple[dict, int]:
    if cfg.lam is None:
        raise InputError("/lambda", "--lambda is required")
    if cfg.family == "lemma3":
        relators, _ = build_lemma3_family(cfg.l, cfg.count, cfg.J)
        source = {"family": "lemma3", "l": cfg.l, "count": cfg.count, "J": cfg.J}
    elif cfg.family == "section5":
        relators, _ = build_section5_family(cfg.count, cfg.blocks)
        source = {"family": "section5", "count": cfg.count, "blocks": cfg.blocks}
    else:
        if doc is None:
            raise InputError("", "need an input file or --family")
        amb = parse_ambient(doc)
        rels = _get(doc, "relators", "", list)
        relators = [parse_word(amb, r, f"/relators/{i}") for i, r in enumerate(rels)]
        source = {"relators": [word_json(w) for w in relators]}
    rep = _guard("/relators", check_cprime, relators, cfg.lam)
    pr = rep.pieces
    out = {
        "source": source,
        "lambda": q(rep.lam),
        "holds": rep.holds,
        "max_piece_syllables": pr.max_piece_syllables,
        "min_relator_syllables": pr.min_relator_syllables,
        "ratio": q(pr.ratio),
        "witness": None if pr.witness is None else {
            "member_1": _clip(word_json(pr.witness[0])),
            "member_2": _clip(word_json(pr.witness[1])),
            "piece": word_json(pr.witness[2]),
        },
    }
    return out, EXIT_OK if rep.holds else EXIT_FAIL


def _clip(s: str, n: int = 200) -> str:
    return s if len(s) <= n else s[:n] + " ..."


def cmd_up_check(doc, cfg: RunConfig) -> Tuple[dict, int]:
    B = _guard("/backend", backend_from_json, _get(doc, "backend", "", dict))
    X = _guard("/X", FiniteSubset, B, [_guard(f"/X/{i}", B.element, v)
                                      for i, v in enumerate(_get(doc, "X", "", list))])
    Y = _guard("/Y", FiniteSubset, B, [_guard(f"/Y/{i}", B.element, v)
                                      for i, v in enumerate(_get(doc, "Y", "", list))])
    table = unique_products(X, Y)
    s = has_strong_up(X, Y)

    def el(e: Element):
        v = e.value
        return list(v) if isinstance(v, tuple) and not (v and isinstance(v[0], tuple)) else repr(e)

    out = {
        "unique_products": sorted(({"product": el(u.product), "x": el(u.x), "y": el(u.y)}
                                   for u in table.unique), key=json.dumps),
        "strong_up": {"applicable": s.applicable, "holds": s.holds,
                      "x_distinct": s.x_distinct,
                      "witnesses": [{"product": el(u.product), "x": el(u.x), "y": el(u.y)}
                                    for u in s.witnesses]},
    }
    return out, EXIT_FAIL if s.holds is False else EXIT_OK


def cmd_omega_check(doc, cfg: RunConfig) -> Tuple[dict, int]:
    I = _get(doc, "I", "", list)
    omega = _get(doc, "Omega", "", list)
    for i, w in enumerate(omega):
        if not isinstance(w, list):
            raise InputError(f"/Omega/{i}", "expected a list")
    flags = _get(doc, "N_flags", "", list, None)
    s = _guard("/Omega", SetSystem, I, omega, flags)
    rep = _guard("/Omega", check_omega_conditions, s)
    return rep.to_json(s), EXIT_OK if rep.ok else EXIT_FAIL


def cmd_diagram(doc, cfg: RunConfig) -> Tuple[dict, int]:
    d = _guard("", howie.diagram_from_json, doc)
    try:
        if cfg.action == "validate":
            rep = howie.validate(d, strict=False)
            out = rep.to_json()
            out["reducedness"] = howie.reducedness_report(d).to_json()
            out["labels"] = howie.labels(d)
            return out, EXIT_OK if rep.valid else EXIT_FAIL
        if cfg.action == "simulate":
            return howie.simulate(d).to_json(), EXIT_OK
        if cfg.action == "parity":
            rep = howie.check_parity_invariant(d)
            return rep.to_json(), EXIT_OK if rep.ok else EXIT_FAIL
        if cfg.action == "reduce":
            if cfg.edge is None:
                raise InputError("/edges", "--edge is required for reduce")
            return howie.diagram_to_json(howie.reduce_step(d, cfg.edge)), EXIT_OK
    except howie.NotMergeable as exc:
        return {"error": type(exc).__name__, "message": str(exc)}, EXIT_FAIL
    except howie.DiagramError as exc:
        return {"valid": False, "error": type(exc).__name__, "message": str(exc)}, EXIT_FAIL
    raise InputError("", f"unknown diagram action {cfg.action!r}")


COMMANDS = {
    "analyze": cmd_analyze,
    "sc-check": cmd_sc_check,
    "up-check": cmd_up_check,
    "omega-check": cmd_omega_check,
    "diagram": cmd_diagram,
}


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_default) + "\n"


def _default(o):
    if isinstance(o, Fraction):
        return q(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def run(cfg: RunConfig) -> Tuple[int, str]:
    """Execute one subcommand; returns the exit status and the report text."""
    doc = None
    try:
        if cfg.input is not None:
            try:
                doc = json.loads(Path(cfg.input).read_text())
            except OSError as exc:
                raise InputError("", f"cannot read input: {exc}") from None
            except json.JSONDecodeError as exc:
                raise InputError("", f"malformed JSON: {exc}") from None
        elif cfg.subcommand != "sc-check" or cfg.family is None:
            raise InputError("", "an input file is required")
        report, status = COMMANDS[cfg.subcommand](doc, cfg)
    except InputError as exc:
        report = {"error": "input", "pointer": exc.pointer, "message": exc.message}
        status = EXIT_INPUT
    return status, dumps(report)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relpres", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("-o", "--output", type=Path, help="write the report here instead of stdout")
        return p

    p = add("analyze", "unimodularity, case split and hypothesis checks for one presentation")
    p.add_argument("input", type=Path)
    p.add_argument("--subfamily", nargs="*", default=[], help="factor names of the subfamily")

    p = add("sc-check", "metric small-cancellation condition C'(lambda)")
    p.add_argument("input", type=Path, nargs="?")
    p.add_argument("--lambda", dest="lam", type=parse_rational, required=True)
    p.add_argument("--family", choices=["lemma3", "section5"])
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--J", type=int, default=2017)
    p.add_argument("--blocks", type=int, default=1000)
    p.add_argument("--count", type=int, default=3)

    p = add("up-check", "unique and strong unique products of two finite subsets")
    p.add_argument("input", type=Path)

    p = add("omega-check", "conditions on a finite set system")
    p.add_argument("input", type=Path)

    p = add("diagram", "Howie diagram operations")
    p.add_argument("action", choices=["validate", "simulate", "parity", "reduce"])
    p.add_argument("input", type=Path)
    p.add_argument("--edge")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        subcommand=ns.subcommand, input=ns.input, output=ns.output,
        lam=getattr(ns, "lam", None), family=getattr(ns, "family", None),
        l=getattr(ns, "l", 2), J=getattr(ns, "J", 2017), blocks=getattr(ns, "blocks", 1000),
        count=getattr(ns, "count", 3), action=getattr(ns, "action", None),
        edge=getattr(ns, "edge", None), subfamily=getattr(ns, "subfamily", []) or [],
    )
    status, text = run(cfg)
    if cfg.output is not None:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
