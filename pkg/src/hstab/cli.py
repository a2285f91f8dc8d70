"""Command-line entry point.

Every subcommand writes one deterministic document (or text table) to stdout.
Exit codes: 0 success, 1 domain error (a JSON error document is printed),
2 usage error (argparse).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import forms, kcomplex, mmm, plrepair
from .cache import Cache
from .documents import (DocumentError, as_int, chain_complex_doc, complex_doc, dumps, homology_doc, loads,
                        module_doc, param_doc, parse, parse_complex, parse_map, parse_module,
                        parse_semisimplicial, semisimplicial_doc, _label, _vertex)
from .forms import FormParameter, HyperbolicMorphism, Lam, QuadraticModule
from .scomplex import (AugmentedSemiSimplicialSet, ChainComplex, ChainError, ComplexError, SemiSimplicialSet,
                       SimplicialComplex, SimplicialMap, closure, homology, injective_words,
                       semisimplicial_chain_complex, simplicial_homology, wcm_check)
from .scomplex.injectivity import criteria_report
from .specseq import pages
from .specseq.stability import PRESETS, FloorAffine, NoRangeDerivable, StabilitySpec, stability_range

DOMAIN_ERRORS = (DocumentError, forms.FormsError, forms.SearchExhausted, ComplexError, ChainError,
                 plrepair.RepairError, plrepair.DiskError, mmm.MmmError, NoRangeDerivable, OSError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _read(path: str) -> Any:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return loads(text)


def _emit(doc: Any) -> None:
    sys.stdout.write(dumps(doc) + "\n")


# -- forms ------------------------------------------------------------------


def cmd_forms_lambda_n(args, cache):
    _emit(param_doc(forms.lambda_n(args.N)))


def cmd_forms_check(args, cache):
    doc = _read(args.file)
    kind = doc.get("type") if isinstance(doc, dict) else None
    if kind == "quadratic_module":
        M = parse_module(doc)
        _emit({"type": "check", "kind": kind, "valid": True, "rank": M.rank,
               "nondegenerate": forms.is_nondegenerate(M)})
    elif kind == "morphism":
        f = parse(doc)
        ok = forms.check_morphism(f)
        _emit({"type": "check", "kind": kind, "valid": ok,
               "isomorphism": ok and forms.is_isomorphism(f)})
    else:
        raise DocumentError(f"forms check expects a quadratic_module or morphism, got {kind!r}")


# -- K^a --------------------------------------------------------------------


def _ka_module(args) -> QuadraticModule:
    if args.module:
        return parse_module(_read(args.module))
    if args.g is None:
        raise DocumentError("give either --module FILE or --g")
    try:
        lam = Lam(args.lam)
    except ValueError:
        raise DocumentError(f"unknown lambda {args.lam!r} (use 0, 2Z or Z)") from None
    return forms.hyperbolic(args.g, FormParameter(args.epsilon, lam))


def _hm_label(h: HyperbolicMorphism) -> tuple:
    return (tuple(h.e), tuple(h.f))


def _relabel(K: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex([tuple(_hm_label(v) for v in s) for s in K.simplices], check=False)


def cmd_ka_build(args, cache):
    M = _ka_module(args)
    key = {"module": module_doc(M), "bound": args.bound, "max_dim": args.max_dim}

    def compute():
        T = kcomplex.build_ka(M, args.bound, args.max_dim)
        K = _relabel(T.complex)
        return {**complex_doc(K), "f_vector": list(K.f_vector()), "bound": args.bound, "module": module_doc(M)}

    _emit(cache.get_or_compute("ka build", key, compute))


def cmd_ka_link(args, cache):
    M = _ka_module(args)
    try:
        raw = json.loads(args.simplex)
        sigma = tuple(HyperbolicMorphism(tuple(as_int(x) for x in e), tuple(as_int(x) for x in f)) for e, f in raw)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise DocumentError(f"--simplex must be a JSON list of [e, f] pairs: {exc}") from None
    for h in sigma:
        if not forms.is_hyperbolic_morphism(M, h):
            raise forms.FormsError(f"{_hm_label(h)} is not a hyperbolic morphism into the module")
    T = kcomplex.build_ka(M, args.bound, args.max_dim)
    R = kcomplex.link_restriction(T, sigma)
    _emit({"type": "ka_link", "link": complex_doc(_relabel(R.map.domain)),
           "complement": module_doc(R.complement), "basis": [list(b) for b in R.basis],
           "assignment": [[_label(_hm_label(v)), _label(_hm_label(R.map.assignment[v]))]
                          for v in R.map.domain.vertices]})


# -- complexes ----------------------------------------------------------------


def cmd_homology(args, cache):
    doc = _read(args.file)

    def compute():
        obj = parse(doc)
        if isinstance(obj, SimplicialComplex):
            return homology_doc(simplicial_homology(obj, reduced=args.reduced))
        if args.reduced:
            raise DocumentError("--reduced applies to simplicial complexes only")
        if isinstance(obj, AugmentedSemiSimplicialSet):
            return homology_doc(pages.total_homology(obj)["absolute"])
        if isinstance(obj, SemiSimplicialSet):
            return homology_doc(homology(semisimplicial_chain_complex(obj)))
        if isinstance(obj, ChainComplex):
            return homology_doc(homology(obj))
        raise DocumentError(f"no homology for a {doc.get('type')} document")

    _emit(cache.get_or_compute("homology", {"input": doc, "reduced": args.reduced}, compute))


def cmd_wcm(args, cache):
    K = parse_complex(_read(args.file))
    r = wcm_check(K, args.n)
    cert = None if r.certificate is None else [_label(v) for v in r.certificate]
    _emit({"type": "wcm", "n": r.n, "verdict": r.verdict.label, "certificate": cert, "reason": r.reason})


def cmd_swi(args, cache):
    f = parse_map(_read(args.file))
    rep = criteria_report(f)
    _emit({"type": "swi", "simplexwise_injective": all(rep.values()), "criteria": rep})


# -- repair -------------------------------------------------------------------


def _pairs(xs) -> dict:
    return {_vertex(a): _vertex(b) for a, b in xs}


def cmd_repair(args, cache):
    doc = _read(args.file)
    if not isinstance(doc, dict) or doc.get("type") != "repair_problem":
        raise DocumentError("repair expects a repair_problem document")
    try:
        disk = plrepair.TriangulatedDisk(parse_complex(doc["disk"]), parse_complex(doc["boundary"]),
                                         as_int(doc["n"]))
        X = parse_complex(doc["target"])
        bmap = _pairs(doc["boundary_map"])
        initial = _pairs(doc["initial"]) if "initial" in doc else None
    except KeyError as exc:
        raise DocumentError(f"repair_problem is missing {exc}") from None
    res = plrepair.repair(disk, bmap, X, initial=initial, max_steps=args.max_steps)
    h = res.state.h
    out = {"type": "repair_result", "disk": complex_doc(res.disk.complex),
           "map": [[_label(v), _label(h[v])] for v in res.disk.complex.vertices],
           "steps": len(res.trace), "bad_remaining": len(plrepair.find_bad_simplices(res.state))}
    if args.trace:
        out["trace"] = res.trace_lines()
    _emit(out)


# -- spectral sequences -----------------------------------------------------------


def _specseq_input(args) -> AugmentedSemiSimplicialSet:
    if args.injective_words is not None:
        if args.injective_words < 1:
            raise DocumentError("--injective-words needs m >= 1")
        return AugmentedSemiSimplicialSet.over_point(injective_words(args.injective_words))
    if not args.file:
        raise DocumentError("give a semisimplicial_set FILE or --injective-words M")
    X = parse_semisimplicial(_read(args.file))
    return X if isinstance(X, AugmentedSemiSimplicialSet) else AugmentedSemiSimplicialSet.over_point(X)


def page_doc(P: pages.SpectralPage) -> dict:
    doc = {"type": "spectral_page", "r": P.r, "augmented": P.augmented,
           "entries": [[p, q, rk, list(t)] for (p, q), (rk, t) in sorted(P.entries.items())]}
    if P.r == 1:
        doc["d1"] = [[p, q, M] for (p, q), M in pages.d1(P).items()]
    return doc


def _page_text(P: pages.SpectralPage, title: str) -> str:
    lines = [f"{title} ({'augmented' if P.augmented else 'not augmented'})", *P.table()]
    if P.r == 1:
        for (p, q), M in pages.d1(P).items():
            lines.append(f"d1 {p},{q} -> {p - 1},{q}: " + " ".join(f"[{' '.join(map(str, row))}]" for row in M))
    lines.append(f"euler characteristic {P.euler_characteristic()}")
    return "\n".join(lines) + "\n"


def cmd_specseq_page(args, cache):
    X = _specseq_input(args)
    P = pages.e1_page(X, augmented=not args.no_augmentation)
    if args.page == "e2":
        P = pages.e2_page(P)
    if args.json:
        _emit(page_doc(P))
    else:
        sys.stdout.write(_page_text(P, args.page.upper()))


def cmd_specseq_total(args, cache):
    X = _specseq_input(args)
    T = pages.total_homology(X)
    if args.json:
        _emit({"type": "total_homology", **{k: homology_doc(v) for k, v in sorted(T.items())}})
    else:
        sys.stdout.write("".join(f"{k}: {v}\n" for k, v in sorted(T.items())))


def _floor_affine(text: str) -> FloorAffine:
    """'a/b' or 'a' meaning g -> floor((g + a)/b)."""
    try:
        if "/" in text:
            a, b = text.split("/")
            return FloorAffine(int(a), int(b))
        return FloorAffine(int(text), 1)
    except ValueError as exc:
        raise DocumentError(f"bad connectivity {text!r}: {exc}") from None


def cmd_specseq_range(args, cache):
    if args.preset:
        spec = PRESETS[args.preset]
    elif args.connectivity:
        spec = StabilitySpec(_floor_affine(args.connectivity), args.identification_offset,
                             args.surjectivity_offset, name="custom")
    else:
        raise DocumentError("give --preset or --connectivity")
    R = stability_range(spec, gmax=args.gmax)
    if args.json:
        _emit({"type": "stability_range", "iso": [R.iso_bound.a, R.iso_bound.b],
               "surjective": [R.surj_bound.a, R.surj_bound.b], "summary": R.summary(), "trace": R.trace})
        return
    sys.stdout.write("\n".join(R.summary() + [""] + R.trace) + "\n")


# -- mmm ------------------------------------------------------------------------


def cmd_mmm(args, cache):
    if args.what == "degrees":
        out = mmm.generator_degrees(args.n, args.max)
    else:
        out = mmm.hilbert_series(mmm.generator_degrees(args.n, args.max), args.max)
    sys.stdout.write(" ".join(map(str, out)) + "\n")


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hstab", description="Quadratic modules, K^a complexes, repair and stability tools.")
    p.add_argument("--cache-dir", help="result cache directory (default: $HSTAB_CACHE_DIR)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fp = sub.add_parser("forms").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    q = fp.add_parser("lambda-n", help="form parameter of the middle-dimensional quadratic module")
    q.add_argument("N", type=int)
    q.set_defaults(func=cmd_forms_lambda_n)
    q = fp.add_parser("check", help="validate a quadratic_module or morphism document")
    q.add_argument("file")
    q.set_defaults(func=cmd_forms_check)

    kp = sub.add_parser("ka").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name, func in (("build", cmd_ka_build), ("link", cmd_ka_link)):
        q = kp.add_parser(name)
        q.add_argument("--module", help="quadratic_module document (instead of --g)")
        q.add_argument("--g", type=int)
        q.add_argument("--epsilon", type=int, default=-1)
        q.add_argument("--lambda", dest="lam", default="2Z")
        q.add_argument("--bound", type=int, required=True)
        q.add_argument("--max-dim", type=int)
        if name == "link":
            q.add_argument("--simplex", required=True, help="JSON list of [e, f] pairs")
        q.set_defaults(func=func)

    q = sub.add_parser("homology", help="integral homology of a complex, semisimplicial set or chain complex")
    q.add_argument("file")
    q.add_argument("--reduced", action="store_true")
    q.set_defaults(func=cmd_homology)

    q = sub.add_parser("wcm", help="weakly Cohen-Macaulay check")
    q.add_argument("file")
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=cmd_wcm)

    q = sub.add_parser("swi", help="simplexwise injectivity of a simplicial map")
    q.add_argument("file")
    q.set_defaults(func=cmd_swi)

    q = sub.add_parser("repair", help="remove interior bad simplices from a disk map")
    q.add_argument("file")
    q.add_argument("--trace", action="store_true")
    q.add_argument("--max-steps", type=int, default=10_000)
    q.set_defaults(func=cmd_repair)

    sp = sub.add_parser("specseq").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name in ("e1", "e2", "total"):
        q = sp.add_parser(name)
        q.add_argument("file", nargs="?")
        q.add_argument("--injective-words", type=int, metavar="M")
        q.add_argument("--no-augmentation", action="store_true")
        q.add_argument("--json", action="store_true")
        q.set_defaults(func=cmd_specseq_total if name == "total" else cmd_specseq_page, page=name)
    q = sp.add_parser("range", help="symbolic stability range")
    q.add_argument("--preset", choices=sorted(PRESETS))
    q.add_argument("--connectivity", help="a/b meaning floor((g + a)/b)")
    q.add_argument("--identification-offset", type=int, default=5)
    q.add_argument("--surjectivity-offset", type=int)
    q.add_argument("--gmax", type=int, default=48)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_specseq_range)

    mp = sub.add_parser("mmm").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name in ("degrees", "hilbert"):
        q = mp.add_parser(name)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--max", type=int, required=True)
        q.set_defaults(func=cmd_mmm, what=name)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cache = Cache.from_env(args.cache_dir)
    try:
        args.func(args, cache)
    except DOMAIN_ERRORS as exc:
        _emit({"type": "error", "error": type(exc).__name__, "message": str(exc)})
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
