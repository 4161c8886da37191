"""Command-line front end.

Exit codes: 0 success, 1 failed check or inconclusive search, 2 usage or
input error.  Payloads go to stdout as JSON (or plain text with
``--format text``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .irreducibility import decide
from .linalg import matrix_to_json
from .presentations import (
    CATALOG_NAMES,
    RewriteTrace,
    check_trace,
    derive_generator,
    expand_reduced,
    map_F,
    map_G,
    presentation_catalog,
    search_equiv,
    to_reduced,
)
from .reps import build_named, check_relations, rep_eval, rep_from_json
from .words import KIND_OF, free_reduce, parse_word, pi_image

DEFAULT_PRESENTATION = {
    "eta1": "twin",
    "eta2": "twin",
    "eta1p": "vst",
    "eta1_prime": "vst",
    "eta2p": "vstm",
    "eta2_prime": "vstm",
    "upsilon": "vst",
}

CONVERSIONS = {
    ("reduced", "standard"),
    ("connecting", "standard"),
    ("standard", "connecting"),
    ("standard", "reduced"),
}


class UsageError(Exception):
    pass


def _guess_alphabet(text: str) -> str:
    return "connecting" if any(tok[:1] in "mMg" for tok in text.split()) else "standard"


def _parse(text: str, n: int, alphabet: str | None = None):
    alphabet = alphabet or _guess_alphabet(text)
    mode = "group" if any(tok.startswith("T") for tok in text.split()) else "monoid"
    return parse_word(text, n, alphabet, mode)


def _need_n(args) -> int:
    if args.n is None:
        raise UsageError("-n is required")
    return args.n


def _rep_from_args(args):
    if args.rep_json:
        text = args.rep_json
        if not text.lstrip().startswith("{"):
            with open(text) as fh:
                text = fh.read()
        obj = json.loads(text)
        if args.n is not None and "images" not in obj:
            obj.setdefault("n", args.n)
        return rep_from_json(obj), obj.get("name", "custom")
    if not args.rep:
        raise UsageError("give --rep NAME or --rep-json")
    params = {k: getattr(args, k) for k in ("f", "v", "w", "y", "a", "b", "c", "x") if getattr(args, k) is not None}
    if args.family is not None:
        params["family"] = args.family
    mode = args.mode or "monoid"
    return build_named(args.rep, _need_n(args), params, mode), args.rep


# ---------------------------------------------------------------------------
# commands; each returns (exit code, payload, text rendering)


def cmd_pi(args):
    w = _parse(args.word, _need_n(args), args.alphabet)
    p = pi_image(w)
    pure = p.is_identity()
    payload = {"word": str(w), "images": list(p.images), "cycles": str(p), "pure": pure}
    text = f"{list(p.images)}\npure: {str(pure).lower()}"
    return 0, payload, text


def cmd_reduce(args):
    w = _parse(args.word, _need_n(args), args.alphabet)
    r = free_reduce(w)
    return 0, {"word": str(r)}, str(r)


def cmd_check_rep(args):
    rep, name = _rep_from_args(args)
    pname = args.presentation
    if pname is None:
        pname = DEFAULT_PRESENTATION.get(name, "vstm")
        if pname == "vstm" and rep.mode == "group":
            pname = "vst"
    pres = presentation_catalog(pname, rep.n)
    bad = check_relations(rep, pres)
    text = "ok" if not bad else "violated: " + ", ".join(bad)
    return (1 if bad else 0), bad, text


def cmd_eval(args):
    rep, _ = _rep_from_args(args)
    w = _parse(args.word, rep.n, args.alphabet)
    m = rep_eval(rep, w)
    return 0, matrix_to_json(m), str(m)


def cmd_irreducible(args):
    rep, _ = _rep_from_args(args)
    report = decide(rep, args.at)
    payload = report.to_json()
    lines = [f"algebra dimension {report.algebra_dimension} of {rep.n * rep.n}", f"verdict: {report.verdict}"]
    if report.witness is not None:
        lines.append("witness: (" + ", ".join(payload["witness"]) + ")")
    if report.predicate is not None:
        lines.append(f"predicate: {report.predicate}")
    return 0, payload, "\n".join(lines)


def cmd_convert(args):
    src, dst = args.source, args.target
    if (src, dst) not in CONVERSIONS:
        raise UsageError(f"unsupported conversion {src} -> {dst}")
    w = _parse(args.word, _need_n(args), src)
    if src == "reduced":
        out = expand_reduced(w)
    elif src == "connecting":
        out = map_F(w)
    elif dst == "connecting":
        out = map_G(w)
    else:
        out = to_reduced(w)
    out = free_reduce(out)
    return 0, {"word": str(out), "alphabet": out.alphabet}, str(out)


def cmd_derive(args):
    kind = KIND_OF.get(args.kind)
    if kind is None:
        raise UsageError(f"unknown generator kind {args.kind!r}")
    w = derive_generator(kind, args.index, _need_n(args))
    return 0, {"word": str(w)}, str(w)


def cmd_search_equiv(args):
    n = _need_n(args)
    pres = presentation_catalog(args.presentation, n)
    u = _parse(args.u, n, pres.alphabet)
    w = _parse(args.w, n, pres.alphabet)
    res = search_equiv(u, w, pres, args.max_len, args.max_nodes)
    payload = {"status": res.status, "nodes": res.nodes}
    if res.proved:
        payload["trace"] = res.trace.to_json()
        text = "proved\n" + "\n".join(
            f"{s.label} {s.dir} @{s.pos}" for s in res.trace.steps
        )
        return 0, payload, text
    payload["reason"] = res.reason
    return 1, payload, f"unknown ({res.reason})"


def cmd_trace_verify(args):
    text = sys.stdin.read() if args.file == "-" else open(args.file).read()
    trace = RewriteTrace.from_json(json.loads(text))
    chk = check_trace(trace)
    payload = {"ok": chk.ok, "steps": len(trace), "words": chk.words}
    if chk.ok:
        return 0, payload, f"verified ({len(trace)} steps)"
    payload["failed_step"] = chk.failed_step
    payload["message"] = chk.message
    return 1, payload, f"failed at step {chk.failed_step}: {chk.message}"


def cmd_catalog(args):
    pres = presentation_catalog(args.name, _need_n(args))
    text = "\n".join(f"{r.label}: {r.lhs} = {r.rhs}" for r in pres.relations)
    return 0, pres.to_json(), text


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, help="strand count")
    common.add_argument("--format", choices=("json", "text"), default="json")

    rep = argparse.ArgumentParser(add_help=False)
    rep.add_argument("--rep", help="eta1, eta2, eta1p, eta2p or upsilon")
    rep.add_argument("--rep-json", help="representation JSON (inline or a file path)")
    rep.add_argument("--mode", choices=("monoid", "group"))
    for k in ("f", "v", "w", "y", "a", "b", "c", "x"):
        rep.add_argument(f"--{k}")
    rep.add_argument("--family", type=int)

    alpha = argparse.ArgumentParser(add_help=False)
    alpha.add_argument("--alphabet", choices=("standard", "reduced", "connecting", "reduced-connecting"))

    p = argparse.ArgumentParser(prog="vstlab", description="Exact computations for virtual singular twin monoids.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("pi", parents=[common, alpha], help="permutation image and purity")
    s.add_argument("word")
    s.set_defaults(func=cmd_pi)

    s = sub.add_parser("reduce", parents=[common, alpha], help="free reduction")
    s.add_argument("word")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("check-rep", parents=[common, rep], help="check a representation against a presentation")
    s.add_argument("--presentation", choices=CATALOG_NAMES)
    s.set_defaults(func=cmd_check_rep)

    s = sub.add_parser("eval", parents=[common, rep, alpha], help="image of a word")
    s.add_argument("word")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("irreducible", parents=[common, rep], help="Burnside decision at a specialization")
    s.add_argument("--at", required=True, help="specialization point t0 in Q(i)")
    s.set_defaults(func=cmd_irreducible)

    s = sub.add_parser("convert", parents=[common], help="change alphabet")
    s.add_argument("--from", dest="source", required=True)
    s.add_argument("--to", dest="target", required=True)
    s.add_argument("word")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("derive", parents=[common], help="detour expansion of a generator")
    s.add_argument("--kind", required=True, help="token prefix: s, t, T, m, M, g or v")
    s.add_argument("--index", type=int, required=True)
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("search-equiv", parents=[common], help="bounded search for a rewriting proof")
    s.add_argument("u")
    s.add_argument("w")
    s.add_argument("--presentation", choices=CATALOG_NAMES, default="vstm")
    s.add_argument("--max-len", type=int)
    s.add_argument("--max-nodes", type=int)
    s.set_defaults(func=cmd_search_equiv)

    s = sub.add_parser("trace", help="rewriting traces")
    tsub = s.add_subparsers(dest="trace_command", required=True)
    t = tsub.add_parser("verify", parents=[common], help="replay a trace file ('-' for stdin)")
    t.add_argument("file")
    t.set_defaults(func=cmd_trace_verify)

    s = sub.add_parser("catalog", parents=[common], help="dump a presentation's relations")
    s.add_argument("name", choices=CATALOG_NAMES)
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload, text = args.func(args)
    except (UsageError, ValueError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "text":
        print(text)
    else:
        print(json.dumps(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
