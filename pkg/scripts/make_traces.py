"""Regenerate the rewriting traces shipped in src/vstlab/traces.

Short proofs come straight from search_equiv.  Longer ones are chained
through waypoints: each consecutive pair is searched after stripping the
common prefix and suffix, and the local trace is shifted back into place.
Every trace is replayed before it is written.

    python scripts/make_traces.py
"""

import json
import sys
from pathlib import Path

from vstlab.presentations import (
    RewriteTrace,
    Step,
    derive_generator,
    presentation_catalog,
    search_equiv,
    to_reduced,
    verify_trace,
)
from vstlab.words import Generator, Word, format_word, word

OUT = Path(__file__).resolve().parents[1] / "src" / "vstlab" / "traces"


def reduced(text, n):
    return to_reduced(word(text, n))


def shift(trace, k):
    return [Step(s.label, s.dir, s.pos + k) for s in trace.steps]


def local_proof(a, b, pres, cache, nodes=1_500_000):
    i = 0
    while i < min(len(a), len(b)) and a[i] == b[i]:
        i += 1
    j = 0
    while j < min(len(a), len(b)) - i and a[-1 - j] == b[-1 - j]:
        j += 1
    x, y = a[i : len(a) - j], b[i : len(b) - j]
    for name, tr in cache.items():
        if tr.n == pres.n and tr.presentation == pres.name and (tr.start.letters, tr.end.letters) == (x, y):
            return shift(tr, i)
    u, w = Word(pres.n, x, "monoid", pres.alphabet), Word(pres.n, y, "monoid", pres.alphabet)
    res = search_equiv(u, w, pres, max_len=max(len(x), len(y)) + 6, max_nodes=nodes)
    if not res.proved:
        raise SystemExit(f"segment {format_word(x)} -> {format_word(y)}: {res.reason}")
    return shift(res.trace, i)


def chain(name, n, waypoints, cache, pres_name="reduced-vstm"):
    pres = presentation_catalog(pres_name, n)
    ws = [w if isinstance(w, Word) else reduced(w, n) for w in waypoints]
    steps = []
    for a, b in zip(ws, ws[1:]):
        steps += local_proof(a.letters, b.letters, pres, cache)
    tr = RewriteTrace(pres.name, n, ws[0], ws[-1], tuple(steps))
    assert verify_trace(tr, pres), name
    return tr


def direct(name, pres_name, n, u, w, cache, extra=4):
    pres = presentation_catalog(pres_name, n)
    if not isinstance(u, Word):
        u, w = pres.word(u), pres.word(w)
    res = search_equiv(u, w, pres, max_len=max(len(u), len(w)) + extra, max_nodes=1_500_000)
    assert res.proved and verify_trace(res.trace, pres), name
    return res.trace


def detour_pair(kind, i, n):
    nu = lambda k: Generator("Nu", k)
    a = (nu(i),) + derive_generator(kind, i + 1, n).letters + (nu(i),)
    b = (nu(i + 1),) + derive_generator(kind, i, n).letters + (nu(i + 1),)
    return format_word(a), format_word(b)


def conj(text, d="v1 v2 v3"):
    inv = " ".join(reversed(d.split()))
    return f"{d} {text} {inv}"


def build():
    t = {}
    t["tau-s-s-commute"] = direct("tau-s-s-commute", "vstm", 3, "t1 s2 s1", "s2 s1 t2", t)
    t["nu-shift-2"] = direct("nu-shift-2", "reduced-vstm", 4, "v3 v2 v1 v2 v3", "v1 v2 v3 v2 v1", t)
    t["nu-shift-3"] = direct(
        "nu-shift-3", "reduced-vstm", 5, "v4 v3 v2 v1 v2 v3 v4", "v1 v2 v3 v4 v3 v2 v1", t
    )
    for kind, tag in (("Tau", "t"), ("S", "s")):
        for i, n in ((1, 3), (2, 4), (3, 5)):
            u, w = detour_pair(kind, i, n)
            t[f"detour-{tag}-{i}"] = direct(f"detour-{tag}-{i}", "reduced-vstm", n, u, w, t)

    t["reduced-comm-st-13"] = direct(
        "reduced-comm-st-13", "reduced-vstm", 4, reduced("s1 t3", 4), reduced("t3 s1", 4), t, extra=8
    )

    # s1 s2 t1 = t2 s1 s2 from t1 s2 s1 = s2 s1 t2 by conjugating with s1 s2
    for n in (3, 4):
        t[f"reduced-eq22-12-n{n}"] = chain(
            f"reduced-eq22-12-n{n}",
            n,
            [
                "s1 s2 t1",
                "s1 s2 t1 s2 s2",
                "s1 s2 t1 s2 s1 s1 s2",
                "s1 s2 s2 s1 t2 s1 s2",
                "s1 s1 t2 s1 s2",
                "t2 s1 s2",
            ],
            t,
        )

    # t3 s3 = s3 t3: cancel the nu strings in the middle, use t1 s1 = s1 t1
    P, Q = "v2 v1 v3 v2", "v2 v3 v1 v2"
    t["reduced-eq21-3"] = chain(
        "reduced-eq21-3",
        4,
        ["t3 s3", f"{P} t1 s1 {Q}", f"{P} s1 t1 {Q}", "s3 t3"],
        t,
    )

    # index 2,3 versions of eq22 are the index 1,2 versions conjugated by v1 v2 v3
    for label, (lhs, rhs), base in (
        ("reduced-eq22-23", ("s2 s3 t2", "t3 s2 s3"), ("s1 s2 t1", "t2 s1 s2")),
        ("reduced-eq22-32", ("s3 s2 t3", "t2 s3 s2"), ("s2 s1 t2", "t1 s2 s1")),
    ):
        a1, a2, a3 = lhs.split()
        b1, b2, b3 = base[0].split()
        c1, c2, c3 = base[1].split()
        r1, r2, r3 = rhs.split()
        t[label] = chain(
            label,
            4,
            [
                lhs,
                f"{conj(b1)} {a2} {a3}",
                f"{conj(b1)} {conj(b2)} {a3}",
                f"{conj(b1)} {conj(b2)} {conj(b3)}",
                conj(base[0]),
                conj(base[1]),
                f"{conj(c1)} {conj(c2)} {conj(c3)}",
                f"{r1} {conj(c2)} {conj(c3)}",
                f"{r1} {r2} {conj(c3)}",
                rhs,
            ],
            t,
        )
    return t


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    traces = build()
    for name, tr in traces.items():
        (OUT / f"{name}.json").write_text(json.dumps(tr.to_json(), indent=1) + "\n")
        print(f"{name}: {len(tr)} steps, {tr.start} => {tr.end}", file=sys.stderr)


if __name__ == "__main__":
    main()
