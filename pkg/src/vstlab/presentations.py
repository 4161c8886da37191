"""Relation catalogs, rewriting, certified traces and bounded equivalence search.

Catalog names:

    twin          T_n               s_i^2 = 1, far commutation
    stm / st      STM_n / ST_n      singular twin monoid and its group
    vstm / vst    VSTM_n / VST_n    the virtual singular twin monoid and group
    reduced-vstm  generators s1, t1, v_i
    mn            M_n on connecting strings mu_i, mu_i^-1, gamma_i, v_i
    reduced-mn    generators m1, M1, g1, v_i

Every relation family is instantiated over all valid indices; instances that
coincide as unordered pairs of words are stored once.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .words import (
    Generator,
    Word,
    WordError,
    format_word,
    parse_word,
    pi_image,
)

__all__ = [
    "PresentationError",
    "RewriteError",
    "Relation",
    "Presentation",
    "Step",
    "RewriteTrace",
    "SearchResult",
    "CATALOG_NAMES",
    "presentation_catalog",
    "derive_generator",
    "expand_reduced",
    "to_reduced",
    "map_F",
    "map_G",
    "rewrite_step",
    "check_trace",
    "verify_trace",
    "search_equiv",
    "shipped_traces",
]

DEFAULT_NODE_CAP = 1_000_000


class PresentationError(ValueError):
    pass


class RewriteError(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word
    label: str
    family: str

    def __post_init__(self):
        if (self.lhs.n, self.lhs.alphabet) != (self.rhs.n, self.rhs.alphabet):
            raise PresentationError(f"{self.label}: sides disagree on n or alphabet")
        if pi_image(self.lhs) != pi_image(self.rhs):
            raise PresentationError(f"{self.label}: sides have different permutations")

    def side(self, direction: str) -> tuple[Word, Word]:
        if direction == "lr":
            return self.lhs, self.rhs
        if direction == "rl":
            return self.rhs, self.lhs
        raise RewriteError(f"direction must be 'lr' or 'rl', got {direction!r}")

    def __str__(self):
        return f"{self.label}: {self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Presentation:
    name: str
    n: int
    alphabet: str
    mode: str
    relations: tuple

    def __post_init__(self):
        labels = [r.label for r in self.relations]
        if len(set(labels)) != len(labels):
            raise PresentationError(f"{self.name}: duplicate relation labels")
        for r in self.relations:
            if r.lhs.n != self.n or r.lhs.alphabet != self.alphabet:
                raise PresentationError(f"{self.name}: relation {r.label} has wrong n/alphabet")
            if pi_image(r.lhs) != pi_image(r.rhs):
                raise PresentationError(f"{self.name}: relation {r.label} is not pi-compatible")

    def __len__(self):
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    def get(self, label: str) -> Relation:
        for r in self.relations:
            if r.label == label:
                return r
        raise KeyError(label)

    def lookup(self, label: str) -> list[Relation]:
        """Relations cited by ``label``: an instance label or a family name."""
        exact = [r for r in self.relations if r.label == label]
        if exact:
            return exact
        return [r for r in self.relations if r.family == label]

    def families(self) -> list[str]:
        seen = []
        for r in self.relations:
            if r.family not in seen:
                seen.append(r.family)
        return seen

    def word(self, text: str) -> Word:
        return parse_word(text, self.n, self.alphabet, self.mode)

    def to_json(self) -> dict:
        return {
            "presentation": self.name,
            "n": self.n,
            "alphabet": self.alphabet,
            "mode": self.mode,
            "relations": [
                {"label": r.label, "family": r.family, "lhs": str(r.lhs), "rhs": str(r.rhs)}
                for r in self.relations
            ],
        }


# ---------------------------------------------------------------------------
# catalogs


class _Builder:
    def __init__(self, name, n, alphabet, mode):
        self.name, self.n, self.alphabet, self.mode = name, n, alphabet, mode
        self.rels: list[Relation] = []
        self._seen: set = set()

    def add(self, family: str, idx: Sequence[int] | None, lhs: str, rhs: str):
        u = parse_word(lhs, self.n, self.alphabet, self.mode)
        w = parse_word(rhs, self.n, self.alphabet, self.mode)
        key = frozenset((u.letters, w.letters))
        if key in self._seen or u.letters == w.letters:
            return
        self._seen.add(key)
        label = family if not idx else f"{family}[{','.join(map(str, idx))}]"
        self.rels.append(Relation(u, w, label, family))

    def build(self) -> Presentation:
        return Presentation(self.name, self.n, self.alphabet, self.mode, tuple(self.rels))


def _adjacent(n):
    return [(i, j) for i in range(1, n) for j in range(1, n) if abs(i - j) == 1]


def _far(n):
    return [(i, j) for i in range(1, n) for j in range(1, n) if abs(i - j) >= 2]


def _involutions_and_far(b: _Builder, n):
    for i in range(1, n):
        b.add("eq15", (i,), f"s{i} s{i}", "e")
    for i, j in _far(n):
        b.add("eq16", (i, j), f"s{i} s{j}", f"s{j} s{i}")


def _tau_inverses(b: _Builder, n):
    for i in range(1, n):
        b.add("inv-tau", (i,), f"t{i} T{i}", "e")
        b.add("inv-tau-r", (i,), f"T{i} t{i}", "e")


def _twin(n):
    b = _Builder("twin", n, "standard", "group")
    _involutions_and_far(b, n)
    return b.build()


def _stm(n, group=False):
    b = _Builder("st" if group else "stm", n, "standard", "group" if group else "monoid")
    _involutions_and_far(b, n)
    for i, j in _far(n):
        b.add("eq4", (i, j), f"t{i} t{j}", f"t{j} t{i}")
        b.add("eq17", (i, j), f"t{i} s{j}", f"s{j} t{i}")
    for i in range(1, n):
        b.add("eq18", (i,), f"t{i} s{i}", f"s{i} t{i}")
    for i, j in _adjacent(n):
        b.add("eq19", (i, j), f"s{i} s{j} t{i}", f"t{j} s{i} s{j}")
    if group:
        _tau_inverses(b, n)
    return b.build()


def _vstm(n, group=False):
    b = _Builder("vst" if group else "vstm", n, "standard", "group" if group else "monoid")
    for i in range(1, n):
        b.add("eq20-s", (i,), f"s{i} s{i}", "e")
    for i in range(1, n):
        b.add("eq20-nu", (i,), f"v{i} v{i}", "e")
    for i in range(1, n):
        b.add("eq21", (i,), f"t{i} s{i}", f"s{i} t{i}")
    for i, j in _adjacent(n):
        b.add("eq22", (i, j), f"s{i} s{j} t{i}", f"t{j} s{i} s{j}")
    for fam, x in (("eq23", "v"), ("eq24", "s"), ("eq25", "t")):
        for i, j in _adjacent(n):
            b.add(fam, (i, j), f"v{i} {x}{j} v{i}", f"v{j} {x}{i} v{j}")
    for i, j in _far(n):
        for g, h in product("stv", repeat=2):
            b.add(f"comm-{g}{h}", (i, j), f"{g}{i} {h}{j}", f"{h}{j} {g}{i}")
    if group:
        _tau_inverses(b, n)
    return b.build()


def _reduced_vstm(n):
    b = _Builder("reduced-vstm", n, "reduced", "monoid")
    for i, j in _adjacent(n):
        b.add("eq36", (i, j), f"v{i} v{j} v{i}", f"v{j} v{i} v{j}")
    for i, j in _far(n):
        b.add("eq37", (i, j), f"v{i} v{j}", f"v{j} v{i}")
    for i in range(1, n):
        b.add("eq38-nu", (i,), f"v{i} v{i}", "e")
    b.add("eq38-s", None, "s1 s1", "e")
    b.add("eq39", None, "s1 t1", "t1 s1")
    for i in range(3, n):
        b.add("eq40-t", (i,), f"t1 v{i}", f"v{i} t1")
        b.add("eq40-s", (i,), f"s1 v{i}", f"v{i} s1")
    if n >= 3:
        s2 = "v1 v2 s1 v2 v1"
        t2 = "v1 v2 t1 v2 v1"
        b.add("eq41", None, f"t1 {s2} s1", f"{s2} s1 {t2}")
    if n >= 4:
        s3 = "v2 v3 v1 v2 s1 v2 v1 v3 v2"
        t3 = "v2 v3 v1 v2 t1 v2 v1 v3 v2"
        b.add("eq42", None, f"s1 {s3}", f"{s3} s1")
        b.add("eq43", None, f"t1 {s3}", f"{s3} t1")
        b.add("eq44", None, f"t1 {t3}", f"{t3} t1")
    return b.build()


def _mn(n):
    b = _Builder("mn", n, "connecting", "monoid")
    for i in range(1, n):
        b.add("mnid-nu", (i,), f"v{i} v{i}", "e")
    for i in range(1, n):
        b.add("mnid-mu", (i,), f"m{i} M{i}", "e")
        b.add("mnid-mu-r", (i,), f"M{i} m{i}", "e")
    for fam, x in (("mnv3", "v"), ("mnvr3", "m"), ("mnvs3", "g")):
        for i, j in _adjacent(n):
            b.add(fam, (i, j), f"v{i} {x}{j} v{i}", f"v{j} {x}{i} v{j}")
    for i, j in _adjacent(n):
        b.add("mnrs31", (i, j), f"m{j} v{j} m{i} v{j} g{i}", f"g{i} v{j} m{i} v{j} m{j}")
    for i in range(1, n):
        b.add("mnr1", (i,), f"m{i} v{i} g{i}", f"g{i} v{i} m{i}")
    for i, j in _far(n):
        for a, c in product("mgv", repeat=2):
            b.add(f"mnfc-{a}{c}", (i, j), f"{a}{i} {c}{j}", f"{c}{j} {a}{i}")
    return b.build()


def _reduced_mn(n):
    b = _Builder("reduced-mn", n, "reduced-connecting", "monoid")
    for i in range(1, n):
        b.add("rmn-id-nu", (i,), f"v{i} v{i}", "e")
    b.add("rmn-id-mu", None, "M1 m1", "e")
    b.add("rmn-id-mu-r", None, "m1 M1", "e")
    for i, j in _adjacent(n):
        b.add("rmn-v3", (i, j), f"v{i} v{j} v{i}", f"v{j} v{i} v{j}")
    if n >= 3:
        m2 = "v1 v2 m1 v2 v1"
        b.add("rmn-rs31", None, f"{m2} v2 m1 v2 g1", f"g1 v2 m1 v2 {m2}")
    b.add("rmn-r1", None, "m1 v1 g1", "g1 v1 m1")
    for i, j in _far(n):
        b.add("rmn-comm-v", (i, j), f"v{i} v{j}", f"v{j} v{i}")
    for i in range(3, n):
        b.add("rmn-comm-m", (i,), f"m1 v{i}", f"v{i} m1")
        b.add("rmn-comm-g", (i,), f"g1 v{i}", f"v{i} g1")
    if n >= 4:
        g3 = "v2 v1 v3 v2 g1 v2 v3 v1 v2"
        m3 = "v2 v1 v3 v2 m1 v2 v3 v1 v2"
        b.add("rmn-comm-gg", None, f"g1 {g3}", f"{g3} g1")
        b.add("rmn-comm-gm", None, f"g1 {m3}", f"{m3} g1")
        b.add("rmn-comm-mm", None, f"m1 {m3}", f"{m3} m1")
    return b.build()


_CATALOG = {
    "twin": _twin,
    "stm": lambda n: _stm(n, False),
    "st": lambda n: _stm(n, True),
    "vstm": lambda n: _vstm(n, False),
    "vst": lambda n: _vstm(n, True),
    "reduced-vstm": _reduced_vstm,
    "mn": _mn,
    "reduced-mn": _reduced_mn,
}
CATALOG_NAMES = tuple(_CATALOG)

_cache: dict = {}


def presentation_catalog(name: str, n: int) -> Presentation:
    if name not in _CATALOG:
        raise PresentationError(f"unknown presentation {name!r}; choose from {', '.join(_CATALOG)}")
    if not isinstance(n, int) or n < 2:
        raise PresentationError("presentations need n >= 2")
    key = (name, n)
    if key not in _cache:
        _cache[key] = _CATALOG[name](n)
    return _cache[key]


# ---------------------------------------------------------------------------
# alphabet conversions


def _detour_letters(kind: str, i: int) -> list[Generator]:
    """Generator of index i written with the index-1 generator and nu's."""
    if i == 1 or kind == "Nu":
        return [Generator(kind, i)]
    k = i - 1
    nus = lambda idx: [Generator("Nu", a) for a in idx]
    return (
        nus(range(k, 0, -1))
        + nus(range(k + 1, 1, -1))
        + [Generator(kind, 1)]
        + nus(range(2, k + 2))
        + nus(range(1, k + 1))
    )


def derive_generator(kind: str, i: int, n: int) -> Word:
    """Detour expansion of s_i / tau_i (or mu_i / gamma_i) through index 1."""
    if not 1 <= i <= n - 1:
        raise WordError(f"index {i} out of range 1..{n - 1}")
    alphabet = "connecting" if kind in ("Mu", "MuInv", "Gamma") else "standard"
    mode = "group" if kind == "TauInv" else "monoid"
    return Word(n, tuple(_detour_letters(kind, i)), mode, alphabet)


def expand_reduced(w: Word) -> Word:
    """Reduced-alphabet words denote the same letters in the full alphabet."""
    target = {"reduced": "standard", "reduced-connecting": "connecting"}.get(w.alphabet)
    if target is None:
        raise WordError(f"expand_reduced expects a reduced word, got alphabet {w.alphabet}")
    return w.replace(w.letters, alphabet=target)


def to_reduced(w: Word) -> Word:
    """Substitute every non-virtual generator of index >= 2 by its detour form."""
    target = {"standard": "reduced", "connecting": "reduced-connecting"}.get(w.alphabet)
    if target is None:
        raise WordError(f"to_reduced expects a standard or connecting word, got {w.alphabet}")
    out: list[Generator] = []
    for g in w.letters:
        out.extend(_detour_letters(g.kind, g.index))
    return w.replace(out, alphabet=target)


_F = {
    "Nu": lambda i: [("Nu", i)],
    "Mu": lambda i: [("S", i), ("Nu", i)],
    "MuInv": lambda i: [("Nu", i), ("S", i)],
    "Gamma": lambda i: [("Tau", i), ("Nu", i)],
}
_G = {
    "Nu": lambda i: [("Nu", i)],
    "S": lambda i: [("Mu", i), ("Nu", i)],
    "Tau": lambda i: [("Gamma", i), ("Nu", i)],
}


def map_F(w: Word) -> Word:
    """M_n -> VSTM_n: mu -> s v, mu^-1 -> v s, gamma -> t v, v -> v."""
    if w.alphabet == "reduced-connecting":
        w = expand_reduced(w)
    if w.alphabet != "connecting":
        raise WordError(f"map_F expects a connecting-alphabet word, got {w.alphabet}")
    out = [Generator(k, j) for g in w.letters for k, j in _F[g.kind](g.index)]
    return Word(w.n, tuple(out), "monoid", "standard")


def map_G(w: Word) -> Word:
    """VSTM_n -> M_n: s -> mu v, t -> gamma v, v -> v (monoid words only)."""
    if w.alphabet == "reduced":
        w = expand_reduced(w)
    if w.alphabet != "standard":
        raise WordError(f"map_G expects a standard-alphabet word, got {w.alphabet}")
    out = []
    for g in w.letters:
        if g.kind not in _G:
            raise WordError(
                f"map_G is defined on monoid generators only; {g} has no image without gamma^-1"
            )
        out.extend(Generator(k, j) for k, j in _G[g.kind](g.index))
    return Word(w.n, tuple(out), "monoid", "connecting")


# ---------------------------------------------------------------------------
# rewriting and traces


def _apply(letters: tuple, src: tuple, tgt: tuple, pos: int) -> tuple | None:
    if pos < 0 or pos > len(letters) or letters[pos : pos + len(src)] != src:
        return None
    return letters[:pos] + tgt + letters[pos + len(src) :]


def rewrite_step(w: Word, rel: Relation, direction: str, position: int) -> Word:
    """Replace the relation's source side found at ``position`` by the other side."""
    src, tgt = rel.side(direction)
    out = _apply(w.letters, src.letters, tgt.letters, position)
    if out is None:
        raise RewriteError(
            f"{rel.label} ({direction}): {format_word(src)} does not occur at position {position} of {w}"
        )
    mode = "group" if "group" in (w.mode, tgt.mode) else w.mode
    return w.replace(out, mode=mode)


@dataclass(frozen=True)
class Step:
    label: str
    dir: str
    pos: int

    def to_json(self):
        return {"label": self.label, "dir": self.dir, "pos": self.pos}


@dataclass(frozen=True)
class RewriteTrace:
    presentation: str
    n: int
    start: Word
    end: Word
    steps: tuple = ()

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation,
            "n": self.n,
            "start": str(self.start),
            "end": str(self.end),
            "steps": [s.to_json() for s in self.steps],
        }

    @classmethod
    def from_json(cls, obj) -> "RewriteTrace":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            pres = presentation_catalog(obj["presentation"], obj["n"])
            steps = tuple(Step(s["label"], s["dir"], int(s["pos"])) for s in obj["steps"])
            return cls(pres.name, pres.n, pres.word(obj["start"]), pres.word(obj["end"]), steps)
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed trace JSON: {exc}") from None

    def __len__(self):
        return len(self.steps)


@dataclass
class TraceCheck:
    ok: bool
    failed_step: int | None = None
    message: str = ""
    words: list = field(default_factory=list)


def _resolve_step(pres: Presentation, letters: tuple, step: Step) -> tuple:
    rels = pres.lookup(step.label)
    if not rels:
        raise PresentationError(f"unknown relation label {step.label!r} in {pres.name}")
    results = set()
    for rel in rels:
        src, tgt = rel.side(step.dir)
        out = _apply(letters, src.letters, tgt.letters, step.pos)
        if out is not None:
            results.add(out)
    if not results:
        raise RewriteError(f"{step.label} ({step.dir}) does not match at position {step.pos}")
    if len(results) > 1:
        raise RewriteError(f"family label {step.label!r} is ambiguous at position {step.pos}")
    return results.pop()


def check_trace(trace: RewriteTrace, pres: Presentation | None = None) -> TraceCheck:
    """Replay a trace; unknown labels raise, mismatches are reported with the step index."""
    pres = pres or presentation_catalog(trace.presentation, trace.n)
    letters = trace.start.letters
    words = [format_word(letters)]
    for k, step in enumerate(trace.steps):
        try:
            letters = _resolve_step(pres, letters, step)
        except RewriteError as exc:
            return TraceCheck(False, k, f"step {k}: {exc} (word: {format_word(letters)})", words)
        words.append(format_word(letters))
    if letters != trace.end.letters:
        return TraceCheck(
            False,
            len(trace.steps),
            f"replay ends at {format_word(letters)}, expected {trace.end}",
            words,
        )
    return TraceCheck(True, None, "", words)


def verify_trace(trace: RewriteTrace, pres: Presentation | None = None) -> bool:
    return check_trace(trace, pres).ok


# ---------------------------------------------------------------------------
# bounded bidirectional search


@dataclass
class SearchResult:
    status: str  # "proved" | "unknown"
    trace: RewriteTrace | None = None
    nodes: int = 0
    reason: str = ""

    @property
    def proved(self) -> bool:
        return self.status == "proved"


def _compile_rules(pres: Presentation):
    codes: dict[Generator, int] = {}

    def enc(letters):
        return tuple(codes.setdefault(g, len(codes)) for g in letters)

    inserts, by_first = [], {}
    for rel in pres.relations:
        for d in ("lr", "rl"):
            src, tgt = rel.side(d)
            rule = (enc(src.letters), enc(tgt.letters), rel.label, d)
            if not rule[0]:
                inserts.append(rule)
            else:
                by_first.setdefault(rule[0][0], []).append(rule)
    return codes, enc, inserts, by_first


def _neighbours(x: tuple, inserts, by_first, max_len: int):
    lx = len(x)
    for pos in range(lx + 1):
        for src, tgt, label, d in inserts:
            if lx + len(tgt) <= max_len:
                yield x[:pos] + tgt + x[pos:], label, d, pos
        if pos < lx:
            for src, tgt, label, d in by_first.get(x[pos], ()):
                ls = len(src)
                if x[pos : pos + ls] == src and lx - ls + len(tgt) <= max_len:
                    yield x[:pos] + tgt + x[pos + ls :], label, d, pos


def default_node_cap() -> int:
    env = os.environ.get("VSTLAB_SEARCH_NODES")
    if env:
        try:
            return int(env)
        except ValueError:
            raise PresentationError(f"VSTLAB_SEARCH_NODES must be an integer, got {env!r}") from None
    return DEFAULT_NODE_CAP


def search_equiv(
    u: Word,
    w: Word,
    pres: Presentation,
    max_len: int | None = None,
    max_nodes: int | None = None,
) -> SearchResult:
    """Bidirectional BFS over single relation applications.

    Returns ``proved`` with a replayable trace, or ``unknown`` when the bounds
    are exhausted (which says nothing about inequality).
    """
    if u.n != w.n or u.n != pres.n:
        raise PresentationError("words and presentation disagree on n")
    if max_len is None:
        max_len = max(len(u), len(w)) + 6
    if max_nodes is None:
        max_nodes = default_node_cap()
    if pi_image(u) != pi_image(w):
        return SearchResult("unknown", reason="permutation images differ, so the words are distinct")
    # words may arrive in a compatible alphabet; re-validate against the presentation
    u = pres.word(format_word(u))
    w = pres.word(format_word(w))
    codes, enc, inserts, by_first = _compile_rules(pres)
    for g in list(u.letters) + list(w.letters):
        codes.setdefault(g, len(codes))
    a, b = enc(u.letters), enc(w.letters)

    def build(meet, fwd, bwd) -> RewriteTrace:
        steps_f = []
        x = meet
        while fwd[x] is not None:
            prev, label, d, pos = fwd[x]
            steps_f.append(Step(label, d, pos))
            x = prev
        steps_f.reverse()
        x = meet
        while bwd[x] is not None:
            nxt, label, d, pos = bwd[x]
            steps_f.append(Step(label, "rl" if d == "lr" else "lr", pos))
            x = nxt
        return RewriteTrace(pres.name, pres.n, u, w, tuple(steps_f))

    if a == b:
        return SearchResult("proved", RewriteTrace(pres.name, pres.n, u, w, ()), 1)
    fwd = {a: None}
    bwd = {b: None}
    front_f, front_b = [a], [b]
    nodes = 2
    while front_f and front_b:
        expand_fwd = len(front_f) <= len(front_b)
        front = front_f if expand_fwd else front_b
        seen, other = (fwd, bwd) if expand_fwd else (bwd, fwd)
        nxt = []
        for x in front:
            for y, label, d, pos in _neighbours(x, inserts, by_first, max_len):
                if y in seen:
                    continue
                seen[y] = (x, label, d, pos)
                nodes += 1
                if y in other:
                    trace = build(y, fwd, bwd)
                    return SearchResult("proved", trace, nodes)
                nxt.append(y)
                if nodes >= max_nodes:
                    return SearchResult("unknown", nodes=nodes, reason="node cap reached")
        if expand_fwd:
            front_f = nxt
        else:
            front_b = nxt
    return SearchResult("unknown", nodes=nodes, reason="search space exhausted within max_len")


# ---------------------------------------------------------------------------
# traces shipped with the package


def shipped_traces() -> dict[str, RewriteTrace]:
    """Frozen rewriting proofs bundled under ``vstlab/traces``."""
    root = resources.files("vstlab") / "traces"
    out = {}
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            out[entry.name[:-5]] = RewriteTrace.from_json(entry.read_text())
    return out
