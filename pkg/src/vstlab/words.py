"""Words over the standard, reduced and connecting-string alphabets.

Tokens are ``<prefix><index>``:

    s  twin generator s_i          t  singular tau_i      T  tau_i^-1
    v  virtual nu_i                m  mu_i = s_i nu_i    M  mu_i^-1
    g  gamma_i = tau_i nu_i

The empty word is spelled ``e``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "WordError",
    "Generator",
    "Word",
    "Permutation",
    "ALPHABETS",
    "parse_word",
    "format_word",
    "word",
    "free_reduce",
    "pi_image",
    "is_pure",
    "concat",
]


class WordError(ValueError):
    pass


PREFIX = {"S": "s", "Tau": "t", "TauInv": "T", "Nu": "v", "Mu": "m", "MuInv": "M", "Gamma": "g"}
KIND_OF = {p: k for k, p in PREFIX.items()}

# kinds allowed per alphabet, and kinds restricted to index 1
ALPHABETS: dict[str, tuple[frozenset, frozenset]] = {
    "standard": (frozenset({"S", "Tau", "TauInv", "Nu"}), frozenset()),
    "reduced": (frozenset({"S", "Tau", "TauInv", "Nu"}), frozenset({"S", "Tau", "TauInv"})),
    "connecting": (frozenset({"Mu", "MuInv", "Gamma", "Nu"}), frozenset()),
    "reduced-connecting": (
        frozenset({"Mu", "MuInv", "Gamma", "Nu"}),
        frozenset({"Mu", "MuInv", "Gamma"}),
    ),
}
MODES = ("monoid", "group")

# letter pairs that cancel when adjacent
_INVERSE = {"S": "S", "Nu": "Nu", "Tau": "TauInv", "TauInv": "Tau", "Mu": "MuInv", "MuInv": "Mu"}


class Generator(NamedTuple):
    kind: str
    index: int

    def __str__(self):
        return f"{PREFIX[self.kind]}{self.index}"

    @classmethod
    def parse(cls, token: str) -> "Generator":
        m = re.fullmatch(r"([stTvmMg])(\d+)", token)
        if m is None:
            raise WordError(f"unknown token {token!r}")
        return cls(KIND_OF[m.group(1)], int(m.group(2)))


def _check_letters(letters, n, mode, alphabet):
    if alphabet not in ALPHABETS:
        raise WordError(f"unknown alphabet {alphabet!r}")
    if mode not in MODES:
        raise WordError(f"unknown mode {mode!r}")
    if n < 2:
        raise WordError("strand count n must be at least 2")
    kinds, index_one = ALPHABETS[alphabet]
    for g in letters:
        if g.kind not in kinds:
            raise WordError(f"generator {g} is not in the {alphabet} alphabet")
        if not 1 <= g.index <= n - 1:
            raise WordError(f"index of {g} out of range 1..{n - 1}")
        if g.kind in index_one and g.index != 1:
            raise WordError(f"the {alphabet} alphabet admits {PREFIX[g.kind]}1 only, got {g}")
        if g.kind == "TauInv" and mode == "monoid":
            raise WordError(f"{g} (tau inverse) needs group mode")


@dataclass(frozen=True)
class Word:
    n: int
    letters: tuple = ()
    mode: str = "monoid"
    alphabet: str = "standard"

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(Generator(*g) for g in self.letters))
        _check_letters(self.letters, self.n, self.mode, self.alphabet)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return format_word(self)

    def __add__(self, other: "Word") -> "Word":
        return concat(self, other)

    def replace(self, letters: Iterable, **changes) -> "Word":
        kw = dict(n=self.n, mode=self.mode, alphabet=self.alphabet)
        kw.update(changes)
        return Word(letters=tuple(letters), **kw)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "alphabet": self.alphabet,
            "letters": [str(g) for g in self.letters],
        }

    @classmethod
    def from_json(cls, obj) -> "Word":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            letters = [Generator.parse(tok) for tok in obj["letters"]]
            return cls(obj["n"], tuple(letters), obj.get("mode", "monoid"), obj.get("alphabet", "standard"))
        except (KeyError, TypeError) as exc:
            raise WordError(f"malformed word JSON: {exc}") from None


def parse_word(text: str, n: int, alphabet: str = "standard", mode: str = "monoid") -> Word:
    tokens = text.split()
    if tokens == ["e"] or not tokens:
        return Word(n, (), mode, alphabet)
    return Word(n, tuple(Generator.parse(tok) for tok in tokens), mode, alphabet)


def word(text: str, n: int, alphabet: str = "standard", mode: str | None = None) -> Word:
    """Shorthand parser: picks group mode when the text contains a tau inverse."""
    if mode is None:
        mode = "group" if "T" in text else "monoid"
    return parse_word(text, n, alphabet, mode)


def format_word(w: Word | Sequence[Generator]) -> str:
    letters = w.letters if isinstance(w, Word) else w
    return " ".join(str(g) for g in letters) if letters else "e"


def concat(u: Word, v: Word) -> Word:
    if u.n != v.n or u.alphabet != v.alphabet:
        raise WordError("cannot concatenate words with different n or alphabet")
    mode = "group" if "group" in (u.mode, v.mode) else "monoid"
    return Word(u.n, u.letters + v.letters, mode, u.alphabet)


def free_reduce_letters(letters: Sequence[Generator]) -> tuple:
    stack: list[Generator] = []
    for g in letters:
        if stack:
            top = stack[-1]
            if top.index == g.index and _INVERSE.get(top.kind) == g.kind:
                stack.pop()
                continue
        stack.append(g)
    return tuple(stack)


def free_reduce(w: Word) -> Word:
    """Cancel adjacent s s, v v, t T, T t, m M, M m pairs to a fixed point."""
    return w.replace(free_reduce_letters(w.letters))


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..n}; ``images[k-1]`` is the image of k."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise WordError(f"not a permutation: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        imgs = list(range(1, n + 1))
        imgs[a - 1], imgs[b - 1] = b, a
        return cls(tuple(imgs))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self first, then other."""
        return Permutation(tuple(other.images[x - 1] for x in self.images))

    def is_identity(self) -> bool:
        return all(x == k for k, x in enumerate(self.images, 1))

    def cycles(self) -> list[tuple]:
        seen, out = set(), []
        for k in range(1, self.n + 1):
            if k in seen or self(k) == k:
                continue
            cyc, x = [], k
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) if cyc else "()"


def _letter_perm_swaps(g: Generator) -> bool:
    # mu = s nu and gamma = tau nu are pure
    return g.kind in ("S", "Tau", "TauInv", "Nu")


def pi_image(w: Word) -> Permutation:
    """Compose the transpositions (i, i+1) left to right along the word."""
    imgs = list(range(1, w.n + 1))
    # imgs[k] tracks where point k+1 has been sent so far
    pos = list(range(w.n))  # pos[p] = point currently sitting at position p
    for g in w.letters:
        if _letter_perm_swaps(g):
            i = g.index - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
    for p, k in enumerate(pos):
        imgs[k] = p + 1
    return Permutation(tuple(imgs))


def is_pure(w: Word) -> bool:
    return pi_image(w).is_identity()
