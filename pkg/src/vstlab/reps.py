"""Homogeneous 2-local representations of T_n, VSTM_n and VST_n."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .linalg import (
    LinalgError,
    RingMatrix,
    coerce_entry,
    identity,
    local_embed,
    mat_det,
    mat_inverse,
    matrix_from_json,
    matrix_to_json,
    one_of,
    specialize,
    zero_of,
)
from .presentations import Presentation, map_F
from .ring import GaussianRational, LaurentPoly, lp_eval, lp_is_unit, parse_gaussian, parse_laurent
from .words import Generator, Word, WordError

__all__ = [
    "RepresentationError",
    "Representation",
    "Eta1PrimeParams",
    "Eta2PrimeParams",
    "UpsilonParams",
    "ETA1_BLOCK",
    "rep_from_blocks",
    "rep_eta1",
    "rep_eta2",
    "rep_eta1_prime",
    "rep_eta2_prime",
    "rep_upsilon",
    "rep_eval",
    "check_relations",
    "conjugate_diag",
    "specialize_rep",
    "rep_from_json",
    "rep_to_json",
]


class RepresentationError(ValueError):
    pass


KIND_FOR_BLOCK = {"S": "S", "T": "Tau", "V": "Nu"}


def _block(entries, ring="laurent") -> RingMatrix:
    return RingMatrix(entries, ring)


ETA1_BLOCK = _block([["1 - t", "t"], ["2 - t", "t - 1"]])


def _poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, str):
        return parse_laurent(x)
    return LaurentPoly.const(x)


def _scalar(x) -> GaussianRational:
    if isinstance(x, str):
        return parse_gaussian(x)
    return GaussianRational.coerce(x)


def _require_unit(name: str, p: LaurentPoly) -> LaurentPoly:
    unit, inv = lp_is_unit(p)
    if not unit:
        raise RepresentationError(f"{name}(t) = {p} is not invertible in Z[t^+-1]")
    return inv


def _antidiag(p, ring="laurent") -> RingMatrix:
    """[[0, p], [1/p, 0]]."""
    zero = zero_of(ring)
    inv = p.inverse()
    return RingMatrix._raw(((zero, p), (inv, zero)), ring)


@dataclass(frozen=True)
class Representation:
    n: int
    ring: str
    images: Mapping[Generator, RingMatrix]
    name: str = "custom"
    params: Mapping = field(default_factory=dict)
    # generator -> 2x2 block, when the image is 2-local at its own index
    blocks: Mapping[Generator, RingMatrix] = field(default_factory=dict, compare=False)

    @property
    def kinds(self) -> frozenset:
        return frozenset(g.kind for g in self.images)

    @property
    def mode(self) -> str:
        return "group" if "TauInv" in self.kinds or "Tau" not in self.kinds else "monoid"

    def __getitem__(self, g) -> RingMatrix:
        if isinstance(g, str):
            g = Generator.parse(g)
        try:
            return self.images[g]
        except KeyError:
            raise RepresentationError(f"generator {g} is not in the domain of {self.name}") from None

    def matrices(self, kinds: Sequence[str] | None = None) -> list[RingMatrix]:
        return [m for g, m in self.images.items() if kinds is None or g.kind in kinds]

    def restrict(self, kinds: Sequence[str]) -> "Representation":
        keep = {g: m for g, m in self.images.items() if g.kind in kinds}
        return _make(self.n, self.ring, keep, f"{self.name}|{''.join(kinds)}", self.params)

    def __call__(self, w: Word) -> RingMatrix:
        return rep_eval(self, w)


def _local_block(m: RingMatrix, i: int):
    n = m.n
    one, zero = one_of(m.ring), zero_of(m.ring)
    for r in range(n):
        for c in range(n):
            if r in (i - 1, i) and c in (i - 1, i):
                continue
            if m.rows[r][c] != (one if r == c else zero):
                return None
    return RingMatrix._raw(
        ((m.rows[i - 1][i - 1], m.rows[i - 1][i]), (m.rows[i][i - 1], m.rows[i][i])), m.ring
    )


def _make(n, ring, images, name, params) -> Representation:
    for g, m in images.items():
        if m.n != n or m.ring != ring:
            raise RepresentationError(f"image of {g} is not an {n}x{n} {ring} matrix")
    blocks = {}
    for g, m in images.items():
        if g.index <= n - 1:
            b = _local_block(m, g.index)
            if b is not None:
                blocks[g] = b
    return Representation(n, ring, dict(images), name, dict(params), blocks)


def _tau_inverse_block(T: RingMatrix) -> RingMatrix | None:
    try:
        return mat_inverse(T)
    except LinalgError:
        return None


def rep_from_blocks(
    n: int,
    S: RingMatrix | None = None,
    T: RingMatrix | None = None,
    V: RingMatrix | None = None,
    *,
    name: str = "blocks",
    params: Mapping | None = None,
    require_tau_inverse: bool = False,
) -> Representation:
    """Homogeneous 2-local representation: s_i, t_i, v_i -> local S, T, V.

    A kind whose block is ``None`` is left out of the domain.  When T is
    invertible over the ring, t_i^-1 is added with the inverse block.
    """
    if n < 2:
        raise RepresentationError("representations need n >= 2")
    given = [b for b in (S, T, V) if b is not None]
    if not given:
        raise RepresentationError("at least one block is required")
    ring = given[0].ring
    for b in given:
        if b.n != 2:
            raise RepresentationError("blocks must be 2x2")
        if b.ring != ring:
            raise RepresentationError("blocks must share a ring")
    images = {}
    for kind, b in (("S", S), ("Tau", T), ("Nu", V)):
        if b is None:
            continue
        for i in range(1, n):
            images[Generator(kind, i)] = local_embed(i, n, b)
    if T is not None:
        Tinv = _tau_inverse_block(T)
        if Tinv is None and require_tau_inverse:
            raise RepresentationError(f"tau block has determinant {mat_det(T)}, which is not invertible")
        if Tinv is not None:
            for i in range(1, n):
                images[Generator("TauInv", i)] = local_embed(i, n, Tinv)
    return _make(n, ring, images, name, params or {})


def rep_eta1(n: int) -> Representation:
    if n < 2:
        raise RepresentationError("eta1 needs n >= 2")
    return rep_from_blocks(n, S=ETA1_BLOCK, name="eta1")


def rep_eta2(n: int, f="t") -> Representation:
    f = _poly(f)
    _require_unit("f", f)
    if n < 2:
        raise RepresentationError("eta2 needs n >= 2")
    return rep_from_blocks(n, S=_antidiag(f), name="eta2", params={"f": f})


@dataclass(frozen=True)
class Eta1PrimeParams:
    v: LaurentPoly

    def __post_init__(self):
        object.__setattr__(self, "v", _poly(self.v))
        _require_unit("v", self.v)


@dataclass(frozen=True)
class Eta2PrimeParams:
    f: LaurentPoly
    w: LaurentPoly
    y: LaurentPoly
    v: LaurentPoly

    def __post_init__(self):
        for k in ("f", "w", "y", "v"):
            object.__setattr__(self, k, _poly(getattr(self, k)))
        _require_unit("f", self.f)
        _require_unit("v", self.v)

    def tau_block(self) -> RingMatrix:
        return RingMatrix._raw(((self.w, self.f * self.f * self.y), (self.y, self.w)), "laurent")

    def tau_det(self) -> LaurentPoly:
        return self.w * self.w - self.f * self.f * self.y * self.y


def rep_eta1_prime(n: int, p: Eta1PrimeParams | LaurentPoly | str = "t") -> Representation:
    if not isinstance(p, Eta1PrimeParams):
        p = Eta1PrimeParams(p)
    if n < 2:
        raise RepresentationError("eta1' needs n >= 2")
    return rep_from_blocks(
        n,
        S=ETA1_BLOCK,
        T=identity(2),
        V=_antidiag(p.v),
        name="eta1_prime",
        params={"v": p.v},
    )


def rep_eta2_prime(n: int, p: Eta2PrimeParams, mode: str = "monoid") -> Representation:
    """eta2' on VSTM_n; ``mode="group"`` insists on an invertible tau block."""
    if mode not in ("monoid", "group"):
        raise RepresentationError(f"mode must be monoid or group, got {mode!r}")
    if n < 2:
        raise RepresentationError("eta2' needs n >= 2")
    if mode == "group" and not lp_is_unit(p.tau_det())[0]:
        raise RepresentationError(
            f"group mode needs w^2 - f^2 y^2 invertible in Z[t^+-1], got {p.tau_det()}"
        )
    return rep_from_blocks(
        n,
        S=_antidiag(p.f),
        T=p.tau_block(),
        V=_antidiag(p.v),
        name="eta2_prime",
        params={"f": p.f, "w": p.w, "y": p.y, "v": p.v},
        require_tau_inverse=(mode == "group"),
    )


_UPSILON_FIELDS = ("a", "b", "c", "x", "y", "v")


@dataclass(frozen=True)
class UpsilonParams:
    """Parameters of the six complex families; ``a`` stands for +-sqrt(1 - bc)."""

    family: int
    a: GaussianRational | None = None
    b: GaussianRational | None = None
    c: GaussianRational | None = None
    x: GaussianRational | None = None
    y: GaussianRational | None = None
    v: GaussianRational | None = None

    def __post_init__(self):
        for k in _UPSILON_FIELDS:
            val = getattr(self, k)
            if val is not None:
                object.__setattr__(self, k, _scalar(val))
        fam = self.family
        if fam not in range(1, 7):
            raise RepresentationError(f"Upsilon family must be 1..6, got {fam}")
        need = {1: "bxyv", 2: "abcv", 3: "abcv", 4: "v", 5: "v", 6: ""}[fam]
        missing = [k for k in need if getattr(self, k) is None]
        if missing:
            raise RepresentationError(f"Upsilon_{fam} needs parameters {', '.join(missing)}")
        if need and "v" in need and self.v.is_zero():
            raise RepresentationError(f"Upsilon_{fam}: constraint v != 0 violated")
        if fam == 1:
            if self.b.is_zero():
                raise RepresentationError("Upsilon_1: constraint b != 0 violated")
            if (self.x * self.x - self.y * self.y / (self.b * self.b)).is_zero():
                raise RepresentationError("Upsilon_1: constraint x^2 - y^2/b^2 != 0 violated")
        if fam in (2, 3):
            lhs = self.a * self.a + self.b * self.c
            if lhs != 1:
                raise RepresentationError(
                    f"Upsilon_{fam}: constraint a^2 + bc = 1 violated (a^2 + bc = {lhs})"
                )

    def blocks(self) -> tuple[RingMatrix, RingMatrix, RingMatrix]:
        g = lambda rows: RingMatrix(rows, "gaussian")
        I2 = identity(2, "gaussian")
        one, zero = GaussianRational(1), GaussianRational(0)
        fam = self.family
        if fam == 6:
            return I2, I2, I2
        V = g([[zero, self.v], [self.v.inverse(), zero]])
        if fam == 1:
            b, x, y = self.b, self.x, self.y
            S = g([[zero, b], [b.inverse(), zero]])
            T = g([[x, y], [y / (b * b), x]])
            return S, T, V
        if fam == 2:
            S = g([[-self.a, self.b], [self.c, self.a]])
        elif fam == 3:
            S = g([[self.a, self.b], [self.c, -self.a]])
        elif fam == 4:
            S = g([[-one, zero], [zero, -one]])
        else:
            S = I2
        return S, I2, V

    def to_json(self) -> dict:
        out = {"family": self.family}
        for k in _UPSILON_FIELDS:
            if getattr(self, k) is not None:
                out[k] = str(getattr(self, k))
        return out


def rep_upsilon(p: UpsilonParams, n: int) -> Representation:
    if n < 2:
        raise RepresentationError("Upsilon needs n >= 2")
    S, T, V = p.blocks()
    return rep_from_blocks(
        n, S=S, T=T, V=V, name=f"upsilon{p.family}", params=p.to_json(), require_tau_inverse=True
    )


def _right_mul_local(rows: list[list], i: int, B: RingMatrix):
    b00, b01 = B.rows[0]
    b10, b11 = B.rows[1]
    c0, c1 = i - 1, i
    for r in rows:
        x, y = r[c0], r[c1]
        if not x and not y:
            continue
        r[c0] = x * b00 + y * b10
        r[c1] = x * b01 + y * b11


def rep_eval(rep: Representation, w: Word) -> RingMatrix:
    """Ordered product of generator images; connecting-string words go through F."""
    if w.n != rep.n:
        raise RepresentationError(f"word has n={w.n} but representation has n={rep.n}")
    if w.alphabet in ("connecting", "reduced-connecting"):
        w = map_F(w)
    rows = [list(r) for r in identity(rep.n, rep.ring).rows]
    for g in w.letters:
        B = rep.blocks.get(g)
        if B is not None:
            _right_mul_local(rows, g.index, B)
            continue
        if g not in rep.images:
            raise RepresentationError(f"generator {g} is not in the domain of {rep.name}")
        M = RingMatrix._raw(tuple(tuple(r) for r in rows), rep.ring) @ rep.images[g]
        rows = [list(r) for r in M.rows]
    return RingMatrix._raw(tuple(tuple(r) for r in rows), rep.ring)


def check_relations(rep: Representation, pres: Presentation) -> list[str]:
    """Labels of relations whose two sides have different images, in catalog order."""
    if pres.n != rep.n:
        raise RepresentationError(f"presentation has n={pres.n} but representation has n={rep.n}")
    failed = []
    for rel in pres.relations:
        try:
            left, right = rep_eval(rep, rel.lhs), rep_eval(rep, rel.rhs)
        except RepresentationError:
            failed.append(rel.label)
            continue
        if mat_det(left) != mat_det(right) or left != right:
            failed.append(rel.label)
    return failed


def conjugate_diag(rep: Representation, d: Sequence) -> Representation:
    """Replace every image X by D^-1 X D with D = diag(d)."""
    if len(d) != rep.n:
        raise RepresentationError(f"need {rep.n} diagonal entries, got {len(d)}")
    d = [coerce_entry(x, rep.ring) for x in d]
    try:
        dinv = [x.inverse() for x in d]
    except Exception as exc:
        raise RepresentationError(f"diagonal entry not invertible: {exc}") from None
    images = {}
    for g, m in rep.images.items():
        images[g] = RingMatrix._raw(
            tuple(
                tuple(x * d[c] * dinv[r] if x else x for c, x in enumerate(row))
                for r, row in enumerate(m.rows)
            ),
            rep.ring,
        )
    return _make(rep.n, rep.ring, images, f"{rep.name}^D", rep.params)


def specialize_rep(rep: Representation, t0) -> Representation:
    """Evaluate every image at t = t0, giving a representation over Q(i)."""
    t0 = _scalar(t0)
    images = {g: specialize(m, t0) for g, m in rep.images.items()}
    params = dict(rep.params)
    params["t0"] = t0
    return _make(rep.n, "gaussian", images, rep.name, params)


# ---------------------------------------------------------------------------
# JSON


_NAMES = {
    "eta1": "eta1",
    "eta2": "eta2",
    "eta1_prime": "eta1_prime",
    "eta1p": "eta1_prime",
    "eta2_prime": "eta2_prime",
    "eta2p": "eta2_prime",
    "upsilon": "upsilon",
}


def build_named(name: str, n: int, params: Mapping, mode: str = "monoid") -> Representation:
    key = _NAMES.get(name)
    if key is None:
        raise RepresentationError(f"unknown representation {name!r}")
    params = dict(params)
    if key == "eta1":
        return rep_eta1(n)
    if key == "eta2":
        return rep_eta2(n, params.get("f", "t"))
    if key == "eta1_prime":
        return rep_eta1_prime(n, Eta1PrimeParams(params.get("v", "t")))
    if key == "eta2_prime":
        missing = [k for k in "fwyv" if k not in params]
        if missing:
            raise RepresentationError(f"eta2' needs parameters {', '.join(missing)}")
        p = Eta2PrimeParams(params["f"], params["w"], params["y"], params["v"])
        return rep_eta2_prime(n, p, params.get("mode", mode))
    family = params.pop("family", None)
    if family is None:
        raise RepresentationError("upsilon needs a family 1..6")
    kw = {k: params[k] for k in _UPSILON_FIELDS if params.get(k) is not None}
    return rep_upsilon(UpsilonParams(int(family), **kw), n)


def rep_from_json(obj) -> Representation:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise RepresentationError("representation JSON must be an object")
    if "images" in obj:
        images = {}
        for tok, mj in obj["images"].items():
            try:
                images[Generator.parse(tok)] = matrix_from_json(mj)
            except (WordError, LinalgError) as exc:
                raise RepresentationError(str(exc)) from None
        if not images:
            raise RepresentationError("empty image map")
        first = next(iter(images.values()))
        n = obj.get("n", first.n)
        return _make(n, first.ring, images, obj.get("name", "custom"), {})
    try:
        return build_named(obj["name"], int(obj["n"]), obj.get("params", {}))
    except KeyError as exc:
        raise RepresentationError(f"representation JSON lacks {exc}") from None


def rep_to_json(rep: Representation) -> dict:
    return {
        "name": rep.name,
        "n": rep.n,
        "images": {str(g): matrix_to_json(m) for g, m in sorted(rep.images.items())},
    }
