"""Irreducibility at exact Q(i) specializations.

The decision is Burnside's: a representation of dimension n over an
algebraically closed field is irreducible iff its images span all n x n
matrices.  The dimension of the generated algebra does not change under
field extension, so computing it over Q(i) decides the question over C.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import RingMatrix, identity, mat_mul, nullspace
from .reps import Eta2PrimeParams, Representation, specialize_rep
from .ring import GaussianRational, LaurentPoly, RingError, lp_eval, parse_gaussian

__all__ = [
    "IrreducibilityReport",
    "burnside_dimension",
    "invariant_vector_check",
    "eta1_irreducible_predicate",
    "eta2_irreducible_predicate",
    "canonical_witnesses",
    "decide",
]


class _Span:
    """Incremental echelon basis of a subspace of Q(i)^m."""

    def __init__(self):
        self.rows: list[tuple[int, list]] = []

    def __len__(self):
        return len(self.rows)

    def add(self, vec: Sequence) -> bool:
        v = list(vec)
        for p, row in self.rows:
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        pivot = next((k for k, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        inv = v[pivot].inverse()
        self.rows.append((pivot, [x * inv for x in v]))
        return True


def _flat(m: RingMatrix) -> list:
    return [x for r in m.rows for x in r]


def burnside_dimension(mats: Sequence[RingMatrix]) -> int:
    """Dimension of the unital algebra generated by ``mats`` (over Q(i))."""
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one matrix")
    n = mats[0].n
    if any(m.n != n for m in mats):
        raise ValueError("matrices must share a size")
    if any(m.ring != "gaussian" for m in mats):
        raise ValueError("specialize to Q(i) before computing the algebra dimension")
    full = n * n
    span = _Span()
    queue = []
    for m in [identity(n, "gaussian")] + mats:
        if span.add(_flat(m)):
            queue.append(m)
    # the span of queue * generators closes once the queue is exhausted
    k = 0
    while k < len(queue) and len(span) < full:
        B = queue[k]
        k += 1
        for g in mats:
            P = mat_mul(B, g)
            if span.add(_flat(P)):
                queue.append(P)
            if len(span) == full:
                break
    return len(span)


def invariant_vector_check(mats: Sequence[RingMatrix], x: Sequence) -> bool:
    """True iff every matrix maps the line through x into itself."""
    x = [GaussianRational.coerce(c) for c in x]
    if not any(x):
        raise ValueError("witness vector must be nonzero")
    k = next(i for i, c in enumerate(x) if c)
    for m in mats:
        if m.ring != "gaussian":
            raise ValueError("invariant_vector_check works over Q(i)")
        y = m.apply(x)
        lam = y[k] / x[k]
        if any(yi != lam * xi for yi, xi in zip(y, x)):
            return False
    return True


def eta1_irreducible_predicate(v) -> bool:
    v = LaurentPoly.coerce(v)
    return v != 1


def eta2_irreducible_predicate(p: Eta2PrimeParams) -> bool:
    # middle condition w + f^2 y / v != 1, multiplied through by the unit v
    f, w, y, v = p.f, p.w, p.y, p.v
    return f != v or w * v + f * f * y != v or v * y + w != 1


@dataclass
class IrreducibilityReport:
    n: int
    t0: GaussianRational | None
    algebra_dimension: int
    verdict: str
    witness: list | None = None
    predicate: str | None = None

    @property
    def irreducible(self) -> bool:
        return self.verdict == "irreducible"

    @property
    def agrees(self) -> bool | None:
        return None if self.predicate is None else self.predicate == self.verdict

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t0": None if self.t0 is None else str(self.t0),
            "algebra_dimension": self.algebra_dimension,
            "verdict": self.verdict,
            "witness": None if self.witness is None else [str(c) for c in self.witness],
            "predicate": self.predicate,
        }


def _weighted_ones(v: GaussianRational, n: int) -> list:
    return [v ** (n - 1 - k) for k in range(n)]


def canonical_witnesses(rep: Representation, t0=None) -> list[list]:
    """All-ones and the diag(v^{n-1}, ..., v, 1)-weighted all-ones vectors."""
    n = rep.n
    one = GaussianRational(1)
    out = [[one] * n]
    v = rep.params.get("v")
    if isinstance(v, LaurentPoly) and t0 is not None:
        out.append(_weighted_ones(lp_eval(v, t0), n))
    elif v is not None and not isinstance(v, LaurentPoly):
        out.append(_weighted_ones(_point(v), n))
    return out


def _common_fixed_vectors(mats: Sequence[RingMatrix]) -> list[list]:
    n = mats[0].n
    stack = []
    for m in mats:
        for r, row in enumerate(m.rows):
            stack.append([x - (1 if c == r else 0) for c, x in enumerate(row)])
    return nullspace(stack, n)


def find_witness(rep: Representation, mats: Sequence[RingMatrix], t0=None) -> list | None:
    for x in canonical_witnesses(rep, t0):
        if any(x) and invariant_vector_check(mats, x):
            return x
    for x in _common_fixed_vectors(mats):
        if invariant_vector_check(mats, x):
            return x
    return None


def _predicate(rep: Representation) -> bool | None:
    p = rep.params
    if rep.name == "eta1_prime" and "v" in p:
        return eta1_irreducible_predicate(p["v"])
    if rep.name == "eta2_prime" and all(k in p for k in "fwyv"):
        return eta2_irreducible_predicate(Eta2PrimeParams(p["f"], p["w"], p["y"], p["v"]))
    return None


def _point(t0) -> GaussianRational | None:
    if t0 is None:
        return None
    return parse_gaussian(t0) if isinstance(t0, str) else GaussianRational.coerce(t0)


def decide(rep: Representation, t0=None) -> IrreducibilityReport:
    """Specialize at t0 (for laurent reps), compute the algebra dimension, find witnesses."""
    t0 = _point(t0)
    if rep.ring == "laurent":
        if t0 is None:
            raise RingError("a laurent representation needs a specialization point t0")
        if t0.is_zero():
            raise RingError("specialization point t0 must be nonzero")
        spec = specialize_rep(rep, t0)
    else:
        spec = rep
    mats = spec.matrices()
    dim = burnside_dimension(mats)
    verdict = "irreducible" if dim == rep.n * rep.n else "reducible"
    witness = find_witness(rep, mats, t0) if verdict == "reducible" else None
    pred = _predicate(rep)
    predicate = None if pred is None else ("irreducible" if pred else "reducible")
    return IrreducibilityReport(rep.n, t0, dim, verdict, witness, predicate)
