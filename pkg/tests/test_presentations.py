import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vstlab.presentations import (
    CATALOG_NAMES,
    PresentationError,
    RewriteError,
    RewriteTrace,
    Step,
    check_trace,
    derive_generator,
    expand_reduced,
    map_F,
    map_G,
    presentation_catalog,
    rewrite_step,
    search_equiv,
    shipped_traces,
    to_reduced,
    verify_trace,
)
from vstlab.words import Generator, Word, WordError, free_reduce, parse_word, pi_image, word

MIN_N = {"twin": 2, "stm": 2, "st": 2}


def catalogs(ns=(2, 3, 4, 5)):
    for name in CATALOG_NAMES:
        for n in ns:
            if n >= MIN_N.get(name, 3):
                yield name, n


def test_vstm_n3_has_eleven_relations():
    pres = presentation_catalog("vstm", 3)
    assert len(pres) == 11
    assert not [r for r in pres if r.family.startswith("comm")]
    counts = {f: len(pres.lookup(f)) for f in pres.families()}
    assert counts == {"eq20-s": 2, "eq20-nu": 2, "eq21": 2, "eq22": 2, "eq23": 1, "eq24": 1, "eq25": 1}


def test_twin_n2():
    pres = presentation_catalog("twin", 2)
    assert [(str(r.lhs), str(r.rhs)) for r in pres] == [("s1 s1", "e")]


def test_reduced_catalog_contains_eq41():
    pres = presentation_catalog("reduced-vstm", 5)
    (rel,) = pres.lookup("eq41")
    assert str(rel.lhs) == "t1 v1 v2 s1 v2 v1 s1"
    assert str(rel.rhs) == "v1 v2 s1 v2 v1 s1 v1 v2 t1 v2 v1"


def test_vst_adds_tau_inverses():
    pres = presentation_catalog("vst", 3)
    assert pres.mode == "group"
    assert {str(r.lhs) for r in pres.lookup("inv-tau")} == {"t1 T1", "t2 T2"}


def test_unknown_catalog():
    with pytest.raises(PresentationError):
        presentation_catalog("braid", 3)


@pytest.mark.parametrize("name,n", list(catalogs()))
def test_every_relation_is_pi_compatible(name, n):
    for rel in presentation_catalog(name, n):
        assert pi_image(rel.lhs) == pi_image(rel.rhs), rel.label


def test_derive_generator():
    assert str(derive_generator("S", 2, 3)) == "v1 v2 s1 v2 v1"
    assert str(derive_generator("Tau", 3, 4)) == "v2 v1 v3 v2 t1 v2 v3 v1 v2"
    assert str(derive_generator("S", 1, 5)) == "s1"
    with pytest.raises(WordError):
        derive_generator("S", 4, 4)


def test_expand_and_to_reduced():
    w = parse_word("v2 s1 t1", 3, "reduced")
    assert expand_reduced(w).alphabet == "standard"
    assert str(expand_reduced(w)) == "v2 s1 t1"
    assert str(to_reduced(word("s2", 3))) == "v1 v2 s1 v2 v1"
    with pytest.raises(WordError):
        expand_reduced(word("s1", 3))


def test_map_F_and_G_examples():
    m1 = parse_word("m1", 3, "connecting")
    assert str(map_F(m1)) == "s1 v1"
    assert free_reduce(map_G(map_F(m1))) == m1
    assert str(free_reduce(map_F(map_G(word("s2 v1", 3))))) == "s2 v1"
    assert str(map_F(parse_word("M2 g1", 3, "connecting"))) == "v2 s2 t1 v1"
    with pytest.raises(WordError):
        map_G(word("T1", 3))


def test_rewrite_step_examples():
    vstm = presentation_catalog("vstm", 3)
    nu = vstm.get("eq20-nu[1]")
    assert str(rewrite_step(word("s1 v1 v1 t2", 3), nu, "lr", 1)) == "s1 t2"
    eq22 = vstm.get("eq22[1,2]")
    assert str(rewrite_step(word("t2 s1 s2", 3), eq22, "rl", 0)) == "s1 s2 t1"
    eq23 = vstm.get("eq23[1,2]")
    assert str(rewrite_step(word("v1 v2 v1", 3), eq23, "lr", 0)) == "v2 v1 v2"
    with pytest.raises(RewriteError):
        rewrite_step(word("s1 t2", 3), nu, "lr", 0)


def test_trace_checks():
    vstm = presentation_catalog("vstm", 3)
    w = word("s1 t2", 3)
    assert verify_trace(RewriteTrace("vstm", 3, w, w, ()))
    bad = RewriteTrace("vstm", 3, word("s1 s2 t2", 3), word("t2 s1 s2", 3), (Step("eq22[1,2]", "lr", 0),))
    chk = check_trace(bad, vstm)
    assert not chk.ok and chk.failed_step == 0 and "position 0" in chk.message
    with pytest.raises(PresentationError):
        check_trace(RewriteTrace("vstm", 3, w, w, (Step("nope", "lr", 0),)))


def test_family_labels_accepted_when_unambiguous():
    tr = RewriteTrace("vstm", 3, word("s1 s1 t2", 3), word("t2", 3), (Step("eq20-s", "lr", 0),))
    assert verify_trace(tr)


def test_trace_json_roundtrip():
    tr = shipped_traces()["tau-s-s-commute"]
    again = RewriteTrace.from_json(json.dumps(tr.to_json()))
    assert again == tr


def test_search_examples():
    vstm = presentation_catalog("vstm", 3)
    r = search_equiv(word("s1 s1", 3), word("e", 3), vstm)
    assert r.proved and len(r.trace) == 1
    r = search_equiv(word("t1 s2 s1", 3), word("s2 s1 t2", 3), vstm)
    assert r.proved and verify_trace(r.trace, vstm)
    r = search_equiv(word("s1", 3), word("t1", 3), vstm, max_len=5)
    assert r.status == "unknown"
    r = search_equiv(word("s1", 3), word("s2", 3), vstm)
    assert r.status == "unknown" and "permutation" in r.reason


def test_node_cap_from_environment(monkeypatch):
    monkeypatch.setenv("VSTLAB_SEARCH_NODES", "10")
    vstm = presentation_catalog("vstm", 3)
    r = search_equiv(word("s1 s2 t1 v1 v2", 3), word("v2 v1 t1 s2 s1", 3), vstm)
    assert r.status == "unknown" and r.reason == "node cap reached"


@pytest.mark.parametrize("name", sorted(shipped_traces()))
def test_shipped_traces_verify(name):
    tr = shipped_traces()[name]
    assert verify_trace(tr)
    assert pi_image(tr.start) == pi_image(tr.end)


def _fixture_for(u, w, n):
    for tr in shipped_traces().values():
        if tr.presentation == "reduced-vstm" and tr.n == n and {tr.start, tr.end} == {u, w}:
            return tr
    return None


@pytest.mark.parametrize("n", [3, 4])
def test_vstm_relations_follow_from_reduced_presentation(n):
    red = presentation_catalog("reduced-vstm", n)
    for rel in presentation_catalog("vstm", n):
        u, w = to_reduced(rel.lhs), to_reduced(rel.rhs)
        res = search_equiv(u, w, red, max_len=max(len(u), len(w)) + 4, max_nodes=100_000)
        if res.proved:
            assert verify_trace(res.trace, red), rel.label
            continue
        tr = _fixture_for(u, w, n)
        assert tr is not None, f"no proof of {rel.label} in the reduced presentation"
        assert verify_trace(tr, red), rel.label


# random rewriting walks: whatever search proves must replay

@st.composite
def walks(draw, name="vstm", n=3):
    pres = presentation_catalog(name, n)
    rels = pres.relations
    letters = tuple(draw(st.lists(st.sampled_from([Generator(k, i) for k in ("S", "Tau", "Nu") for i in range(1, n)]), max_size=4)))
    w = Word(n, letters, pres.mode, pres.alphabet)
    start = w
    for _ in range(draw(st.integers(0, 3))):
        rel = draw(st.sampled_from(rels))
        d = draw(st.sampled_from(["lr", "rl"]))
        src = rel.side(d)[0].letters
        spots = [p for p in range(len(w) + 1) if w.letters[p : p + len(src)] == src]
        if spots:
            w = rewrite_step(w, rel, d, draw(st.sampled_from(spots)))
    return pres, start, w


@settings(max_examples=40, deadline=None)
@given(walks())
def test_search_traces_replay(case):
    pres, u, w = case
    res = search_equiv(u, w, pres, max_nodes=20_000)
    if res.proved:
        chk = check_trace(res.trace, pres)
        assert chk.ok, chk.message
        assert pi_image(u) == pi_image(w)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from(["m", "M", "g", "v"]), max_size=10), st.sampled_from([3, 4]), st.data())
def test_F_G_roundtrip_on_connecting_words(kinds, n, data):
    toks = [f"{k}{data.draw(st.integers(1, n - 1))}" for k in kinds]
    u = parse_word(" ".join(toks), n, "connecting")
    if any(g.kind == "MuInv" for g in u):
        return
    assert free_reduce(map_G(map_F(u))) == free_reduce(u)
