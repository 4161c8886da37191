import pytest
from hypothesis import given
from hypothesis import strategies as st

from vstlab.words import (
    Generator,
    Permutation,
    Word,
    WordError,
    concat,
    format_word,
    free_reduce,
    is_pure,
    parse_word,
    pi_image,
    word,
)


def words(n, kinds=("S", "Tau", "Nu"), mode="monoid", alphabet="standard", max_size=12):
    letter = st.builds(Generator, st.sampled_from(kinds), st.integers(1, n - 1))
    return st.lists(letter, max_size=max_size).map(lambda ls: Word(n, tuple(ls), mode, alphabet))


def transposition_product(w):
    # oracle: multiply transpositions explicitly
    p = Permutation.identity(w.n)
    for g in w.letters:
        if g.kind in ("Mu", "MuInv", "Gamma"):
            continue
        p = p.then(Permutation.transposition(w.n, g.index, g.index + 1))
    return p


def test_parse_and_format():
    w = parse_word("s1 t2 v1", 3)
    assert [str(g) for g in w] == ["s1", "t2", "v1"]
    assert format_word(parse_word("e", 3)) == "e"
    assert str(word("s1 T2", 3)) == "s1 T2"
    assert word("s1 T2", 3).mode == "group"


@pytest.mark.parametrize(
    "text,n,alphabet,mode",
    [
        ("s3", 3, "standard", "monoid"),
        ("x1", 3, "standard", "monoid"),
        ("T1", 3, "standard", "monoid"),
        ("s2", 4, "reduced", "monoid"),
        ("m1", 3, "standard", "monoid"),
        ("s1", 3, "connecting", "monoid"),
        ("g2", 4, "reduced-connecting", "monoid"),
    ],
)
def test_parse_rejects(text, n, alphabet, mode):
    with pytest.raises(WordError):
        parse_word(text, n, alphabet, mode)


def test_reduced_alphabet_accepts_all_nus():
    assert len(parse_word("v3 s1 t1 v2", 4, "reduced")) == 4


def test_free_reduce_examples():
    assert str(free_reduce(word("s1 v1 v1 s1", 3))) == "e"
    assert str(free_reduce(word("t1 T1 s2", 3))) == "s2"
    assert str(free_reduce(word("t1 t1", 3))) == "t1 t1"
    assert str(free_reduce(parse_word("m1 M1 g2 v1", 3, "connecting"))) == "g2 v1"


def test_pi_examples():
    assert pi_image(word("s1 v2 s1", 3)).images == (3, 2, 1)
    assert pi_image(word("e", 3)).is_identity()
    assert is_pure(word("t1 t1", 3))
    assert not is_pure(word("t1", 3))
    assert is_pure(parse_word("m1 g2 M1", 3, "connecting"))
    assert str(pi_image(word("s1 s2", 3))) == "(1 3 2)"


def test_json_roundtrip():
    w = word("s1 T2 v1", 4)
    assert Word.from_json(w.to_json()) == w


def test_concat_checks_n():
    with pytest.raises(WordError):
        concat(word("s1", 3), word("s1", 4))


@given(words(5), words(5))
def test_pi_is_homomorphism(u, v):
    assert pi_image(u + v) == pi_image(u).then(pi_image(v))


@given(words(5))
def test_pi_matches_transposition_oracle(w):
    assert pi_image(w) == transposition_product(w)


@given(words(4, ("S", "Tau", "TauInv", "Nu"), mode="group"))
def test_free_reduce_is_idempotent_and_preserves_pi(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)
    assert pi_image(r) == pi_image(w)


@given(words(4, ("Mu", "MuInv", "Gamma", "Nu"), alphabet="connecting"))
def test_connecting_letters_other_than_nu_are_pure(w):
    kept = w.replace([g for g in w.letters if g.kind == "Nu"])
    assert pi_image(w) == pi_image(kept)
