import random
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from depforge.conllx import (
    ArcSet,
    CycleDetected,
    EmptyFile,
    HeadOutOfRange,
    InvariantViolation,
    MissingHead,
    NonNumericId,
    Sentence,
    Token,
    WrongColumnCount,
    is_projective,
    is_punctuation,
    read_conllx,
    read_conllx_path,
    write_conllx,
)
from helpers import (
    all_trees,
    crossing_arcs_projective,
    make_sentence,
    random_single_root_tree,
)

FIXTURES = Path(__file__).parent / "fixtures"


def test_read_minimal_file():
    sentences = read_conllx_path(FIXTURES / "tiny.conll")
    assert len(sentences) == 1
    sentence = sentences[0]
    assert [t.form for t in sentence] == ["the", "dog"]
    assert sentence.token(1).head == 2
    assert sentence.token(2).head == 0
    assert sentence.token(1).lemma is None
    assert sentence.token(1).pdeprel == "_"


def test_read_multiple_sentences():
    sentences = read_conllx_path(FIXTURES / "small.conll")
    assert [len(s) for s in sentences] == [3, 3]


def test_wrong_column_count():
    with pytest.raises(WrongColumnCount) as info:
        read_conllx_path(FIXTURES / "nine_columns.conll")
    assert info.value.line_no == 1


def test_non_numeric_id():
    with pytest.raises(NonNumericId):
        read_conllx_path(FIXTURES / "bad_id.conll")


def test_head_out_of_range():
    with pytest.raises(HeadOutOfRange) as info:
        read_conllx_path(FIXTURES / "head_range.conll")
    assert info.value.sentence_no == 1


def test_self_head_rejected():
    data = b"1\ta\t_\tX\tX\t_\t1\tdep\t_\t_\n"
    with pytest.raises(HeadOutOfRange):
        read_conllx(data)


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        read_conllx_path(FIXTURES / "cyclic.conll")


def test_empty_file():
    with pytest.raises(EmptyFile):
        read_conllx_path(FIXTURES / "empty.conll")
    with pytest.raises(EmptyFile):
        read_conllx_path(FIXTURES / "blank_only.conll")


def test_non_consecutive_ids_rejected():
    data = b"1\ta\t_\tX\tX\t_\t0\troot\t_\t_\n3\tb\t_\tX\tX\t_\t1\tdep\t_\t_\n"
    with pytest.raises(InvariantViolation):
        read_conllx(data)


def test_absent_heads_allowed():
    data = b"1\ta\t_\tX\tX\t_\t_\t_\t_\t_\n"
    (sentence,) = read_conllx(data)
    assert sentence.token(1).head is None


def test_multi_root_accepted():
    data = (
        b"1\ta\t_\tX\tX\t_\t0\troot\t_\t_\n"
        b"2\tb\t_\tX\tX\t_\t0\troot\t_\t_\n"
    )
    (sentence,) = read_conllx(data)
    assert [t.head for t in sentence] == [0, 0]


def test_write_round_trip_bytes(fixture_corpus):
    for path in ("tiny.conll", "small.conll"):
        original = (FIXTURES / path).read_bytes()
        assert write_conllx(read_conllx(original)) == original
    blob = write_conllx(fixture_corpus)
    assert write_conllx(read_conllx(blob)) == blob


def test_read_write_in_memory_identity(fixture_corpus):
    assert read_conllx(write_conllx(fixture_corpus)) == fixture_corpus


def test_crlf_normalized_to_lf():
    sentences = read_conllx_path(FIXTURES / "crlf.conll")
    emitted = write_conllx(sentences)
    assert b"\r" not in emitted
    normalized = (FIXTURES / "crlf.conll").read_bytes().replace(b"\r\n", b"\n")
    assert emitted == normalized


def test_write_empty_sentence_rejected():
    with pytest.raises(InvariantViolation):
        write_conllx([Sentence(tokens=())])


def test_write_emits_absent_markers():
    sentence = Sentence((Token(id=1, form="x", head=0, deprel="root"),))
    line = write_conllx([sentence]).decode().splitlines()[0]
    assert line.split("\t") == ["1", "x", "_", "_", "_", "_", "0", "root", "_", "_"]


def test_arcset_single_head():
    arcs = ArcSet([(0, "root", 1)])
    with pytest.raises(InvariantViolation):
        arcs.add(2, "dep", 1)
    assert arcs.head_of(1) == 0
    assert arcs.relation_of(1) == "root"
    assert (0, "root", 1) in arcs
    assert arcs.dependents_of(0) == [1]


def test_is_projective_chain():
    heads = [2, 3, 4, 0]
    assert is_projective(make_sentence(heads))


def test_is_projective_crossing_example():
    # arc 4->2 spans token 3, which does not descend from 4
    assert not is_projective(make_sentence([0, 4, 1, 1]))


def test_is_projective_missing_head():
    sentence = Sentence((Token(id=1, form="x"),))
    with pytest.raises(MissingHead):
        is_projective(sentence)


def test_projectivity_agreement_exhaustive_small():
    for n in range(1, 5):
        for heads in all_trees(n):
            sentence = make_sentence(list(heads))
            assert is_projective(sentence) == crossing_arcs_projective(sentence)


def test_projectivity_agreement_random():
    rng = random.Random(1234)
    for _ in range(300):
        n = rng.randint(1, 8)
        sentence = make_sentence(list(random_single_root_tree(rng, n)))
        assert is_projective(sentence) == crossing_arcs_projective(sentence)


def test_is_punctuation():
    assert is_punctuation(",")
    assert is_punctuation("...")
    assert is_punctuation("¿")
    assert not is_punctuation("dog")
    assert not is_punctuation("a.")
    assert not is_punctuation("")


@given(
    st.lists(
        st.text(
            alphabet=st.characters(blacklist_characters="\t\n\r", blacklist_categories=("Cs",)),
            min_size=1,
        ).filter(lambda s: s != "_"),
        min_size=1,
        max_size=6,
    )
)
def test_round_trip_arbitrary_forms(forms):
    heads = [i + 2 for i in range(len(forms) - 1)] + [0]
    sentence = make_sentence(heads, forms=forms)
    assert read_conllx(write_conllx([sentence])) == [sentence]
