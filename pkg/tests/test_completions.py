"""Trie, front-coded set, forward index and docid map tests.

The canonical fixture's completion order is the numeric order of the
term-id sequences (a prefix sorts before its extensions):

    1:(2,) 2:(2,1,8) 3:(2,6,8) 4:(3,) 5:(3,4,7) 6:(3,4,8) 7:(3,4,9)
    8:(3,5,8) 9:(3,10)

so the docid map is [9, 6, 3, 8, 1, 4, 2, 7, 5].
"""

import random

import pytest

from qac.completions import CompletionTrie, DocidMap, FcCompletionSet, ForwardIndex
from qac.corpus import ingest, to_int_completions
from qac.dictionary import FcDictionary

from oracles import CorpusOracle, random_scored_texts

NUMERIC_DOCID_MAP = [9, 6, 3, 8, 1, 4, 2, 7, 5]


@pytest.fixture(scope="module")
def fixture_parts(table1_corpus):
    dictionary = FcDictionary.build(table1_corpus.term_vocabulary)
    ints = to_int_completions(table1_corpus, dictionary)
    return {
        "ints": ints,
        "trie": CompletionTrie.build(ints),
        "fc": FcCompletionSet.build(ints),
        "forward": ForwardIndex.build(ints),
        "dmap": DocidMap.build(ints),
    }


# make the session-scoped corpus available to the module-scoped fixture
@pytest.fixture(scope="module")
def table1_corpus():
    from conftest import fixture_lines

    return ingest(fixture_lines(), "explicit")


class TestTrieLocatePrefix:
    def test_bmw_i3_with_s_range(self, fixture_parts):
        assert fixture_parts["trie"].locate_prefix((3, 4), (7, 9)) == (5, 7)

    def test_bmw_full_term_range(self, fixture_parts):
        # completions continuing after "bmw": everything except "bmw" itself
        assert fixture_parts["trie"].locate_prefix((3,), (1, 10)) == (5, 9)

    def test_audi_q8_range_miss(self, fixture_parts):
        assert fixture_parts["trie"].locate_prefix((2, 6), (1, 1)) is None

    def test_empty_prefix(self, fixture_parts):
        assert fixture_parts["trie"].locate_prefix((), (1, 10)) == (1, 9)
        assert fixture_parts["trie"].locate_prefix((), (3, 3)) == (4, 9)
        assert fixture_parts["trie"].locate_prefix((), (4, 4)) is None

    def test_prefix_deeper_than_trie(self, fixture_parts):
        assert fixture_parts["trie"].locate_prefix((3, 4, 7, 1), (1, 10)) is None

    def test_unknown_prefix_term(self, fixture_parts):
        assert fixture_parts["trie"].locate_prefix((99,), (1, 10)) is None
        assert fixture_parts["trie"].locate_prefix((0,), (1, 10)) is None


class TestTrieStructure:
    def test_left_extreme_transform_roundtrip(self, fixture_parts):
        trie = fixture_parts["trie"]
        for d in range(trie.level_count()):
            level = trie.levels[d]
            decoded = trie.decode_level(d)
            for i, (_, _, p, _) in enumerate(decoded):
                assert level.lefts.access(i) + i == p

    def test_ranges_sorted_by_left_extreme(self, fixture_parts):
        trie = fixture_parts["trie"]
        for d in range(trie.level_count()):
            lefts = [p for _, _, p, _ in trie.decode_level(d)]
            assert lefts == sorted(lefts)
            assert len(set(lefts)) == len(lefts)

    def test_child_ranges_tile_parent(self, fixture_parts):
        trie = fixture_parts["trie"]
        for d in range(trie.level_count() - 1):
            nodes = trie.decode_level(d)
            children = trie.decode_level(d + 1)
            for i, (_, term, p, q) in enumerate(nodes):
                a, b = trie.children_block(d, i)
                if term == 0:
                    assert a == b  # terminators have no children
                    continue
                spans = [(children[c][2], children[c][3]) for c in range(a, b)]
                assert spans[0][0] == p and spans[-1][1] == q
                for (x, y), (x2, _) in zip(spans, spans[1:]):
                    assert x2 == y + 1

    def test_random_against_brute_force(self):
        # 25 corpora x 400 probes = 10^4 random (prefix, range) agreements
        rng = random.Random(50)
        for _ in range(25):
            texts = random_scored_texts(rng, max_n=120, max_vocab=30)
            oracle = CorpusOracle(texts)
            corpus = ingest([f"{t}\t{s}" for t, s in texts.items()], "explicit")
            dictionary = FcDictionary.build(corpus.term_vocabulary)
            ints = to_int_completions(corpus, dictionary)
            trie = CompletionTrie.build(ints)
            fc = FcCompletionSet.build(ints)
            v = dictionary.term_count
            rows = oracle.lexicographic_rows()
            probes = [((), (1, v))]
            while len(probes) < 400:
                seq = rng.choice(rows)[0]
                m = rng.randint(0, min(len(seq), 3))
                if rng.random() < 0.7 and m < len(seq):
                    lo = max(1, seq[m] - rng.randint(0, 2))
                    hi = min(v, seq[m] + rng.randint(0, 2))
                else:
                    lo = rng.randint(1, v)
                    hi = rng.randint(lo, v)
                probes.append((seq[:m], (lo, hi)))
            for prefix, term_range in probes:
                expect = oracle.locate_prefix(tuple(prefix), term_range)
                assert trie.locate_prefix(prefix, term_range) == expect
                assert fc.locate_prefix(prefix, term_range) == expect

    def test_serialization_roundtrip(self, fixture_parts):
        trie = fixture_parts["trie"]
        restored = CompletionTrie.from_bytes(trie.to_bytes())
        assert restored.locate_prefix((3, 4), (7, 9)) == (5, 7)
        assert restored.level_count() == trie.level_count()
        for d in range(trie.level_count()):
            assert restored.decode_level(d) == trie.decode_level(d)


class TestFcCompletionSet:
    def test_same_ranges_as_trie(self, fixture_parts):
        fc = fixture_parts["fc"]
        assert fc.locate_prefix((3, 4), (7, 9)) == (5, 7)
        assert fc.locate_prefix((3,), (1, 10)) == (5, 9)
        assert fc.locate_prefix((2, 6), (1, 1)) is None

    def test_access(self, fixture_parts):
        fc = fixture_parts["fc"]
        assert fc.access(1) == (2,)
        assert fc.access(5) == (3, 4, 7)
        assert fc.access(9) == (3, 10)
        with pytest.raises(ValueError):
            fc.access(10)
        with pytest.raises(ValueError):
            fc.access(0)

    def test_serialization_roundtrip(self, fixture_parts):
        fc = fixture_parts["fc"]
        restored = FcCompletionSet.from_bytes(fc.to_bytes())
        assert [restored.access(i) for i in range(1, 10)] == \
               [fc.access(i) for i in range(1, 10)]


class TestForwardIndex:
    def test_paper_rows(self, fixture_parts):
        fwd = fixture_parts["forward"]
        assert fwd.access(1) == (3, 4, 7)
        assert fwd.access(9) == (2,)

    def test_out_of_range(self, fixture_parts):
        with pytest.raises(ValueError):
            fixture_parts["forward"].access(0)
        with pytest.raises(ValueError):
            fixture_parts["forward"].access(10)

    def test_serialization_roundtrip(self, fixture_parts):
        fwd = fixture_parts["forward"]
        restored = ForwardIndex.from_bytes(fwd.to_bytes())
        assert [restored.access(d) for d in range(1, 10)] == \
               [fwd.access(d) for d in range(1, 10)]


class TestDocidMap:
    def test_fixture_map(self, fixture_parts):
        assert fixture_parts["dmap"].as_list() == NUMERIC_DOCID_MAP

    def test_top_docid_of_bmw_i3_block(self, fixture_parts):
        # the smallest docid among the "bmw i3 *" rows is docid 1
        dmap = fixture_parts["dmap"]
        assert min(dmap.docid_at(i) for i in range(5, 8)) == 1

    def test_permutation_and_inverse(self, fixture_parts):
        dmap = fixture_parts["dmap"]
        n = len(dmap)
        assert sorted(dmap.as_list()) == list(range(1, n + 1))
        for lex in range(1, n + 1):
            assert dmap.lex_of(dmap.docid_at(lex)) == lex

    def test_out_of_range(self, fixture_parts):
        with pytest.raises(ValueError):
            fixture_parts["dmap"].docid_at(0)
        with pytest.raises(ValueError):
            fixture_parts["dmap"].docid_at(10)

    def test_serialization_roundtrip(self, fixture_parts):
        dmap = fixture_parts["dmap"]
        restored = DocidMap.from_bytes(dmap.to_bytes())
        assert restored.as_list() == dmap.as_list()
