import dataclasses
import math

import pytest

from oracles import words
from rdssdual.confusion import Codebook, is_rdss, recovery_table
from rdssdual.covering import TranslateCover
from rdssdual.duality import (
    IndexCodeSpec,
    decode_index,
    duality_report,
    encode_index,
    find_index_failure,
    index_from_rdss,
    linear_index_from_fitting,
    rdss_from_index,
    symbols_needed,
    vector_report,
    verify_index_code,
)
from rdssdual.errors import ConfusablePair, IncompleteCover, UncoveredWord, UnknownProjection
from rdssdual.graph import complete_graph, cycle_graph, empty_graph
from rdssdual.search import FittingMatrix, minrank


def test_symbols_needed():
    assert [symbols_needed(m, 2) for m in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
    assert symbols_needed(10, 3) == 3


def test_index_from_rdss_examples(pentagon_code, pentagon):
    # the whole space is never recoverable once n >= 1: it holds words differing in one place
    with pytest.raises(ConfusablePair):
        index_from_rdss(Codebook(tuple(words(3, 2)), 2), complete_graph(3))
    k1 = index_from_rdss(Codebook(((0,),), 2), empty_graph(1))
    assert k1.m == 2 and k1.length_symbols == 1
    spec = index_from_rdss(Codebook(((0, 0, 0),), 2), empty_graph(3))
    assert spec.m == 8 and spec.length_symbols == 3
    spec = index_from_rdss(pentagon_code, pentagon)
    assert spec.cover.complete and spec.m == 8 and spec.length_symbols == 3


def test_index_from_rdss_rejects_bad_code(pentagon):
    with pytest.raises(ConfusablePair):
        index_from_rdss(Codebook.from_strings(["00000", "10000"], 2), pentagon)


def test_index_methods(pentagon_code, pentagon):
    assert index_from_rdss(pentagon_code, pentagon, "hybrid").cover.method == "hybrid"
    spec = index_from_rdss(pentagon_code, pentagon, "random", seed=0, m=45)
    assert verify_index_code(spec, pentagon)
    with pytest.raises(IncompleteCover):
        index_from_rdss(pentagon_code, pentagon, "random", seed=0, m=2)
    with pytest.raises(ValueError):
        index_from_rdss(pentagon_code, pentagon, "random")
    with pytest.raises(ValueError):
        index_from_rdss(pentagon_code, pentagon, "annealing")


def test_encode_examples(pentagon_code, pentagon):
    spec = index_from_rdss(pentagon_code, pentagon)
    for c in pentagon_code:
        assert encode_index(spec, c) == 0
    x1 = spec.cover.translates[1]
    y = tuple((a + b) % 2 for a, b in zip(pentagon_code.words[1], x1))
    assert y not in pentagon_code and encode_index(spec, y) == 1
    assert encode_index(spec, (1, 0, 0, 0, 0)) == 7


def test_encode_uncovered():
    base = Codebook(((0, 0),), 2)
    table = recovery_table(base, empty_graph(2))
    spec = IndexCodeSpec(empty_graph(2), base, TranslateCover(base, ((0, 0),)), table)
    with pytest.raises(UncoveredWord):
        spec.encode((1, 1))


def test_decode_examples(pentagon_code, pentagon):
    spec = index_from_rdss(pentagon_code, pentagon)
    for c in pentagon_code:
        for j in range(5):
            assert decode_index(spec, 0, j, [c[k] for k in pentagon.out_neighbors[j]]) == c[j]
    # 11011 at vertex 3, which reads vertices 2 and 4
    assert decode_index(spec, 0, 2, (1, 1)) == 0


def test_decode_translation_identity(pentagon_code, pentagon):
    spec = index_from_rdss(pentagon_code, pentagon)
    for i, x in enumerate(spec.cover.translates):
        for c in pentagon_code:
            y = tuple((a + b) % 2 for a, b in zip(c, x))
            for j, nbrs in enumerate(pentagon.out_neighbors):
                assert spec.decode(i, j, [y[k] for k in nbrs]) == y[j]


def test_decode_unknown_projection():
    base = Codebook(((0, 0), (1, 1)), 2)
    g = complete_graph(2)
    spec = index_from_rdss(base, g)
    assert spec.decode(0, 0, (1,)) == 1
    single = index_from_rdss(Codebook(((0, 0),), 2), g)
    with pytest.raises(UnknownProjection):
        single.table.lookup(0, (1,))


def test_verify_examples(pentagon_code, pentagon):
    k3 = complete_graph(3)
    even = Codebook(tuple(w for w in words(3, 2) if sum(w) % 2 == 0), 2)
    assert verify_index_code(index_from_rdss(even, k3), k3)
    spec = index_from_rdss(pentagon_code, pentagon)
    assert verify_index_code(spec, pentagon)
    broken_cover = dataclasses.replace(spec.cover, translates=spec.cover.translates[:-1])
    broken = dataclasses.replace(spec, cover=broken_cover)
    assert not verify_index_code(broken, pentagon)
    y, j = find_index_failure(broken, pentagon)
    assert j is None and y not in {w for x in broken_cover.translates
                                   for w in pentagon_code.translate(x)}


def test_rdss_from_index_examples(pentagon):
    assert len(rdss_from_index(lambda y: 0, complete_graph(2), 2)) == 4
    assert len(rdss_from_index(lambda y: y, pentagon, 2)) == 1

    def pentagon_scheme(x):
        return ((x[1] + x[2]) % 2, (x[3] + x[4]) % 2, sum(x) % 2)

    fiber = rdss_from_index(pentagon_scheme, pentagon, 2)
    assert len(fiber) == 4 and is_rdss(fiber, pentagon)
    assert fiber.words[0] == (0,) * 5
    table = {y: pentagon_scheme(y) for y in words(5, 2)}
    assert rdss_from_index(table, pentagon, 2) == fiber


def test_rdss_from_index_undecodable_encoding(pentagon):
    fiber = rdss_from_index(lambda y: 0, pentagon, 2)
    assert len(fiber) == 32 and not is_rdss(fiber, pentagon)


def test_round_trip_dimension(pentagon_code, pentagon):
    spec = index_from_rdss(pentagon_code, pentagon)
    back = rdss_from_index(spec.encode, pentagon, 2)
    assert math.log(len(back), 2) >= 5 - spec.length_symbols


def test_linear_index_examples(pentagon):
    ident = FittingMatrix(empty_graph(3), 2, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    lin = linear_index_from_fitting(ident)
    assert lin.length_symbols == 3 and lin.encode((1, 0, 1)) == (1, 0, 1)
    assert verify_index_code(lin, empty_graph(3))
    ones = FittingMatrix(complete_graph(3), 2, ((1, 1, 1),) * 3)
    lin = linear_index_from_fitting(ones)
    assert lin.length_symbols == 1 and lin.encode((1, 1, 0)) == (0,)
    assert lin.decode((0,), 2, (1, 1)) == 0
    assert verify_index_code(lin, complete_graph(3))
    lin = linear_index_from_fitting(minrank(pentagon, 2).witness)
    assert lin.length_symbols == 3 and verify_index_code(lin, pentagon)


def test_linear_index_ternary():
    g = cycle_graph(4)
    lin = linear_index_from_fitting(minrank(g, 3).witness)
    assert verify_index_code(lin, g)


def test_report_empty_graph():
    rep = duality_report(empty_graph(2), 2)
    assert rep.rdss_dim == 0 and rep.minrank == 2 and rep.index_length == 2
    assert rep.verdict_lower and rep.verdict_upper and rep.verdict_eq6 and rep.passed
    assert rep.eq6_strict is False


def test_report_complete_graph():
    rep = duality_report(complete_graph(3), 2)
    assert rep.rdss_dim == pytest.approx(2) and rep.minrank == 1 and rep.index_length == 1
    assert rep.passed


def test_report_pentagon(pentagon):
    rep = duality_report(pentagon, 2)
    assert rep.rdss_size == 5 and rep.rdss_exact
    assert rep.rdss_dim == pytest.approx(math.log2(5))
    assert rep.minrank == 3 and rep.linear_dim == 2 and rep.linear_size == 4
    assert rep.index_length_symbols == 3 and rep.lower_length_symbols == 3 and rep.index_length_optimal
    assert rep.eq6_strict and rep.passed
    text = rep.format()
    assert "strictness = rdss_dim > n - minrank\n" in text
    assert "rdss_size = 5\n" in text and text.endswith("all_pass = true\n")
    assert rep.format_table().splitlines()[0].split() == ["n", "5"]


def test_report_composite_alphabet():
    rep = duality_report(complete_graph(3), 4)
    assert rep.minrank is None and rep.verdict_eq6 is None
    assert "minrank = n/a" in rep.format() and "strictness" not in rep.format()
    assert rep.rdss_size == 16 and rep.passed


def test_vector_report_examples(pentagon):
    assert vector_report(pentagon, 2, 1) == duality_report(pentagon, 2)
    rep = vector_report(empty_graph(2), 2, 2)
    assert rep.rdss_dim == 0 and rep.index_length_symbols == 2 and rep.passed
    rep = vector_report(complete_graph(3), 2, 2)
    assert rep.alphabet == 4 and rep.rdss_size == 16 and rep.rdss_dim == pytest.approx(2)
    assert rep.minrank is None and rep.passed
    with pytest.raises(ValueError):
        vector_report(pentagon, 2, 0)


def test_report_verdicts_reevaluate():
    rep = duality_report(complete_graph(3), 2)
    worse = dataclasses.replace(rep, index_classes=64)
    assert not worse.verdict_upper and not worse.passed
    impossible = dataclasses.replace(rep, index_classes=1)
    assert not impossible.verdict_lower
