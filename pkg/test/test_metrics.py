
from cids.corpus import CitationEdge, Corpus, PaperRecord, PersonName, YearRange
from cids.errors import UnknownReferenceError
from cids.identity import ResearcherSpec, parse_query
from cids.metrics import MetricPair, compute_researcher_metrics, h_index, is_self_citation

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from .strategies import citation_counts, corpora, researchers

EP = YearRange(2003, 2006)
RCP = YearRange(1999, 2006)


def paper(pid, authors, year=2004):
    return PaperRecord(pid, f"Title {pid}", year, tuple(PersonName.parse(a) for a in authors))

def brute_force_h(counts):
    return max(h for h in range(len(counts) + 1) if sum(1 for c in counts if c >= h) >= h)


###########################################
# Self-citations
###########################################
@pytest.mark.parametrize("citing,cited,expected", [
    (["A,X", "B,Y"], ["B,Y", "C,Z"], True),
    (["A,X"], ["B,Y", "C,Z"], False),
    (["Couto,F."], ["Couto,Francisco M."], True),
])
def test_is_self_citation(citing, cited, expected):
    corpus = Corpus([paper("citing", citing), paper("cited", cited)])
    assert is_self_citation(CitationEdge("citing", "cited"), corpus) == expected


def test_is_self_citation_unresolved_endpoint():
    corpus = Corpus([paper("cited", ["A,X"])])
    with pytest.raises(UnknownReferenceError, match="'ghost'"):
        is_self_citation(CitationEdge("ghost", "cited"), corpus)


###########################################
# h-index
###########################################
@pytest.mark.parametrize("counts,h", [
    ([], 0),
    ([10, 8, 5, 4, 3, 3, 2, 1, 0], 4),
    ([1, 1, 1, 1], 1),
    ([0, 0], 0),
    ([100], 1),
])
def test_h_index_examples(counts, h):
    assert h_index(counts) == h


@settings(max_examples=1000)
@given(citation_counts())
def test_h_index_matches_definition(counts):
    assert h_index(counts) == brute_force_h(counts)


@given(citation_counts(), st.randoms())
def test_h_index_permutation_and_growth(counts, rnd):
    shuffled = list(counts)
    rnd.shuffle(shuffled)
    assert h_index(shuffled) == h_index(counts)
    if counts:
        i = rnd.randrange(len(counts))
        grown = list(counts)
        grown[i] += 1
        assert h_index(grown) >= h_index(counts)


###########################################
# MetricPair
###########################################
def test_metric_pair_arithmetic():
    pair = MetricPair(3, 2)
    assert pair.self_count == 1
    assert pair + MetricPair(1, 1) == MetricPair(4, 3)
    assert pair.scaled(2) == MetricPair(1.5, 1.0)
    assert pair.scaled(0) == MetricPair(0.0, 0.0)
    assert MetricPair(5, 3).ratio(MetricPair(2, 0)) == MetricPair(2.5, 0.0)


###########################################
# Researcher metrics
###########################################
def test_single_paper_with_one_self_citation():
    corpus = Corpus(
        [paper("mine", ["Couto,Francisco"]), paper("x", ["Silva,M"]),
         paper("y", ["Faria,D"]), paper("z", ["Couto,F", "Pinto,S"])],
        [CitationEdge("x", "mine"), CitationEdge("y", "mine"), CitationEdge("z", "mine")])
    spec = ResearcherSpec("couto", PersonName("Couto", ("Francisco",)),
                          parse_query("author:f-couto -author:s-pinto"))
    m = compute_researcher_metrics(spec, corpus, EP)
    assert m.matched_papers == ("mine",)
    assert m.citations == MetricPair(3, 2)
    assert m.per_paper_citations["mine"].self_count == 1
    assert m.h_index == MetricPair(1, 1)
    assert m.cited_papers == MetricPair(1, 1)


def test_no_matched_papers_gives_zeros(corpus, registry):
    m = compute_researcher_metrics(registry["couto"], corpus, YearRange(1950, 1960))
    assert m.matched_papers == ()
    assert m.cited_papers == MetricPair(0, 0)
    assert m.citations == MetricPair(0, 0)
    assert m.citations_per_paper == MetricPair(0.0, 0.0)
    assert m.h_index == MetricPair(0, 0)


def test_fixture_researcher_by_period(corpus, registry):
    rcp = compute_researcher_metrics("couto", corpus, RCP, registry)
    assert rcp.matched_papers == ("p01", "p03", "p02", "p11")
    assert rcp.cited_papers == MetricPair(3, 3)
    assert rcp.citations == MetricPair(9, 5)
    assert rcp.citations_per_paper == MetricPair(3.0, 5 / 3)
    assert rcp.h_index == MetricPair(2, 2)

    # the 2000 paper falls outside the EP
    ep = compute_researcher_metrics("couto", corpus, EP, registry)
    assert ep.matched_papers == ("p03", "p02", "p11")
    assert ep.citations == MetricPair(5, 3)
    assert ep.citations_per_paper == MetricPair(2.5, 1.5)
    assert ep.h_index == MetricPair(2, 1)

    with pytest.raises(UnknownReferenceError, match="unknown researcher ref 'nobody'"):
        compute_researcher_metrics("nobody", corpus, EP, registry)


def test_self_only_cited_paper_counts_in_all_kind():
    corpus = Corpus([paper("a", ["Couto,F"]), paper("b", ["Couto,F"])], [CitationEdge("b", "a")])
    spec = ResearcherSpec("c", PersonName("Couto", ("F",)), parse_query("author:couto"))
    m = compute_researcher_metrics(spec, corpus, EP)
    assert m.cited_papers == MetricPair(1, 0)
    assert m.citations_per_paper == MetricPair(1.0, 0.0)


###########################################
# Properties over random corpora
###########################################
def without_self_citations(corpus):
    return Corpus(corpus.papers.values(), [e for e in corpus.edges if not is_self_citation(e, corpus)])


@settings(max_examples=200, deadline=None)
@given(corpora(max_papers=60, max_edges=300))
def test_nonself_never_exceeds_all(corpus):
    clean = without_self_citations(corpus)
    for spec in researchers():
        m = compute_researcher_metrics(spec, corpus, RCP)
        for pair in (m.cited_papers, m.citations, m.h_index):
            assert 0 <= pair.nonself <= pair.all
        assert m.h_index.all <= m.cited_papers.all
        assert m.citations.all == sum(c.all for c in m.per_paper_citations.values())
        for kind in ("all", "nonself"):
            if getattr(m.cited_papers, kind):
                assert getattr(m.citations_per_paper, kind) * getattr(m.cited_papers, kind) == \
                       pytest.approx(getattr(m.citations, kind))

        c = compute_researcher_metrics(spec, clean, RCP)
        for pair in (c.cited_papers, c.citations, c.h_index, c.citations_per_paper):
            assert pair.all == pair.nonself


@settings(max_examples=100, deadline=None)
@given(corpora())
def test_shrinking_period_never_increases_counts(corpus):
    for spec in researchers():
        wide = compute_researcher_metrics(spec, corpus, RCP)
        narrow = compute_researcher_metrics(spec, corpus, EP)
        for attr in ("cited_papers", "citations", "h_index"):
            assert getattr(narrow, attr).all <= getattr(wide, attr).all
            assert getattr(narrow, attr).nonself <= getattr(wide, attr).nonself
