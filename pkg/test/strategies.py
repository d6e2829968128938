"""
    Hypothesis strategies for random corpora and rosters.

    Authors come from a small pool so that shared authors,
    and therefore self-citations, are common.
"""

from cids.corpus import CitationEdge, Corpus, PaperRecord, PersonName, UnitRecord
from cids.identity import ResearcherSpec, parse_query

from hypothesis import strategies as st

FAMILIES = ("Couto", "Silva", "Faria", "Pinto")
GIVEN = ("Ana", "Bruno", "Carla")
TITLES = ("alpha study", "beta results", "gamma", "delta notes")


def citation_counts():
    return st.lists(st.integers(min_value=0, max_value=500), max_size=200)


@st.composite
def corpora(draw, max_papers=30, max_edges=80):
    n = draw(st.integers(min_value=0, max_value=max_papers))
    papers = []
    for i in range(n):
        authors = draw(st.lists(st.tuples(st.sampled_from(FAMILIES), st.sampled_from(GIVEN)),
                                min_size=1, max_size=3, unique=True))
        papers.append(PaperRecord(
            id=f"p{i:03d}",
            title=draw(st.sampled_from(TITLES)),
            year=draw(st.integers(min_value=1998, max_value=2008)),
            authors=tuple(PersonName(family, (given,)) for family, given in authors),
        ))
    edges = set()
    if n >= 2:
        pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges))
        edges = {CitationEdge(f"p{a:03d}", f"p{b:03d}") for a, b in pairs if a != b}
    return Corpus(papers, edges)


def researchers():
    """
    One researcher per (family, initial) in the pool.
    """
    return [ResearcherSpec(f"{family.lower()}-{given[0].lower()}", PersonName(family, (given,)),
                           parse_query(f"author:{given[0].lower()}-{family.lower()}"))
            for family in FAMILIES for given in GIVEN]


@st.composite
def units(draw):
    roster = draw(st.lists(st.sampled_from(researchers()), min_size=1, max_size=4,
                           unique_by=lambda r: r.ref))
    return UnitRecord(
        name="U",
        int_phd=tuple(roster),
        projects_national=draw(st.integers(min_value=0, max_value=10)),
        projects_international=draw(st.integers(min_value=0, max_value=10)),
        phd_theses=draw(st.integers(min_value=0, max_value=10)),
    )
