"""
    metrics.py

    Per-researcher citation metrics over a period.

    Every metric is reported as a MetricPair: once counting
    all citations, once counting only non-self-citations.
    A citation is a self-citation when at least one author
    of the citing paper is also an author of the cited paper.
"""

from dataclasses import dataclass
from functools import lru_cache

from cids.corpus import YearRange
from cids.identity import match_papers, normalize_name, resolve_researcher


@dataclass(frozen=True)
class MetricPair:
    """
    A metric evaluated with all citations (`all`) and
    with self-citations removed (`nonself`).
    """
    all: float
    nonself: float

    @property
    def self_count(self):
        return self.all - self.nonself

    def __add__(self, other):
        return MetricPair(self.all + other.all, self.nonself + other.nonself)

    def scaled(self, divisor):
        """
        Both members divided by `divisor`; 0.0 when divisor is 0.
        """
        if divisor == 0:
            return MetricPair(0.0, 0.0)
        return MetricPair(self.all / divisor, self.nonself / divisor)

    def ratio(self, denominator):
        """
        Member-wise ratio against another pair; 0.0 where
        the denominator member is 0.
        """
        return MetricPair(self.all / denominator.all if denominator.all else 0.0,
                          self.nonself / denominator.nonself if denominator.nonself else 0.0)


@dataclass(frozen=True)
class ResearcherMetrics:
    researcher: str
    period: YearRange
    matched_papers: tuple
    cited_papers: MetricPair
    citations: MetricPair
    citations_per_paper: MetricPair
    h_index: MetricPair
    per_paper_citations: dict
    citation_edges: frozenset = frozenset()
    nonself_edges: frozenset = frozenset()

    def cited_ids(self, nonself=False) -> frozenset:
        """
        Matched papers with at least one citation of the given kind.
        """
        member = "nonself" if nonself else "all"
        return frozenset(p for p, c in self.per_paper_citations.items() if getattr(c, member) > 0)


#########################################
# Self-citations
#########################################
@lru_cache(maxsize=65536)
def _author_keys(paper) -> frozenset:
    return frozenset(normalize_name(a) for a in paper.authors)

def is_self_citation(edge, corpus) -> bool:
    """
    True iff some author of the citing paper is also
    an author of the cited paper.
    """
    citing = corpus.paper(edge.citing)
    cited = corpus.paper(edge.cited)
    return not _author_keys(citing).isdisjoint(_author_keys(cited))


#########################################
# h-index
#########################################
def h_index(counts) -> int:
    """
    The largest h such that at least h of `counts` are >= h.
    """
    h = 0
    for rank, count in enumerate(sorted(counts, reverse=True), start=1):
        if count < rank:
            break
        h = rank
    return h


#########################################
# Researcher metrics
#########################################
def compute_researcher_metrics(spec, corpus, period: YearRange, registry=None) -> ResearcherMetrics:
    """
    Metrics of the researcher's matched papers published within
    `period`. Citing papers of any year count.
    """
    if isinstance(spec, str):
        spec = resolve_researcher(registry or {}, spec)
    matched = tuple(pid for pid in match_papers(spec, corpus) if corpus.papers[pid].year in period)

    per_paper = {}
    edges = set()
    nonself_edges = set()
    for pid in matched:
        cites = corpus.citations_to(pid)
        nonself = [e for e in cites if not is_self_citation(e, corpus)]
        per_paper[pid] = MetricPair(len(cites), len(nonself))
        edges.update(cites)
        nonself_edges.update(nonself)

    counts = list(per_paper.values())
    citations = MetricPair(sum(c.all for c in counts), sum(c.nonself for c in counts))
    cited = MetricPair(sum(1 for c in counts if c.all > 0), sum(1 for c in counts if c.nonself > 0))
    return ResearcherMetrics(
        researcher=spec.ref,
        period=period,
        matched_papers=matched,
        cited_papers=cited,
        citations=citations,
        citations_per_paper=citations.ratio(cited),
        h_index=MetricPair(h_index(c.all for c in counts), h_index(c.nonself for c in counts)),
        per_paper_citations=per_paper,
        citation_edges=frozenset(edges),
        nonself_edges=frozenset(nonself_edges),
    )
