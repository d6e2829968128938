"""
    aggregate.py

    Unit-level figures computed from the metrics of a unit's
    integrated PhD researchers (Int-PhD):

    * unique values -- the union of the members' cited papers and
      citations, so co-authored work is counted once;
    * average values -- the mean of the members' individual metrics;
    * per-capita values -- gross figures divided by the roster size
      (projects and theses additionally divided by `scale`);
    * QNT distributions -- the share of members falling in each
      bucket of a metric.

    Weight/relevance figures use the reference contributing period
    (RCP); production/impact figures use the evaluation period (EP).
"""

from bisect import bisect_left
from dataclasses import dataclass, replace
import logging

from cids.corpus import YearRange
from cids.errors import EmptyInputError
from cids.metrics import MetricPair, compute_researcher_metrics

logger = logging.getLogger(__name__)

DEFAULT_SCALE = 10


#########################################
# Buckets and distributions
#########################################
def _num(x) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


@dataclass(frozen=True)
class BucketSpec:
    """
    k ascending thresholds define k+1 buckets:
    [0, t1], (t1, t2], ..., (tk, inf).
    """
    thresholds: tuple

    def __post_init__(self):
        thresholds = tuple(self.thresholds)
        if not thresholds:
            raise ValueError("A bucket spec needs at least one threshold")
        if any(t < 0 for t in thresholds):
            raise ValueError(f"Bucket thresholds must be non-negative: {list(thresholds)}")
        if any(a >= b for a, b in zip(thresholds, thresholds[1:])):
            raise ValueError(f"Bucket thresholds must be strictly ascending: {list(thresholds)}")
        object.__setattr__(self, "thresholds", thresholds)

    def bucket_of(self, value) -> int:
        return bisect_left(self.thresholds, value)

    def labels(self) -> list:
        t = [_num(x) for x in self.thresholds]
        inner = [f"({a},{b}]" for a, b in zip(t, t[1:])]
        return [f"<={t[0]}", *inner, f">{t[-1]}"]

    def __len__(self):
        return len(self.thresholds) + 1


DEFAULT_BUCKETS = {
    "papers": BucketSpec((50, 100, 150)),
    "citations": BucketSpec((100, 500, 1000)),
    "h_index": BucketSpec((3, 6, 9)),
}


@dataclass(frozen=True)
class Distribution:
    spec: BucketSpec
    percentages: tuple


def qnt_distribution(values, spec: BucketSpec) -> Distribution:
    """
    Percentage of `values` falling in each bucket of `spec`.
    """
    values = list(values)
    if not values:
        raise EmptyInputError("Cannot compute a distribution of zero values")
    counts = [0] * len(spec)
    for v in values:
        counts[spec.bucket_of(v)] += 1
    return Distribution(spec, tuple(100 * c / len(values) for c in counts))


#########################################
# Unit figures
#########################################
@dataclass(frozen=True)
class UniqueSet:
    """
    Sizes (`counts`) and members of the union of a unit's
    papers or citation edges, per kind.
    """
    counts: MetricPair
    all: frozenset
    nonself: frozenset


@dataclass(frozen=True)
class AverageMetrics:
    cited_papers: MetricPair
    citations: MetricPair
    h_index: MetricPair


@dataclass(frozen=True)
class PerCapita:
    papers: MetricPair
    citations: MetricPair
    projects: float | None
    theses: float | None


@dataclass(frozen=True)
class UnitMetrics:
    """
    A unit's figures over one period. Projects and theses are
    evaluation-period facts; they are None for other periods.
    """
    unit: str
    period: YearRange
    n_int_phd: int
    unique_cited_papers: MetricPair
    unique_citations: MetricPair
    avg_cited_papers: MetricPair
    avg_citations: MetricPair
    avg_h_index: MetricPair
    per_capita_papers: MetricPair | None = None
    per_capita_citations: MetricPair | None = None
    projects_total: int | None = None
    projects_per_capita_scaled: float | None = None
    theses: int | None = None
    theses_per_capita_scaled: float | None = None


@dataclass(frozen=True)
class UnitAnalysis:
    """
    Everything reported for one unit.
    """
    unit: object
    rcp: UnitMetrics
    ep: UnitMetrics
    distributions: dict
    scale: float = DEFAULT_SCALE

    @property
    def name(self):
        return self.unit.name


def member_metrics(unit, corpus, period, metrics=None) -> dict:
    """
    ref -> ResearcherMetrics for every member of `unit` over `period`.
    `metrics` may hold precomputed results keyed by (ref, period).
    """
    metrics = {} if metrics is None else metrics
    result = {}
    for spec in unit.int_phd:
        m = metrics.get((spec.ref, period))
        result[spec.ref] = m if m is not None else compute_researcher_metrics(spec, corpus, period)
    return result

def _require_roster(unit):
    if not unit.int_phd:
        raise EmptyInputError(f"Unit '{unit.name}' has an empty Int-PhD roster")

def unique_cited_papers(unit, corpus, period, metrics=None) -> UniqueSet:
    """
    Union of the members' cited papers published in `period`.
    """
    members = member_metrics(unit, corpus, period, metrics).values()
    papers_all = frozenset().union(*(m.cited_ids() for m in members))
    papers_nonself = frozenset().union(*(m.cited_ids(nonself=True) for m in members))
    return UniqueSet(MetricPair(len(papers_all), len(papers_nonself)), papers_all, papers_nonself)

def unique_citations(unit, corpus, period, metrics=None) -> UniqueSet:
    """
    Union of the (citing, cited) edges to the members' papers
    published in `period`.
    """
    members = member_metrics(unit, corpus, period, metrics).values()
    edges_all = frozenset().union(*(m.citation_edges for m in members))
    edges_nonself = frozenset().union(*(m.nonself_edges for m in members))
    return UniqueSet(MetricPair(len(edges_all), len(edges_nonself)), edges_all, edges_nonself)

def average_metrics(unit, corpus, period, metrics=None) -> AverageMetrics:
    """
    Arithmetic mean of the members' individual values.
    """
    _require_roster(unit)
    members = list(member_metrics(unit, corpus, period, metrics).values())
    n = len(members)

    def mean(attr):
        total = MetricPair(0, 0)
        for m in members:
            total = total + getattr(m, attr)
        return total.scaled(n)

    return AverageMetrics(mean("cited_papers"), mean("citations"), mean("h_index"))

def per_capita(unit_metrics: UnitMetrics, projects=None, theses=None, scale=DEFAULT_SCALE) -> PerCapita:
    """
    Papers and citations divided by the roster size; projects
    and theses divided by `scale` times the roster size.
    """
    if scale <= 0:
        raise ValueError(f"scale must be positive, got {scale}")
    n = unit_metrics.n_int_phd
    if n < 1:
        raise EmptyInputError(f"Unit '{unit_metrics.unit}' has an empty Int-PhD roster")
    return PerCapita(
        papers=unit_metrics.unique_cited_papers.scaled(n),
        citations=unit_metrics.unique_citations.scaled(n),
        projects=None if projects is None else projects / (scale * n),
        theses=None if theses is None else theses / (scale * n),
    )

def period_metrics(unit, corpus, period, scale=DEFAULT_SCALE, metrics=None, outputs=False) -> UnitMetrics:
    """
    UnitMetrics of `unit` over `period`. With `outputs`, the unit's
    projects and theses are included (evaluation period only).
    """
    _require_roster(unit)
    papers = unique_cited_papers(unit, corpus, period, metrics)
    citations = unique_citations(unit, corpus, period, metrics)
    averages = average_metrics(unit, corpus, period, metrics)
    gross = UnitMetrics(
        unit=unit.name,
        period=period,
        n_int_phd=len(unit.int_phd),
        unique_cited_papers=papers.counts,
        unique_citations=citations.counts,
        avg_cited_papers=averages.cited_papers,
        avg_citations=averages.citations,
        avg_h_index=averages.h_index,
        projects_total=unit.projects_total if outputs else None,
        theses=unit.phd_theses if outputs else None,
    )
    pc = per_capita(gross, gross.projects_total, gross.theses, scale)
    return replace(gross,
                   per_capita_papers=pc.papers,
                   per_capita_citations=pc.citations,
                   projects_per_capita_scaled=pc.projects,
                   theses_per_capita_scaled=pc.theses)

def compute_unit_metrics(unit, corpus, ep: YearRange, rcp: YearRange,
                         buckets=None, scale=DEFAULT_SCALE, metrics=None) -> UnitAnalysis:
    """
    The full figure set of a unit: gross and per-capita figures
    over the RCP and the EP, plus the five balance distributions
    (papers, nonself citations and nonself h-index over the RCP;
    papers and nonself citations over the EP).
    """
    if not rcp.contains(ep):
        logger.warning("Evaluation period %s is not within the reference period %s", ep, rcp)
    buckets = {**DEFAULT_BUCKETS, **(buckets or {})}

    metrics = {} if metrics is None else dict(metrics)
    for period in (rcp, ep):
        for ref, m in member_metrics(unit, corpus, period, metrics).items():
            metrics[(ref, period)] = m
    rcp_members = [metrics[(ref, rcp)] for ref in unit.member_refs]
    ep_members = [metrics[(ref, ep)] for ref in unit.member_refs]

    distributions = {
        "papers-rcp": qnt_distribution([m.cited_papers.all for m in rcp_members], buckets["papers"]),
        "citations-rcp": qnt_distribution([m.citations.nonself for m in rcp_members], buckets["citations"]),
        "h-index-rcp": qnt_distribution([m.h_index.nonself for m in rcp_members], buckets["h_index"]),
        "papers-ep": qnt_distribution([m.cited_papers.all for m in ep_members], buckets["papers"]),
        "citations-ep": qnt_distribution([m.citations.nonself for m in ep_members], buckets["citations"]),
    }
    return UnitAnalysis(
        unit=unit,
        rcp=period_metrics(unit, corpus, rcp, scale, metrics),
        ep=period_metrics(unit, corpus, ep, scale, metrics, outputs=True),
        distributions=distributions,
        scale=scale,
    )
