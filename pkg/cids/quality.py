"""
    quality.py

    Data-quality audits:
    * equal-title duplicate pairs among corpus entries, and
    * precision/recall of a returned list against a manually
      curated one (papers or citation edges).
"""

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
import logging

from cids.corpus import CitationEdge, read_records
from cids.errors import CorpusFormatError, EmptyInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DuplicateAudit:
    pairs: tuple
    n_entries: int

    @property
    def rate(self) -> float:
        return len(self.pairs) / self.n_entries if self.n_entries else 0.0


@dataclass(frozen=True)
class CrosscheckResult:
    returned: int
    correct: int
    curated: int
    precision: float
    recall: float
    # precision was set by convention: nothing was returned
    empty_returned: bool = False


def find_duplicates(corpus, paper_ids=None) -> DuplicateAudit:
    """
    Every unordered pair of distinct entries whose normalized
    titles are equal. `paper_ids` restricts the audit to a subset.
    """
    ids = sorted(corpus.papers if paper_ids is None else set(paper_ids))
    by_title = defaultdict(list)
    for pid in ids:
        by_title[corpus.paper(pid).normalized_title].append(pid)
    pairs = sorted(pair for group in by_title.values() for pair in combinations(group, 2))
    return DuplicateAudit(tuple(pairs), len(ids))

def crosscheck(returned, curated) -> CrosscheckResult:
    """
    Precision and recall of `returned` against `curated`.
    """
    returned, curated = set(returned), set(curated)
    if not curated:
        raise EmptyInputError("The curated list is empty")
    correct = len(returned & curated)
    if not returned:
        logger.warning("Crosscheck of an empty returned list; precision set to 1.0 by convention")
    return CrosscheckResult(
        returned=len(returned),
        correct=correct,
        curated=len(curated),
        precision=correct / len(returned) if returned else 1.0,
        recall=correct / len(curated),
        empty_returned=not returned,
    )

def crosscheck_citations(returned_edges, curated_edges) -> CrosscheckResult:
    """
    `crosscheck` over citation edges, given as CitationEdges
    or (citing, cited) pairs.
    """
    def as_edge(e):
        return e if isinstance(e, CitationEdge) else CitationEdge(*e)
    return crosscheck({as_edge(e) for e in returned_edges},
                      {as_edge(e) for e in curated_edges})

def load_curated(path):
    """
    Read a curated list: one paper id, or `citing <tab> cited`,
    per line. Returns (paper id set, edge set).
    """
    papers, edges = set(), set()
    for lineno, fields in read_records(path):
        fields = [f.strip() for f in fields]
        if len(fields) == 1 and fields[0]:
            papers.add(fields[0])
        elif len(fields) == 2 and all(fields):
            edges.add(CitationEdge(*fields))
        else:
            raise CorpusFormatError("expected a paper id or 'citing<TAB>cited'", path, lineno)
    return papers, edges
