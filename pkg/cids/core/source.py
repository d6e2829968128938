"""
    core/source.py

    CorpusSource: an AbstractSource over a Corpus
    loaded from local files.
"""

from cids.abstract.source import AbstractSource


class CorpusSource(AbstractSource):
    """
    Answers queries from an in-memory Corpus.
    """

    def __init__(self, corpus):
        self.corpus = corpus

    def _search_logic(self, query):
        return (p for p in self.corpus.papers.values() if query.matches(p))

    def citations_to(self, paper_id):
        return self.corpus.citations_to(paper_id)
