"""
    abstract/source.py

    Definition of AbstractSource, the boundary between the
    analysis and wherever bibliographic records come from.

    A Source answers two questions:
    * which papers match a researcher's query, and
    * which citations point at a given paper.

    See `core/source.py` for the file-backed implementation.
"""

from abc import ABC, abstractmethod


class AbstractSource(ABC):
    """
    A bibliographic repository that can be searched
    with a researcher query.
    """

    def search(self, query, limit=None) -> list:
        """
        Return the papers matching `query`, most cited first
        (ties broken by paper id), truncated to `limit` entries
        when a limit is given.
        """
        if limit is not None and limit < 1:
            raise ValueError(f"Result limit must be positive, got {limit}")
        hits = sorted(self._search_logic(query),
                      key=lambda p: (-len(self.citations_to(p.id)), p.id))
        return hits if limit is None else hits[:limit]

    @abstractmethod
    def _search_logic(self, query):
        """
        Yield every paper matching `query`, in any order.
        """
        raise NotImplementedError("Subclasses of `AbstractSource` must implement `_search_logic()`")

    @abstractmethod
    def citations_to(self, paper_id) -> tuple:
        """
        Return the citation edges whose cited end is `paper_id`.
        """
        raise NotImplementedError("Subclasses of `AbstractSource` must implement `citations_to()`")
