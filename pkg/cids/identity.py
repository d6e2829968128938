"""
    identity.py

    Who wrote what.

    Two related concerns live here:
    * author identity -- when do two name strings denote
      the same person (used to classify self-citations), and
    * researcher queries -- a small query language, modeled on
      Scholar's advanced search operators, that selects a
      researcher's papers from a corpus.

    Query language:

        author:"fm couto" ("lisbon" OR "lisboa") -author:lf-couto

    * exactly one `author:` clause. Quoted with several words, the
      first word is the initials and the rest the family name;
      a single word is a family name. Unquoted, `initials-family`.
    * zero or more parenthesized OR-groups of terms. A term outside
      parentheses is a group of its own. Every group must have a
      term present in the paper's title, venue or affiliation terms.
    * zero or more `-author:` exclusions, same forms as `author:`.
"""

from dataclasses import dataclass, field
import logging
import re

from cids.corpus import PersonName, fold, read_records
from cids.core.source import CorpusSource
from cids.errors import CorpusFormatError, IntegrityError, QueryParseError, UnknownReferenceError

logger = logging.getLogger(__name__)

UNKNOWN_INITIAL = "?"


#########################################
# Author identity
#########################################
@dataclass(frozen=True)
class AuthorKey:
    family_norm: str
    first_initial: str


def normalize_name(name: PersonName) -> AuthorKey:
    """
    Identity key of an author name: folded family name
    plus the first letter of the first given name.
    """
    initial = fold(name.given[0])[:1] if name.given else ""
    return AuthorKey(fold(name.family), initial or UNKNOWN_INITIAL)

def same_author(a: PersonName, b: PersonName) -> bool:
    return normalize_name(a) == normalize_name(b)

def _fold_initials(text: str) -> str:
    return "".join(c for c in fold(text) if c.isalpha())


@dataclass(frozen=True)
class AuthorPattern:
    """
    `family` is folded; `initials` is a folded run of letters,
    possibly empty (then any author of that family matches).
    """
    family: str
    initials: str = ""

    def matches(self, name: PersonName, strict_initials=False) -> bool:
        key = normalize_name(name)
        if key.family_norm != self.family:
            return False
        if not self.initials:
            return True
        if strict_initials:
            return _fold_initials(name.initials()).startswith(self.initials)
        return key.first_initial == self.initials[0]

    def to_text(self) -> str:
        if self.initials and not re.search(r"[\s\-]", self.family):
            return f"{self.initials}-{self.family}"
        words = f"{self.initials} {self.family}" if self.initials else self.family
        return f'"{words}"'


#########################################
# Queries
#########################################
@dataclass(frozen=True)
class QueryExpr:
    author_pattern: AuthorPattern
    include_groups: tuple = ()
    exclude_authors: tuple = ()
    strict_initials: bool = field(default=False, compare=False)

    def matches(self, paper) -> bool:
        """
        A paper matches iff one of its authors matches the author
        pattern, every include group has a term present, and none
        of its authors matches an exclusion.
        """
        strict = self.strict_initials
        if not any(self.author_pattern.matches(a, strict) for a in paper.authors):
            return False
        if self.include_groups:
            haystack = [fold(paper.title), fold(paper.venue or "")]
            haystack.extend(fold(t) for t in paper.affiliation_terms)
            for group in self.include_groups:
                if not any(term in text for term in group for text in haystack):
                    return False
        for pattern in self.exclude_authors:
            if any(pattern.matches(a, strict) for a in paper.authors):
                return False
        return True

    def to_text(self) -> str:
        parts = [f"author:{self.author_pattern.to_text()}"]
        for group in self.include_groups:
            parts.append("(" + " OR ".join(f'"{t}"' for t in group) + ")")
        parts.extend(f"-author:{p.to_text()}" for p in self.exclude_authors)
        return " ".join(parts)

    def __str__(self):
        return self.to_text()


_TOKEN = re.compile(r'''
    (?P<space>\s+)
  | (?P<exclude>-author:(?:"(?P<exclude_q>[^"]*)"|(?P<exclude_b>[^\s()"]+)))
  | (?P<author>author:(?:"(?P<author_q>[^"]*)"|(?P<author_b>[^\s()"]+)))
  | (?P<open>\()
  | (?P<close>\))
  | (?P<or>OR(?=[\s()"]|$))
  | "(?P<quoted>[^"]*)"
  | (?P<bare>[^\s()"]+)
''', re.VERBOSE)

def _tokenize(text):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise QueryParseError(f"cannot parse query at {text[pos:]!r} (unterminated quote?)")
        pos = m.end()
        if m.lastgroup != "space":
            yield m

def _pattern(quoted, bare, text):
    if quoted is not None:
        words = quoted.split()
        initials, family = (words[0], " ".join(words[1:])) if len(words) > 1 else ("", " ".join(words))
    else:
        initials, family = bare.split("-", 1) if "-" in bare else ("", bare)
    family = fold(family)
    if not family:
        raise QueryParseError(f"author clause without a family name in {text!r}")
    return AuthorPattern(family, _fold_initials(initials))

def parse_query(text: str, strict_initials=False) -> QueryExpr:
    """
    Parse the query mini-language (see module docstring).
    """
    author = None
    groups = []
    excludes = []
    group = None
    for m in _tokenize(text):
        kind = m.lastgroup if m.lastgroup in ("open", "close", "or", "quoted", "bare") else None
        if m.group("author") is not None:
            if group is not None:
                raise QueryParseError(f"author clause inside a term group in {text!r}")
            if author is not None:
                raise QueryParseError(f"more than one author clause in {text!r}")
            author = _pattern(m.group("author_q"), m.group("author_b"), text)
        elif m.group("exclude") is not None:
            if group is not None:
                raise QueryParseError(f"author exclusion inside a term group in {text!r}")
            excludes.append(_pattern(m.group("exclude_q"), m.group("exclude_b"), text))
        elif kind == "open":
            if group is not None:
                raise QueryParseError(f"nested parentheses in {text!r}")
            group = []
        elif kind == "close":
            if not group:
                raise QueryParseError(f"empty or unopened term group in {text!r}")
            groups.append(tuple(group))
            group = None
        elif kind == "or":
            if group is None:
                raise QueryParseError(f"OR outside a term group in {text!r}")
        else:
            term = fold(m.group("quoted") if kind == "quoted" else m.group("bare"))
            if not term:
                raise QueryParseError(f"empty term in {text!r}")
            if group is None:
                groups.append((term,))
            else:
                group.append(term)
    if group is not None:
        raise QueryParseError(f"unclosed term group in {text!r}")
    if author is None:
        raise QueryParseError(f"query has no author clause: {text!r}")
    return QueryExpr(author, tuple(groups), tuple(excludes), strict_initials)


#########################################
# Researchers
#########################################
@dataclass(frozen=True)
class ResearcherSpec:
    ref: str
    display_name: PersonName
    query: QueryExpr
    result_cap: int | None = None

    def __post_init__(self):
        if self.result_cap is not None and self.result_cap < 1:
            raise ValueError(f"result_cap must be positive, got {self.result_cap}")


def load_registry(path, strict_initials=False) -> dict:
    """
    Read a researcher registry file:

        R   ref   Family,Given...   query   [result_cap]

    Returns ref -> ResearcherSpec, ordered by ref.
    """
    registry = {}
    for lineno, fields in read_records(path):
        if fields[0] != "R":
            raise CorpusFormatError(f"unknown record kind {fields[0]!r}", path, lineno)
        if not 4 <= len(fields) <= 5:
            raise CorpusFormatError(f"researcher record needs 4 or 5 fields, got {len(fields)}", path, lineno)
        ref = fields[1].strip()
        if not ref:
            raise CorpusFormatError("researcher record has an empty ref", path, lineno)
        if ref in registry:
            raise IntegrityError(f"{path}:{lineno}: duplicate researcher ref '{ref}'")
        try:
            name = PersonName.parse(fields[2])
            query = parse_query(fields[3], strict_initials=strict_initials)
            cap = int(fields[4]) if len(fields) == 5 and fields[4].strip() else None
            registry[ref] = ResearcherSpec(ref, name, query, cap)
        except QueryParseError as e:
            raise QueryParseError(e.reason, path, lineno) from None
        except ValueError as e:
            raise CorpusFormatError(str(e), path, lineno) from None
    logger.info("Read %d researchers from %s", len(registry), path)
    return dict(sorted(registry.items()))

def resolve_researcher(registry, ref) -> ResearcherSpec:
    try:
        return registry[ref]
    except KeyError:
        raise UnknownReferenceError(f"unknown researcher ref '{ref}'") from None

def match_papers(spec: ResearcherSpec, corpus) -> list:
    """
    Ids of the papers selected by the researcher's query,
    most cited first, truncated to `result_cap`.
    """
    return [p.id for p in CorpusSource(corpus).search(spec.query, spec.result_cap)]
