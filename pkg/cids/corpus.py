"""
    corpus.py

    The bibliographic data model (papers, citation edges,
    research units) and the loaders for its line-oriented
    text formats.

    Corpus file, one record per line, tab-separated:

        P   id   year   title   authors   [venue]   [affiliation_terms]
        C   citing_id   cited_id

    `authors` is `Family,Given1 Given2;Family,Given...` and
    `affiliation_terms` is `term|term|...`.

    Unit file:

        U   name   ref;ref;...   projects_national   projects_international   phd_theses   [grade]

    Lines starting with `#` are comments; blank lines are skipped.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
import logging
import re

from unidecode import unidecode

from cids.abstract.helpers import write_atomic
from cids.errors import CorpusFormatError, IntegrityError, UnknownReferenceError

logger = logging.getLogger(__name__)

MIN_YEAR = 1900
MAX_YEAR = 2100

_WHITESPACE = re.compile(r"\s+")
_PUNCTUATION = re.compile(r"[^\w\s]")
_INITIAL_SEPARATORS = re.compile(r"[.\-\s]+")


#########################################
# Normalization
#########################################
def fold(text: str) -> str:
    """
    Transliterate to ASCII, lowercase and collapse whitespace.
    """
    return _WHITESPACE.sub(" ", unidecode(text).lower()).strip()

def normalize_title(title: str) -> str:
    """
    Title identity form: folded, with punctuation removed.
    """
    return _WHITESPACE.sub(" ", _PUNCTUATION.sub("", fold(title))).strip()


#########################################
# Records
#########################################
@dataclass(frozen=True)
class PersonName:
    """
    An author name as found in a source: a family name
    plus an ordered list of given names or initials.
    """
    family: str
    given: tuple = ()
    raw: str = field(default="", compare=False)

    def __post_init__(self):
        if not fold(self.family):
            raise ValueError(f"Empty family name in {self.raw or self.family!r}")
        if any(not g for g in self.given):
            raise ValueError(f"Empty given name in {self.raw or self.family!r}")
        object.__setattr__(self, "given", tuple(self.given))

    @classmethod
    def parse(cls, text: str):
        """
        Parse `Family,Given1 Given2` (the comma part is optional).
        """
        raw = text.strip()
        family, _, given = raw.partition(",")
        return cls(family.strip(), tuple(given.split()), raw=raw)

    def initials(self) -> str:
        """
        First letter of every given name part: `F.M.`, `F M` and
        `Francisco Manuel` all give "FM".
        """
        return "".join(part[0] for g in self.given for part in _INITIAL_SEPARATORS.split(g) if part)

    def __str__(self):
        if self.given:
            return f"{self.family},{' '.join(self.given)}"
        return self.family


@dataclass(frozen=True)
class PaperRecord:
    id: str
    title: str
    year: int
    authors: tuple
    venue: str | None = None
    affiliation_terms: tuple = ()

    @property
    def normalized_title(self) -> str:
        return normalize_title(self.title)


@dataclass(frozen=True, order=True)
class CitationEdge:
    citing: str
    cited: str

    def __str__(self):
        return f"{self.citing} -> {self.cited}"


@dataclass(frozen=True, order=True)
class YearRange:
    """
    An inclusive range of publication years.
    """
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"Invalid year range {self.start}:{self.end} (start after end)")

    @classmethod
    def parse(cls, text: str):
        """
        Parse `Y1:Y2`.
        """
        start, sep, end = str(text).partition(":")
        try:
            start, end = int(start), int(end)
        except ValueError:
            sep = ""
        if not sep:
            raise ValueError(f"Year range must look like 2003:2006, got {text!r}")
        return cls(start, end)

    def __contains__(self, year):
        return self.start <= year <= self.end

    def contains(self, other) -> bool:
        return self.start <= other.start and other.end <= self.end

    def __len__(self):
        return self.end - self.start + 1

    def __str__(self):
        return f"{self.start}:{self.end}"


class Grade(Enum):
    EX = "EX"
    VG = "VG"
    GD = "GD"
    UNPUBLISHED = "unpublished"


@dataclass(frozen=True)
class UnitRecord:
    """
    A research unit. `int_phd` holds the resolved
    ResearcherSpecs of its integrated PhD researchers.
    """
    name: str
    int_phd: tuple
    projects_national: int = 0
    projects_international: int = 0
    phd_theses: int = 0
    grade: Grade | None = None

    @property
    def projects_total(self) -> int:
        return self.projects_national + self.projects_international

    @property
    def member_refs(self) -> tuple:
        return tuple(m.ref for m in self.int_phd)


#########################################
# Corpus
#########################################
class Corpus:
    """
    Papers keyed by id plus the citation edges between them.

    A Corpus is never modified after construction; iteration
    over `papers` and `edges` is ordered by id. Semantic
    invariants (referential integrity, no self-loops, no
    duplicate edges) are *not* enforced here: see `validate()`.
    """

    def __init__(self, papers=(), edges=()):
        table = {}
        for paper in papers:
            if paper.id in table:
                raise IntegrityError(f"Duplicate paper id '{paper.id}'")
            table[paper.id] = paper
        self.papers = dict(sorted(table.items()))
        self.edges = tuple(sorted(edges))

        cited_by = defaultdict(list)
        for edge in self.edges:
            cited_by[edge.cited].append(edge)
        self._cited_by = {k: tuple(v) for k, v in cited_by.items()}

    def paper(self, paper_id):
        try:
            return self.papers[paper_id]
        except KeyError:
            raise UnknownReferenceError(f"Unknown paper id '{paper_id}'") from None

    def citations_to(self, paper_id) -> tuple:
        return self._cited_by.get(paper_id, ())

    def citation_count(self, paper_id) -> int:
        return len(self.citations_to(paper_id))

    def __len__(self):
        return len(self.papers)

    def __contains__(self, paper_id):
        return paper_id in self.papers

    def __repr__(self):
        return f"Corpus(papers={len(self.papers)}, edges={len(self.edges)})"


#########################################
# Validation
#########################################
@dataclass(frozen=True)
class Finding:
    kind: str
    subject: str
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


class ValidationReport:
    """
    Every invariant violation found in a Corpus.
    Empty (falsy) iff the corpus is valid.
    """

    def __init__(self, findings=()):
        self.findings = tuple(findings)

    def of_kind(self, kind):
        return [f for f in self.findings if f.kind == kind]

    def __iter__(self):
        return iter(self.findings)

    def __len__(self):
        return len(self.findings)

    def __bool__(self):
        return bool(self.findings)

    def __str__(self):
        return "\n".join(str(f) for f in self.findings)


def validate(corpus: Corpus) -> ValidationReport:
    """
    List all invariant violations of `corpus`. Never raises
    for bad data and never modifies the corpus.
    """
    findings = []
    for paper in corpus.papers.values():
        if not paper.title.strip():
            findings.append(Finding("empty-title", paper.id, f"paper '{paper.id}' has an empty title"))
        if not paper.authors:
            findings.append(Finding("empty-authors", paper.id, f"paper '{paper.id}' has no authors"))
        if not MIN_YEAR <= paper.year <= MAX_YEAR:
            findings.append(Finding("year-range", paper.id,
                                    f"paper '{paper.id}' year {paper.year} outside [{MIN_YEAR}, {MAX_YEAR}]"))

    previous = None
    for edge in corpus.edges:
        if edge == previous:
            findings.append(Finding("duplicate-edge", str(edge), f"duplicate edge {edge}"))
            continue
        previous = edge
        if edge.citing == edge.cited:
            findings.append(Finding("self-loop", str(edge), f"paper '{edge.cited}' cites itself"))
        missing = [pid for pid in (edge.citing, edge.cited) if pid not in corpus]
        if missing:
            names = ", ".join(f"'{pid}'" for pid in missing)
            findings.append(Finding("referential", str(edge),
                                    f"edge {edge} references unknown paper id {names}"))
    return ValidationReport(findings)


#########################################
# Reading and writing
#########################################
def read_records(path):
    """
    Yield (line number, fields) for each non-comment line.
    """
    with open(path, "rb") as f:
        for lineno, raw in enumerate(f, start=1):
            try:
                line = raw.decode("utf-8").rstrip("\r\n")
            except UnicodeDecodeError as e:
                raise CorpusFormatError(f"invalid UTF-8 at byte {e.start}", path, lineno) from None
            if not line.strip() or line.startswith("#"):
                continue
            yield lineno, line.split("\t")

def _parse_int(text, what, path, lineno):
    try:
        return int(text)
    except ValueError:
        raise CorpusFormatError(f"{what} must be an integer, got {text!r}", path, lineno) from None

def _parse_paper(fields, path, lineno) -> PaperRecord:
    if not 5 <= len(fields) <= 7:
        raise CorpusFormatError(f"paper record needs 5 to 7 fields, got {len(fields)}", path, lineno)
    paper_id = fields[1].strip()
    if not paper_id:
        raise CorpusFormatError("paper record has an empty id", path, lineno)
    year = _parse_int(fields[2], "year", path, lineno)
    try:
        authors = tuple(PersonName.parse(a) for a in fields[4].split(";") if a.strip())
    except ValueError as e:
        raise CorpusFormatError(str(e), path, lineno) from None
    venue = fields[5] if len(fields) > 5 and fields[5] else None
    terms = tuple(t for t in fields[6].split("|") if t) if len(fields) > 6 else ()
    return PaperRecord(paper_id, fields[3], year, authors, venue, terms)

def read_corpus(path) -> Corpus:
    """
    Parse a corpus file without enforcing cross-record invariants.
    Malformed lines and duplicate paper ids are errors; everything
    `validate()` can report is kept.
    """
    papers = {}
    positions = {}
    edges = []
    for lineno, fields in read_records(path):
        kind = fields[0]
        if kind == "P":
            paper = _parse_paper(fields, path, lineno)
            if paper.id in papers:
                raise CorpusFormatError(
                    f"duplicate paper id '{paper.id}' (first defined at line {positions[paper.id]})",
                    path, lineno)
            papers[paper.id] = paper
            positions[paper.id] = lineno
        elif kind == "C":
            if len(fields) != 3:
                raise CorpusFormatError(f"citation record needs 3 fields, got {len(fields)}", path, lineno)
            edges.append(CitationEdge(fields[1].strip(), fields[2].strip()))
        else:
            raise CorpusFormatError(f"unknown record kind {kind!r}", path, lineno)
    corpus = Corpus(papers.values(), edges)
    logger.info("Read %d papers and %d citations from %s", len(corpus.papers), len(corpus.edges), path)
    return corpus

def load_corpus(path) -> Corpus:
    """
    Read and validate a corpus file. Raises IntegrityError
    listing every violation if the corpus is not valid.
    """
    corpus = read_corpus(path)
    report = validate(corpus)
    if report:
        raise IntegrityError(f"{path}: corpus has {len(report)} integrity violation(s):\n{report}")
    return corpus

def dump_corpus(corpus: Corpus) -> str:
    """
    Render `corpus` in the canonical file format.
    """
    lines = []
    for p in corpus.papers.values():
        authors = ";".join(str(a) for a in p.authors)
        lines.append("\t".join(["P", p.id, str(p.year), p.title, authors,
                                p.venue or "", "|".join(p.affiliation_terms)]))
    for e in corpus.edges:
        lines.append(f"C\t{e.citing}\t{e.cited}")
    return "".join(f"{line}\n" for line in lines)

def save_corpus(corpus: Corpus, path):
    write_atomic(path, dump_corpus(corpus).encode("utf-8"))


#########################################
# Units
#########################################
def load_units(path, registry) -> list:
    """
    Read a unit file, resolving each roster reference
    against `registry` (ref -> ResearcherSpec).
    Units are returned ordered by name.
    """
    units = {}
    for lineno, fields in read_records(path):
        if fields[0] != "U":
            raise CorpusFormatError(f"unknown record kind {fields[0]!r}", path, lineno)
        if not 6 <= len(fields) <= 7:
            raise CorpusFormatError(f"unit record needs 6 or 7 fields, got {len(fields)}", path, lineno)
        name = fields[1].strip()
        if name in units:
            raise IntegrityError(f"{path}:{lineno}: duplicate unit '{name}'")

        refs = [r.strip() for r in fields[2].split(";") if r.strip()]
        if not refs:
            raise IntegrityError(f"{path}:{lineno}: unit '{name}' has an empty Int-PhD roster")
        duplicated = sorted({r for r in refs if refs.count(r) > 1})
        if duplicated:
            raise IntegrityError(f"{path}:{lineno}: unit '{name}' lists {', '.join(duplicated)} more than once")
        unknown = [r for r in refs if r not in registry]
        if unknown:
            raise UnknownReferenceError(
                f"{path}:{lineno}: unit '{name}' references unknown researcher "
                + ", ".join(f"'{r}'" for r in unknown))

        counts = [_parse_int(fields[i], label, path, lineno) for i, label in
                  ((3, "projects_national"), (4, "projects_international"), (5, "phd_theses"))]
        if any(c < 0 for c in counts):
            raise IntegrityError(f"{path}:{lineno}: unit '{name}' has a negative count")

        grade = None
        if len(fields) == 7 and fields[6].strip():
            try:
                grade = Grade(fields[6].strip())
            except ValueError:
                raise CorpusFormatError(f"unknown grade {fields[6]!r}", path, lineno) from None

        units[name] = UnitRecord(name, tuple(registry[r] for r in refs), *counts, grade=grade)

    logger.info("Read %d units from %s", len(units), path)
    return [units[k] for k in sorted(units)]
