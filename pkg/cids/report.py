"""
    report.py

    Output documents:
    * researcher reports (TSV, HTML, BibTeX): a metric table with
      all / non-self columns and a per-paper citation table;
    * unit reports (TSV, HTML): one section per figure category;
    * figure CSVs: one plot-ready table per figure family.

    Every emitter returns bytes and is a pure function of its
    inputs: LF newlines, integers printed bare, other numbers
    rounded half-even to a fixed number of decimals.
"""

from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_EVEN
from html import escape
import csv
import io

import bibtexparser
from bibtexparser.model import Entry, Field

from cids.errors import CorpusFormatError, EmptyInputError, UnknownReferenceError
from cids.metrics import MetricPair

DECIMALS = 4

RESEARCHER_FORMATS = ("tsv", "html", "bibtex")
UNIT_FORMATS = ("tsv", "html")

METRIC_ROWS = (
    ("cited_papers", "Cited papers"),
    ("citations", "Total citations"),
    ("citations_per_paper", "Citations per paper"),
    ("h_index", "h-index"),
)


def format_number(value, decimals=DECIMALS) -> str:
    """
    Integers bare; other numbers with `decimals` places,
    rounded half-even. None renders empty.
    """
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    quantum = Decimal(1).scaleb(-decimals)
    return str(Decimal(value).quantize(quantum, rounding=ROUND_HALF_EVEN))

def _tsv(rows) -> str:
    return "".join("\t".join(str(c) for c in row) + "\n" for row in rows)

def _check_format(fmt, allowed):
    if fmt not in allowed:
        raise UnknownReferenceError(f"Unsupported report format '{fmt}' (expected one of {', '.join(allowed)})")


#########################################
# Researcher reports
#########################################
def emit_researcher_report(m, fmt, corpus, decimals=DECIMALS) -> bytes:
    """
    Render ResearcherMetrics `m` as "tsv", "html" or "bibtex".
    """
    _check_format(fmt, RESEARCHER_FORMATS)
    if fmt == "tsv":
        return _researcher_tsv(m, corpus, decimals).encode("utf-8")
    if fmt == "html":
        return _researcher_html(m, corpus, decimals).encode("utf-8")
    return _researcher_bibtex(m, corpus).encode("utf-8")

def _researcher_tsv(m, corpus, decimals):
    num = lambda x: format_number(x, decimals)
    rows = [("researcher", m.researcher), ("period", m.period), (),
            ("metric", "all", "nonself")]
    for attr, _ in METRIC_ROWS:
        pair = getattr(m, attr)
        rows.append((attr, num(pair.all), num(pair.nonself)))
    rows.append(())
    rows.append(("paper", "year", "title", "citations", "self_citations", "nonself_citations"))
    for pid in m.matched_papers:
        c = m.per_paper_citations[pid]
        p = corpus.paper(pid)
        rows.append((pid, p.year, p.title, num(c.all), num(c.self_count), num(c.nonself)))
    return _tsv(rows)

def parse_researcher_tsv(data) -> dict:
    """
    Recover the metric table of a researcher TSV report:
    metric name -> MetricPair.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    lines = text.split("\n")
    try:
        start = lines.index("metric\tall\tnonself") + 1
    except ValueError:
        raise CorpusFormatError("no metric table in researcher report") from None

    def number(s):
        return float(Decimal(s)) if "." in s else int(s)

    result = {}
    for lineno, line in enumerate(lines[start:], start=start + 1):
        if not line:
            break
        fields = line.split("\t")
        if len(fields) != 3:
            raise CorpusFormatError("metric row needs 3 fields", line=lineno)
        result[fields[0]] = MetricPair(number(fields[1]), number(fields[2]))
    return result

_STYLE = """body { font-family: sans-serif; margin: 2em; }
table { border-collapse: collapse; margin-bottom: 1.5em; }
th, td { border: 1px solid #999; padding: 0.2em 0.6em; }
td.num { text-align: right; }"""

def _html_document(title, body):
    return (
        "<!DOCTYPE html>\n"
        '<html lang="en">\n<head>\n<meta charset="utf-8">\n'
        f"<title>{escape(title)}</title>\n<style>\n{_STYLE}\n</style>\n</head>\n<body>\n"
        f"<h1>{escape(title)}</h1>\n{body}</body>\n</html>\n"
    )

def _html_table(header, rows, numeric_from=1):
    out = ["<table>\n<thead><tr>", *(f"<th>{escape(h)}</th>" for h in header), "</tr></thead>\n<tbody>\n"]
    for row in rows:
        out.append("<tr>")
        for i, cell in enumerate(row):
            cls = ' class="num"' if i >= numeric_from else ""
            out.append(f"<td{cls}>{cell}</td>")
        out.append("</tr>\n")
    out.append("</tbody>\n</table>\n")
    return "".join(out)

def _researcher_html(m, corpus, decimals):
    num = lambda x: escape(format_number(x, decimals))
    metric_rows = [(escape(label), num(getattr(m, attr).all), num(getattr(m, attr).nonself))
                   for attr, label in METRIC_ROWS]
    body = _html_table(("Metric", "All citations", "Without self-citations"), metric_rows)

    paper_rows = []
    lists = []
    for i, pid in enumerate(m.matched_papers):
        c = m.per_paper_citations[pid]
        p = corpus.paper(pid)
        anchor = f"paper{i}"
        paper_rows.append((escape(p.title), p.year,
                           f'<a href="#{anchor}-all">{num(c.all)}</a>',
                           f'<a href="#{anchor}-self">{num(c.self_count)}</a>',
                           f'<a href="#{anchor}-nonself">{num(c.nonself)}</a>'))

        cites = corpus.citations_to(pid)
        kinds = (("all", "Citations", cites),
                 ("self", "Self-citations", [e for e in cites if e not in m.nonself_edges]),
                 ("nonself", "Non-self-citations", [e for e in cites if e in m.nonself_edges]))
        for kind, label, edges in kinds:
            items = "".join(f"<li>{escape(corpus.paper(e.citing).title)} "
                            f"({corpus.paper(e.citing).year})</li>\n" for e in edges)
            lists.append(f'<h3 id="{anchor}-{kind}">{label} of {escape(p.title)}</h3>\n<ul>\n{items}</ul>\n')

    body += _html_table(("Paper", "Year", "Citations", "Self-citations", "Non-self-citations"), paper_rows)
    if lists:
        body += "<h2>Citation lists</h2>\n" + "".join(lists)
    return _html_document(f"Citation analysis of {m.researcher} ({m.period})", body)

def _bibtex_escape(s: str):
    for char in "\\{}&%$#_":
        s = s.replace(char, f"\\{char}")
    return s

def _researcher_bibtex(m, corpus):
    library = bibtexparser.Library()
    for pid in m.matched_papers:
        p = corpus.paper(pid)
        authors = " and ".join(f"{a.family}, {' '.join(a.given)}" if a.given else a.family
                               for a in p.authors)
        fields = [Field("title", f"{{{_bibtex_escape(p.title)}}}"),
                  Field("author", f"{{{_bibtex_escape(authors)}}}"),
                  Field("year", f"{{{p.year}}}")]
        if p.venue:
            fields.append(Field("journal", f"{{{_bibtex_escape(p.venue)}}}"))
        library.add(Entry("article" if p.venue else "misc", f"{m.researcher}:{pid}", fields))
    return bibtexparser.write_string(library)


#########################################
# Unit reports
#########################################
def _unit_rows(a):
    """
    (section, figure, period, all, nonself) rows of a UnitAnalysis.
    """
    rcp, ep, unit = a.rcp, a.ep, a.unit

    def pair(section, figure, metrics, value):
        return (section, figure, metrics.period, value.all, value.nonself)

    def single(section, figure, metrics, value):
        return (section, figure, metrics.period, value, None)

    wr, pi = "weight-and-relevance", "production-and-impact"
    ewr, epi = "efficiency-weight-and-relevance", "efficiency-production-and-impact"
    return [
        single(wr, "int_phd", rcp, rcp.n_int_phd),
        pair(wr, "unique_cited_papers", rcp, rcp.unique_cited_papers),
        pair(wr, "unique_citations", rcp, rcp.unique_citations),
        pair(pi, "unique_cited_papers", ep, ep.unique_cited_papers),
        pair(pi, "unique_citations", ep, ep.unique_citations),
        single(pi, "projects_national", ep, unit.projects_national),
        single(pi, "projects_international", ep, unit.projects_international),
        single(pi, "projects_total", ep, ep.projects_total),
        single(pi, "phd_theses", ep, ep.theses),
        pair(ewr, "cited_papers_per_phd", rcp, rcp.per_capita_papers),
        pair(ewr, "citations_per_phd", rcp, rcp.per_capita_citations),
        pair(ewr, "avg_cited_papers", rcp, rcp.avg_cited_papers),
        pair(ewr, "avg_citations", rcp, rcp.avg_citations),
        pair(ewr, "avg_h_index", rcp, rcp.avg_h_index),
        pair(epi, "cited_papers_per_phd", ep, ep.per_capita_papers),
        pair(epi, "citations_per_phd", ep, ep.per_capita_citations),
        pair(epi, "avg_cited_papers", ep, ep.avg_cited_papers),
        pair(epi, "avg_citations", ep, ep.avg_citations),
        pair(epi, "avg_h_index", ep, ep.avg_h_index),
        single(epi, "projects_per_phd_scaled", ep, ep.projects_per_capita_scaled),
        single(epi, "theses_per_phd_scaled", ep, ep.theses_per_capita_scaled),
    ]

# distribution key -> (section, metric, which period)
_DISTRIBUTIONS = (
    ("papers-rcp", "balance-relevance", "cited_papers", "rcp"),
    ("citations-rcp", "balance-relevance", "nonself_citations", "rcp"),
    ("h-index-rcp", "balance-relevance", "nonself_h_index", "rcp"),
    ("papers-ep", "balance-impact", "cited_papers", "ep"),
    ("citations-ep", "balance-impact", "nonself_citations", "ep"),
)

def _distribution_rows(a):
    rows = []
    for key, section, metric, period in _DISTRIBUTIONS:
        dist = a.distributions[key]
        for label, pct in zip(dist.spec.labels(), dist.percentages):
            rows.append((section, metric, getattr(a, period).period, label, pct))
    return rows

def emit_unit_report(analysis, fmt, decimals=DECIMALS) -> bytes:
    """
    Render a UnitAnalysis as "tsv" or "html".
    """
    a = analysis
    _check_format(fmt, UNIT_FORMATS)
    num = lambda x: format_number(x, decimals)
    header = [("unit", a.name)]
    if a.unit.grade is not None:
        header.append(("grade", a.unit.grade.value))
    header += [("ep", a.ep.period), ("rcp", a.rcp.period), ("scale", num(a.scale))]
    figures = [(s, f, p, num(v_all), num(v_ns)) for s, f, p, v_all, v_ns in _unit_rows(a)]
    dists = [(s, m, p, label, num(pct)) for s, m, p, label, pct in _distribution_rows(a)]

    if fmt == "tsv":
        return _tsv([*header, (),
                     ("section", "figure", "period", "all", "nonself"), *figures, (),
                     ("section", "distribution", "period", "bucket", "percent"), *dists]).encode("utf-8")

    body = _html_table(("Field", "Value"), [(escape(k), escape(str(v))) for k, v in header])
    for section in dict.fromkeys(row[0] for row in figures):
        rows = [(escape(f), escape(str(p)), escape(v_all), escape(v_ns))
                for s, f, p, v_all, v_ns in figures if s == section]
        body += f"<h2>{escape(section)}</h2>\n"
        body += _html_table(("Figure", "Period", "All citations", "Without self-citations"), rows, numeric_from=2)
    for section in dict.fromkeys(row[0] for row in dists):
        rows = [(escape(m), escape(str(p)), escape(label), escape(pct))
                for s, m, p, label, pct in dists if s == section]
        body += f"<h2>{escape(section)}</h2>\n"
        body += _html_table(("Distribution", "Period", "Bucket", "% of Int-PhD"), rows, numeric_from=3)
    return _html_document(f"Unit report: {a.name}", body).encode("utf-8")


#########################################
# Figure CSVs
#########################################
@dataclass(frozen=True)
class FigureSpec:
    """
    `columns(analyses)` gives the value column names;
    `values(analysis)` gives one unit's row values.
    """
    name: str
    columns: object
    values: object


def _pair_figure(name, get):
    return FigureSpec(name, lambda _: ["all", "nonself"], lambda a: [get(a).all, get(a).nonself])

def _single_figure(name, column, get):
    return FigureSpec(name, lambda _: [column], lambda a: [get(a)])

def _distribution_figure(name, key):
    return FigureSpec(name, lambda analyses: analyses[0].distributions[key].spec.labels(),
                      lambda a: list(a.distributions[key].percentages))

FIGURES = {f.name: f for f in (
    _single_figure("int-phd", "int_phd", lambda a: a.rcp.n_int_phd),
    _pair_figure("unique-cited-papers-rcp", lambda a: a.rcp.unique_cited_papers),
    _pair_figure("unique-citations-rcp", lambda a: a.rcp.unique_citations),
    _pair_figure("unique-cited-papers-ep", lambda a: a.ep.unique_cited_papers),
    _pair_figure("unique-citations-ep", lambda a: a.ep.unique_citations),
    FigureSpec("projects-ep", lambda _: ["national", "international", "total"],
               lambda a: [a.unit.projects_national, a.unit.projects_international, a.unit.projects_total]),
    _single_figure("theses-ep", "theses", lambda a: a.ep.theses),
    _pair_figure("unique-cited-papers-per-phd-rcp", lambda a: a.rcp.per_capita_papers),
    _pair_figure("unique-citations-per-phd-rcp", lambda a: a.rcp.per_capita_citations),
    _pair_figure("avg-h-index-rcp", lambda a: a.rcp.avg_h_index),
    _pair_figure("unique-cited-papers-per-phd-ep", lambda a: a.ep.per_capita_papers),
    _pair_figure("unique-citations-per-phd-ep", lambda a: a.ep.per_capita_citations),
    _single_figure("projects-per-phd-ep", "projects_per_phd", lambda a: a.ep.projects_per_capita_scaled),
    _single_figure("theses-per-phd-ep", "theses_per_phd", lambda a: a.ep.theses_per_capita_scaled),
    _distribution_figure("distribution-papers-rcp", "papers-rcp"),
    _distribution_figure("distribution-citations-rcp", "citations-rcp"),
    _distribution_figure("distribution-h-index-rcp", "h-index-rcp"),
    _distribution_figure("distribution-papers-ep", "papers-ep"),
    _distribution_figure("distribution-citations-ep", "citations-ep"),
)}

def emit_figure_csv(units, figure, decimals=DECIMALS) -> bytes:
    """
    Plot-ready CSV of one figure family: a header line,
    then one row per unit ordered by unit name.
    """
    if figure not in FIGURES:
        raise UnknownReferenceError(f"Unknown figure '{figure}'")
    units = sorted(units, key=lambda a: a.name)
    if not units:
        raise EmptyInputError(f"No units to plot in figure '{figure}'")
    spec = FIGURES[figure]

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["unit", *spec.columns(units)])
    for a in units:
        writer.writerow([a.name, *(format_number(v, decimals) for v in spec.values(a))])
    return buffer.getvalue().encode("utf-8")
