
from cids.aggregate import compute_unit_metrics
from cids.corpus import YearRange
from cids.errors import CorpusFormatError, EmptyInputError, UnknownReferenceError
from cids.metrics import MetricPair, compute_researcher_metrics
from cids.report import (FIGURES, emit_figure_csv, emit_researcher_report, emit_unit_report,
                         format_number, parse_researcher_tsv)

from dataclasses import replace
from pathlib import Path
import csv
import io
import pytest

FIXTURES = Path(__file__).parent / "fixtures"
EP = YearRange(2003, 2006)
RCP = YearRange(1999, 2006)


@pytest.fixture
def couto(corpus, registry):
    return compute_researcher_metrics("couto", corpus, EP, registry)

@pytest.fixture
def analyses(corpus, units):
    return [compute_unit_metrics(u, corpus, EP, RCP) for u in units]


###########################################
# Numbers
###########################################
@pytest.mark.parametrize("value,decimals,text", [
    (None, 4, ""),
    (7, 4, "7"),
    (2.5, 4, "2.5000"),
    (5 / 3, 4, "1.6667"),
    (0.125, 2, "0.12"),
    (0.375, 2, "0.38"),
    (2.5, 0, "2"),
    (3.5, 0, "4"),
])
def test_format_number(value, decimals, text):
    assert format_number(value, decimals) == text


###########################################
# Researcher reports
###########################################
def test_researcher_tsv_matches_golden(couto, corpus):
    data = emit_researcher_report(couto, "tsv", corpus)
    assert data == (FIXTURES / "couto-2003-2006.tsv").read_bytes()
    assert b"\r" not in data


def test_researcher_tsv_metric_table_parses_back(couto, corpus):
    table = parse_researcher_tsv(emit_researcher_report(couto, "tsv", corpus))
    assert table == {
        "cited_papers": MetricPair(2, 2),
        "citations": MetricPair(5, 3),
        "citations_per_paper": MetricPair(2.5, 1.5),
        "h_index": MetricPair(2, 1),
    }
    with pytest.raises(CorpusFormatError, match="no metric table"):
        parse_researcher_tsv("researcher\tcouto\n")


def test_researcher_html(couto, corpus):
    html = emit_researcher_report(couto, "html", corpus).decode("utf-8")
    assert html.startswith("<!DOCTYPE html>")
    assert "Citation analysis of couto (2003:2006)" in html
    assert "GOAnnotator: linking protein GO annotations" in html
    for kind in ("all", "self", "nonself"):
        assert f'href="#paper0-{kind}"' in html
        assert f'id="paper0-{kind}"' in html
    # the self-citation of p03 comes from p13
    self_list = html.split('id="paper0-self"')[1].split("</ul>")[0]
    assert "Citing work D (2006)" in self_list
    assert "Citing work C" not in self_list


def test_researcher_bibtex(couto, corpus):
    bib = emit_researcher_report(couto, "bibtex", corpus).decode("utf-8")
    assert "@article{couto:p03" in bib
    assert "@article{couto:p02" in bib
    assert "@misc{couto:p11" in bib
    assert "{Bioinformatics}" in bib
    assert bib.index("couto:p03") < bib.index("couto:p02") < bib.index("couto:p11")


def test_unsupported_format(couto, corpus, analyses):
    with pytest.raises(UnknownReferenceError, match="Unsupported report format 'pdf'"):
        emit_researcher_report(couto, "pdf", corpus)
    with pytest.raises(UnknownReferenceError, match="Unsupported report format 'bibtex'"):
        emit_unit_report(analyses[0], "bibtex")


###########################################
# Unit reports
###########################################
def test_unit_tsv(analyses):
    lasige = analyses[0]
    lines = emit_unit_report(lasige, "tsv").decode("utf-8").split("\n")
    assert lines[:6] == ["unit\tLASIGE", "grade\tEX", "ep\t2003:2006", "rcp\t1999:2006", "scale\t10", ""]
    assert "weight-and-relevance\tint_phd\t1999:2006\t2\t" in lines
    assert "weight-and-relevance\tunique_citations\t1999:2006\t11\t6" in lines
    assert "production-and-impact\tprojects_total\t2003:2006\t4\t" in lines
    assert "efficiency-weight-and-relevance\tcitations_per_phd\t1999:2006\t5.5000\t3.0000" in lines
    assert "efficiency-production-and-impact\ttheses_per_phd_scaled\t2003:2006\t0.1000\t" in lines
    assert "balance-relevance\tcited_papers\t1999:2006\t<=50\t100.0000" in lines
    assert "balance-impact\tnonself_citations\t2003:2006\t>1000\t0.0000" in lines
    assert sum(1 for line in lines if line.startswith("balance-")) == 5 * 4


@pytest.mark.parametrize("index,name", [(0, "LASIGE"), (1, "XLAB")])
def test_unit_tsv_matches_golden(analyses, index, name):
    assert emit_unit_report(analyses[index], "tsv") == (FIXTURES / f"{name}.tsv").read_bytes()


def test_single_member_per_capita_keeps_decimals(corpus, units):
    # per-capita figures are ratios: equal in value to the gross ones, always printed with decimals
    couto = replace(units[0], int_phd=units[0].int_phd[:1])
    analysis = compute_unit_metrics(couto, corpus, EP, RCP)
    assert analysis.rcp.per_capita_papers == analysis.rcp.unique_cited_papers
    lines = emit_unit_report(analysis, "tsv").decode("utf-8").split("\n")
    assert "weight-and-relevance\tunique_cited_papers\t1999:2006\t3\t3" in lines
    assert "efficiency-weight-and-relevance\tcited_papers_per_phd\t1999:2006\t3.0000\t3.0000" in lines


def test_unit_reports_are_deterministic(corpus, units):
    first = [emit_unit_report(compute_unit_metrics(u, corpus, EP, RCP), fmt)
             for u in units for fmt in ("tsv", "html")]
    second = [emit_unit_report(compute_unit_metrics(u, corpus, EP, RCP), fmt)
              for u in units for fmt in ("tsv", "html")]
    assert first == second


def test_unit_html(analyses):
    html = emit_unit_report(analyses[1], "html").decode("utf-8")
    assert "Unit report: XLAB" in html
    assert "<h2>balance-relevance</h2>" in html
    assert '<td class="num">VG</td>' in html


###########################################
# Figure CSVs
###########################################
def read_csv(data):
    return list(csv.reader(io.StringIO(data.decode("utf-8"))))


def test_figure_rows_sorted_by_unit(analyses):
    rows = read_csv(emit_figure_csv(list(reversed(analyses)), "avg-h-index-rcp"))
    assert rows == [["unit", "all", "nonself"],
                    ["LASIGE", "2.0000", "2.0000"],
                    ["XLAB", "1.5000", "1.0000"]]


def test_figure_columns(analyses):
    assert read_csv(emit_figure_csv(analyses, "projects-ep")) == [
        ["unit", "national", "international", "total"],
        ["LASIGE", "3", "1", "4"],
        ["XLAB", "1", "0", "1"],
    ]
    data = emit_figure_csv(analyses, "distribution-papers-rcp")
    assert data.split(b"\n")[0] == b'unit,<=50,"(50,100]","(100,150]",>150'


def test_every_figure_renders(analyses):
    assert len(FIGURES) == 19
    for name in FIGURES:
        rows = read_csv(emit_figure_csv(analyses, name))
        assert [r[0] for r in rows] == ["unit", "LASIGE", "XLAB"]
        assert len({len(r) for r in rows}) == 1


@pytest.mark.parametrize("figure", sorted(FIGURES))
def test_figure_csv_matches_golden(analyses, figure):
    assert emit_figure_csv(analyses, figure) == (FIXTURES / "figures" / f"{figure}.csv").read_bytes()


def test_figure_errors(analyses):
    with pytest.raises(UnknownReferenceError, match="Unknown figure 'nope'"):
        emit_figure_csv(analyses, "nope")
    with pytest.raises(EmptyInputError):
        emit_figure_csv([], "int-phd")
