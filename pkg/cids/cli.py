"""
    cli.py

    The `cids` command line driver.

    Exit status: 0 on success, 1 on a usage error, 2 on a data
    error (malformed or inconsistent input). Output files are
    written atomically, so a failed run never leaves a partial file.
"""

from pathlib import Path
import logging
import sys

import click

from cids.aggregate import DEFAULT_SCALE
from cids.config import AnalysisConfig, load_buckets, load_config
from cids.core.artifact import ReportFile
from cids.core.pipeline import run_analysis
from cids.corpus import MAX_YEAR, MIN_YEAR, YearRange, load_corpus, load_units, read_corpus, validate
from cids.errors import CidsError, UnknownReferenceError
from cids.identity import load_registry, resolve_researcher
from cids.metrics import compute_researcher_metrics
from cids.quality import crosscheck, crosscheck_citations, find_duplicates, load_curated
from cids.report import RESEARCHER_FORMATS, UNIT_FORMATS, emit_researcher_report, emit_unit_report, format_number

logger = logging.getLogger(__name__)

ALL_YEARS = YearRange(MIN_YEAR, MAX_YEAR)


class YearRangeType(click.ParamType):
    name = "Y1:Y2"

    def convert(self, value, param, ctx):
        if isinstance(value, YearRange):
            return value
        try:
            return YearRange.parse(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


YEAR_RANGE = YearRangeType()
EXISTING_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)


class CidsGroup(click.Group):
    """
    Maps failures to exit codes: usage errors 1,
    data errors (CidsError) 2.
    """

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.UsageError as e:
            e.show()
            sys.exit(1)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(1)
        except click.ClickException as e:
            e.show()
            sys.exit(e.exit_code)
        except CidsError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(2)
        sys.exit(rv if isinstance(rv, int) else 0)


def _emit(data: bytes, out):
    if out is None:
        click.echo(data, nl=False)
        return
    try:
        ReportFile(pointer=str(out)).write(data)
    except ValueError as e:
        raise CidsError(f"cannot write {out}: {e}") from None
    logger.info("Wrote %s", out)

def _config(ctx, **flags) -> AnalysisConfig:
    buckets = flags.pop("buckets", None)
    if buckets is not None:
        flags["buckets"] = load_buckets(buckets)
    scale = flags.get("scale")
    if isinstance(scale, float) and scale.is_integer():
        flags["scale"] = int(scale)
    return ctx.obj.with_overrides(**flags)

def _tsv(rows) -> str:
    return "".join("\t".join(str(c) for c in row) + "\n" for row in rows)


@click.group(cls=CidsGroup)
@click.option("--config", "config_path", type=EXISTING_FILE, help="YAML analysis settings.")
@click.option("-v", "--verbose", count=True, help="More logging (-v info, -vv debug).")
@click.pass_context
def cli(ctx, config_path, verbose):
    """
    Citation analysis discerning self-citations.
    """
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, force=True,
                        format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = load_config(config_path) if config_path is not None else AnalysisConfig()


@cli.command("validate")
@click.argument("corpus", type=EXISTING_FILE)
def validate_cmd(corpus):
    """
    Check a corpus file; exit 0 iff it is valid.
    """
    report = validate(read_corpus(corpus))
    if report:
        click.echo(str(report))
        click.echo(f"{corpus}: {len(report)} problem(s)", err=True)
        return 2
    click.echo(f"{corpus}: ok")
    return 0


@cli.command("researcher")
@click.argument("corpus", type=EXISTING_FILE)
@click.argument("registry", type=EXISTING_FILE)
@click.option("--ref", required=True, help="Researcher reference in the registry.")
@click.option("--period", type=YEAR_RANGE, help="Publication years of the counted papers [default: the EP].")
@click.option("--format", "fmt", type=click.Choice(RESEARCHER_FORMATS), default="tsv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Output file [default: stdout].")
@click.pass_context
def researcher_cmd(ctx, corpus, registry, ref, period, fmt, out):
    """
    Citation metrics of one researcher.
    """
    config = ctx.obj
    corpus = load_corpus(corpus)
    spec = resolve_researcher(load_registry(registry, config.strict_initials), ref)
    m = compute_researcher_metrics(spec, corpus, period or config.ep)
    if not m.matched_papers:
        logger.info("Researcher '%s' matches no papers in %s", ref, m.period)
    _emit(emit_researcher_report(m, fmt, corpus, config.decimals), out)


def _analysis_options(f):
    f = click.option("--workers", type=click.IntRange(min=1), help="Worker processes [default: 1].")(f)
    f = click.option("--scale", type=click.FloatRange(min=0, min_open=True),
                     help=f"Extra divisor for per-capita projects and theses [default: {DEFAULT_SCALE}].")(f)
    f = click.option("--buckets", type=EXISTING_FILE, help="YAML distribution thresholds.")(f)
    f = click.option("--rcp", type=YEAR_RANGE, help="Reference contributing period [default: twice the EP].")(f)
    f = click.option("--ep", type=YEAR_RANGE, help="Evaluation period [default: 2003:2006].")(f)
    return f

def _load_inputs(corpus, registry, units, config):
    corpus = load_corpus(corpus)
    registry = load_registry(registry, config.strict_initials)
    return corpus, registry, load_units(units, registry)


@cli.command("unit")
@click.argument("corpus", type=EXISTING_FILE)
@click.argument("registry", type=EXISTING_FILE)
@click.argument("units", type=EXISTING_FILE)
@click.option("--name", required=True, help="Unit name.")
@_analysis_options
@click.option("--format", "fmt", type=click.Choice(UNIT_FORMATS), default="tsv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Output file [default: stdout].")
@click.pass_context
def unit_cmd(ctx, corpus, registry, units, name, ep, rcp, buckets, scale, workers, fmt, out):
    """
    Full figure set of one research unit.
    """
    config = _config(ctx, ep=ep, rcp=rcp, buckets=buckets, scale=scale, workers=workers)
    corpus, registry, units = _load_inputs(corpus, registry, units, config)
    selected = [u for u in units if u.name == name]
    if not selected:
        raise UnknownReferenceError(f"unknown unit '{name}'")
    [analysis] = run_analysis(corpus, registry, selected, config)
    _emit(emit_unit_report(analysis, fmt, config.decimals), out)


@cli.command("figures")
@click.argument("corpus", type=EXISTING_FILE)
@click.argument("registry", type=EXISTING_FILE)
@click.argument("units", type=EXISTING_FILE)
@_analysis_options
@click.option("--out", required=True, type=click.Path(file_okay=False, path_type=Path),
              help="Output directory (figures/ and reports/ are created in it).")
@click.pass_context
def figures_cmd(ctx, corpus, registry, units, ep, rcp, buckets, scale, workers, out):
    """
    Figure CSVs and unit reports for every unit.
    """
    config = _config(ctx, ep=ep, rcp=rcp, buckets=buckets, scale=scale, workers=workers)
    corpus, registry, units = _load_inputs(corpus, registry, units, config)
    analyses = run_analysis(corpus, registry, units, config, out_dir=out)
    click.echo(f"Wrote figures and reports for {len(analyses)} unit(s) to {out}")


@cli.group("quality")
def quality():
    """
    Data-quality audits.
    """


@quality.command("dupes")
@click.argument("corpus", type=EXISTING_FILE)
@click.option("--registry", type=EXISTING_FILE, help="Restrict the audit to one researcher's papers.")
@click.option("--ref", help="Researcher reference (with --registry).")
@click.option("--period", type=YEAR_RANGE, help="Publication years (with --ref) [default: all].")
@click.pass_context
def dupes_cmd(ctx, corpus, registry, ref, period):
    """
    Pairs of entries with equal normalized titles.
    """
    if (registry is None) != (ref is None):
        raise click.UsageError("--registry and --ref go together")
    corpus = load_corpus(corpus)
    paper_ids = None
    if ref is not None:
        spec = resolve_researcher(load_registry(registry, ctx.obj.strict_initials), ref)
        paper_ids = compute_researcher_metrics(spec, corpus, period or ALL_YEARS).matched_papers
    audit = find_duplicates(corpus, paper_ids)

    rows = [("entries", audit.n_entries), ("pairs", len(audit.pairs)),
            ("rate", format_number(audit.rate, ctx.obj.decimals)), (),
            ("paper_a", "paper_b", "title")]
    rows += [(a, b, corpus.paper(a).normalized_title) for a, b in audit.pairs]
    click.echo(_tsv(rows), nl=False)


@quality.command("crosscheck")
@click.argument("corpus", type=EXISTING_FILE)
@click.argument("registry", type=EXISTING_FILE)
@click.option("--ref", required=True, help="Researcher reference.")
@click.option("--curated", required=True, type=EXISTING_FILE,
              help="Curated list: one paper id, or citing<TAB>cited, per line.")
@click.option("--citations", is_flag=True, help="Compare non-self citation edges instead of cited papers.")
@click.option("--period", type=YEAR_RANGE, help="Publication years of the researcher's papers [default: all].")
@click.option("--returned", type=EXISTING_FILE, help="Compare this list instead of the researcher's results.")
@click.pass_context
def crosscheck_cmd(ctx, corpus, registry, ref, curated, citations, period, returned):
    """
    Precision and recall against a manually curated list.
    """
    corpus = load_corpus(corpus)
    spec = resolve_researcher(load_registry(registry, ctx.obj.strict_initials), ref)
    curated_papers, curated_edges = load_curated(curated)

    if returned is not None:
        returned_papers, returned_edges = load_curated(returned)
    else:
        m = compute_researcher_metrics(spec, corpus, period or ALL_YEARS)
        returned_papers, returned_edges = m.cited_ids(), m.nonself_edges

    if citations:
        result = crosscheck_citations(returned_edges, curated_edges)
    else:
        result = crosscheck(returned_papers, curated_papers)
    num = lambda x: format_number(x, ctx.obj.decimals)
    click.echo(_tsv([("returned", result.returned), ("correct", result.correct),
                     ("curated", result.curated), ("precision", num(result.precision)),
                     ("recall", num(result.recall))]), nl=False)


def main():
    cli(prog_name="cids")
