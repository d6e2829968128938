"""
    core/pipeline.py

    Builds the job DAG of a unit analysis and runs it:

    metrics:<ref>:<period>   one per (member, period)
            |
    unit:<name>              one per unit
            |
    figure:<figure>          one CSV per figure family   (with out_dir)
    report:<name>:<format>   one TSV and one HTML report (with out_dir)

    Each researcher is computed once per period, even when
    several units share them.
"""

from dataclasses import dataclass, field
from pathlib import Path
import logging

from cids.aggregate import compute_unit_metrics
from cids.core.job import EmitJob, FunctionJob
from cids.core.scheduler import Scheduler
from cids.errors import EmptyInputError
from cids.identity import resolve_researcher
from cids.metrics import compute_researcher_metrics
from cids.report import FIGURES, UNIT_FORMATS, emit_figure_csv, emit_unit_report

logger = logging.getLogger(__name__)


@dataclass
class AnalysisPlan:
    metrics_jobs: dict = field(default_factory=dict)
    unit_jobs: dict = field(default_factory=dict)
    emit_jobs: list = field(default_factory=list)

    @property
    def jobs(self) -> list:
        return [*self.metrics_jobs.values(), *self.unit_jobs.values(), *self.emit_jobs]


def analyse_unit(unit, corpus, ep, rcp, buckets, scale, **members):
    """
    compute_unit_metrics over precomputed member metrics.
    """
    metrics = {(m.researcher, m.period): m for m in members.values()}
    return compute_unit_metrics(unit, corpus, ep, rcp, buckets, scale, metrics)

def emit_figure(figure, decimals, **analyses):
    return emit_figure_csv(list(analyses.values()), figure, decimals)

def build_analysis(corpus, registry, units, config, out_dir=None) -> AnalysisPlan:
    """
    The job DAG for `units`. With `out_dir`, figure CSVs go to
    `<out_dir>/figures/` and unit reports to `<out_dir>/reports/`.
    """
    units = sorted(units, key=lambda u: u.name)
    if not units:
        raise EmptyInputError("No units to analyse")
    ep, rcp = config.ep, config.reference_period
    plan = AnalysisPlan()

    for unit in units:
        members = {}
        for ref in unit.member_refs:
            spec = resolve_researcher(registry, ref)
            for period in (rcp, ep):
                key = (ref, period)
                if key not in plan.metrics_jobs:
                    plan.metrics_jobs[key] = FunctionJob(
                        f"metrics:{ref}:{period}", compute_researcher_metrics,
                        kwargs={"spec": spec, "corpus": corpus, "period": period})
                members[f"{ref}@{period}"] = plan.metrics_jobs[key]["result"]

        plan.unit_jobs[unit.name] = FunctionJob(
            f"unit:{unit.name}", analyse_unit, inputs=members,
            kwargs={"unit": unit, "corpus": corpus, "ep": ep, "rcp": rcp,
                    "buckets": config.buckets, "scale": config.scale})

    if out_dir is not None:
        out_dir = Path(out_dir)
        analyses = {f"unit:{name}": job["result"] for name, job in plan.unit_jobs.items()}
        for figure in FIGURES:
            plan.emit_jobs.append(EmitJob(
                f"figure:{figure}", emit_figure, out_dir / "figures" / f"{figure}.csv",
                inputs=analyses, kwargs={"figure": figure, "decimals": config.decimals}))
        for name, job in plan.unit_jobs.items():
            for fmt in UNIT_FORMATS:
                plan.emit_jobs.append(EmitJob(
                    f"report:{name}:{fmt}", emit_unit_report, out_dir / "reports" / f"{name}.{fmt}",
                    inputs={"analysis": job["result"]}, kwargs={"fmt": fmt, "decimals": config.decimals}))

    logger.info("Planned %d metrics job(s), %d unit job(s) and %d output file(s)",
                len(plan.metrics_jobs), len(plan.unit_jobs), len(plan.emit_jobs))
    return plan

def run_analysis(corpus, registry, units, config, out_dir=None) -> list:
    """
    Build and run the analysis; returns UnitAnalysis
    objects ordered by unit name.
    """
    plan = build_analysis(corpus, registry, units, config, out_dir)
    Scheduler(plan.jobs, workers=config.workers).run()
    return [plan.unit_jobs[name]["result"].value for name in sorted(plan.unit_jobs)]
