"""
    abstract/scheduler.py

    Definition of AbstractScheduler: an object that executes
    a DAG of Jobs.

    It executes the DAG via `run()`, a graph traversal that
    launches Jobs once their dependencies are complete. Ready
    Jobs are always launched in identifier order, so a run
    never depends on hash or completion order.
"""

from abc import ABC, abstractmethod
import logging

from cids.abstract.helpers import collect_jobs, construct_adj_list, cycle_exists
from cids.abstract.job import JobState

logger = logging.getLogger(__name__)


class AbstractScheduler(ABC):
    """
    Executes every Job reachable from `jobs`.

    Subclasses decide where a Job's `compute()` runs:
    `_launch_job` starts it, `_wait_for_finished` blocks until
    some launched Jobs are done, and `_collect_result` returns
    a finished Job's output pointers (or raises its exception).
    """

    def __init__(self, jobs):
        jobs = list(jobs)
        self.validate_dag(jobs)
        self.jobs = collect_jobs(jobs)
        self.adj_list = construct_adj_list(self.jobs.values())

        self.waiting = set()
        self.ready = []
        self.running = []
        self.failed = set()
        self.complete = set()

    def validate_dag(self, jobs):
        """
        Check that the jobs and their dependencies
        form a DAG (no circular dependencies).
        """
        if cycle_exists(jobs):
            raise ValueError("Job graph contains a cycle!")

    def run(self):
        """
        Execute the DAG.

        While there are running jobs:
        (a) wait for some of them to finish,
        (b) wrap them up, and
        (c) launch the jobs that became ready.

        If a job fails, nothing new is launched; the jobs
        already running drain and the first failure (by
        identifier) is re-raised.
        """
        self.initialize_state()
        error = None
        try:
            self._launch_ready_jobs()
            while self.running:
                finished = sorted(self._wait_for_finished(), key=lambda j: j.identifier)
                for job in finished:
                    self.running.remove(job)
                    try:
                        job.finish(self._collect_result(job))
                    except Exception as e:
                        logger.error("Job %s failed: %s", job.identifier, e)
                        job.fail()
                        self.failed.add(job)
                        error = error or e
                    else:
                        logger.debug("Job %s complete", job.identifier)
                        self.complete.add(job)
                if error is None:
                    self._update_ready_jobs(finished)
                    self._launch_ready_jobs()
        except KeyboardInterrupt:
            logger.warning("Run interrupted; stopping %d running job(s)", len(self.running))
            self._interrupt()
            raise
        if error is not None:
            raise error
        return self

    def initialize_state(self):
        self.waiting = set()
        self.ready = []
        self.running = []
        self.complete = set()
        self.failed = set()
        for job in self.jobs.values():
            match job.state:
                case JobState.COMPLETE:
                    self.complete.add(job)
                case JobState.FAILED:
                    self.failed.add(job)
                case _:
                    job.reset()
                    self.waiting.add(job)
        for job in self.jobs.values():
            if job in self.waiting and all(d in self.complete for d in job.dependencies):
                self.waiting.remove(job)
                self.ready.append(job)
        self.ready.sort(key=lambda j: j.identifier)

    def _update_ready_jobs(self, finished):
        """
        Move the waiting children of `finished` jobs whose
        dependencies are all complete into `ready`.
        """
        children = {c for job in finished for c in self.adj_list[job]}
        for child in children:
            if child in self.waiting and all(d in self.complete for d in child.dependencies):
                self.waiting.remove(child)
                self.ready.append(child)
        self.ready.sort(key=lambda j: j.identifier)

    def _launch_ready_jobs(self):
        while self.ready:
            job = self.ready.pop(0)
            job.start()
            logger.debug("Launching job %s", job.identifier)
            self.running.append(job)
            self._launch_job(job, job.collect_inputs())

    @abstractmethod
    def _launch_job(self, job, collected_inputs):
        raise NotImplementedError("Subclasses of `AbstractScheduler` must implement `_launch_job()`")

    @abstractmethod
    def _wait_for_finished(self) -> list:
        raise NotImplementedError("Subclasses of `AbstractScheduler` must implement `_wait_for_finished()`")

    @abstractmethod
    def _collect_result(self, job) -> dict:
        raise NotImplementedError("Subclasses of `AbstractScheduler` must implement `_collect_result()`")

    @abstractmethod
    def _interrupt(self):
        """
        Stop all RUNNING jobs and return them to WAITING.
        """
        raise NotImplementedError("Subclasses of `AbstractScheduler` must implement `_interrupt()`")
