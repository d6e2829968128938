"""
    core/scheduler.py

    Scheduler implementation that runs jobs either in this
    process (workers=1) or with multiprocess parallelism on
    the `loky` reusable executor.
"""

from concurrent.futures import FIRST_COMPLETED, Future, wait

from loky import get_reusable_executor

from cids.abstract import AbstractScheduler


def _compute_detached(job, collected_inputs):
    return job.compute(collected_inputs)


class Scheduler(AbstractScheduler):
    """
    With `workers` == 1 every job computes synchronously at
    launch. With more, jobs are submitted to a loky executor
    of that many processes; their outputs come back pickled.
    """

    def __init__(self, jobs, workers=1):
        if workers < 1:
            raise ValueError(f"workers must be positive, got {workers}")
        super().__init__(jobs)
        self.workers = workers
        self.executor = None
        self.futures = {}

    def _launch_job(self, job, collected_inputs):
        if self.workers == 1:
            future = Future()
            try:
                future.set_result(job.compute(collected_inputs))
            except Exception as e:
                future.set_exception(e)
        else:
            if self.executor is None:
                self.executor = get_reusable_executor(max_workers=self.workers)
            future = self.executor.submit(_compute_detached, job.detached(), collected_inputs)
        self.futures[job] = future

    def _wait_for_finished(self):
        pending = [self.futures[job] for job in self.running]
        done, _ = wait(pending, return_when=FIRST_COMPLETED)
        return [job for job in self.running if self.futures[job] in done]

    def _collect_result(self, job):
        return self.futures.pop(job).result()

    def _interrupt(self):
        if self.executor is not None:
            self.executor.shutdown(wait=False, kill_workers=True)
            self.executor = None
        for job in self.running:
            job.interrupt()
            self.waiting.add(job)
        self.futures = {}
        self.running = []
