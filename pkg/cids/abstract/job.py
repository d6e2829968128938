"""
    abstract/job.py

    Definition of AbstractJob, a unit of analysis work
    (one researcher's metrics, one unit's figures, one
    emitted report).

    A Job exists in exactly one of four states:
    WAITING, RUNNING, COMPLETE, or FAILED.

    A Job may only run once the Jobs that produce its input
    Artifacts are complete. These are its `dependencies`.

    Running a Job is split in three steps so a Scheduler can
    do the middle one in another process:
    * `start()`   -- checks readiness, WAITING -> RUNNING
    * `compute()` -- pure: collected inputs -> output pointers
    * `finish()`  -- populates and verifies the outputs,
                     RUNNING -> COMPLETE
"""

from abc import ABC, abstractmethod
from enum import Enum
import copy

from cids.abstract.artifact import ArtifactState
from cids.abstract import helpers


class JobState(Enum):
    """
    A Job exists in exactly one of these states
    at any given time:

    WAITING --> RUNNING --> COMPLETE
                       \
                        --> FAILED

    WAITING  → RUNNING   via .start()
    RUNNING  → COMPLETE  via .finish()
    RUNNING  → FAILED    via .fail()
    RUNNING  → WAITING   via .interrupt()
    COMPLETE → WAITING   via .reset()
    FAILED   → WAITING   via .reset()

    Self-transitions (same → same) are always allowed.
    """
    WAITING = 0
    RUNNING = 1
    COMPLETE = 2
    FAILED = 3


_JOB_TRANSITIONS = {
    JobState.WAITING:  {JobState.RUNNING},
    JobState.RUNNING:  {JobState.COMPLETE, JobState.FAILED, JobState.WAITING},
    JobState.COMPLETE: {JobState.WAITING},
    JobState.FAILED:   {JobState.WAITING},
}


class AbstractJob(ABC):
    """
    A piece of work with a unique string `identifier`,
    named input Artifacts and named output Artifacts.
    """

    @property
    def state(self):
        return self._state

    @state.setter
    def state(self, new_state):
        if hasattr(self, '_state') and new_state != self._state:
            if new_state not in _JOB_TRANSITIONS[self._state]:
                raise ValueError(
                    f"Invalid JobState transition: "
                    f"{self._state.name} → {new_state.name}"
                )
        self._state = new_state

    def __init__(self, identifier: str, inputs: dict = None):
        if not isinstance(identifier, str) or not identifier:
            raise ValueError(f"Job identifier must be a non-empty string, got {identifier!r}")
        self.identifier = identifier
        self.state = JobState.WAITING
        self.inputs = {} if inputs is None else dict(inputs)
        self.dependencies = helpers.collect_dependencies(self.inputs)
        self.outputs = self._initialize_outputs()

    @abstractmethod
    def _initialize_outputs(self) -> dict:
        """
        Return this Job's output Artifacts by name,
        each with this Job as its parent.
        """
        raise NotImplementedError("Subclasses of AbstractJob must implement `_initialize_outputs()`")

    def is_ready(self) -> bool:
        """
        A Job is ready to run iff all of its
        dependencies are complete.
        """
        return all(d.state == JobState.COMPLETE for d in self.dependencies)

    def collect_inputs(self) -> dict:
        missing = [k for k, v in self.inputs.items() if v.state != ArtifactState.AVAILABLE]
        if missing:
            raise RuntimeError(f"Job {self.identifier} has unavailable inputs: {', '.join(sorted(missing))}")
        return {k: v.value for k, v in self.inputs.items()}

    def start(self):
        if not self.is_ready():
            raise RuntimeError(f"Job {self.identifier} is not ready to run.")
        self.state = JobState.RUNNING

    def compute(self, collected_inputs: dict) -> dict:
        return self._run_logic(collected_inputs)

    @abstractmethod
    def _run_logic(self, collected_inputs: dict) -> dict:
        """
        Do the work. Returns output name -> pointer.
        Must not touch Job or Artifact state.
        """
        raise NotImplementedError("Subclasses of AbstractJob must implement `_run_logic`")

    def finish(self, results: dict):
        for name, artifact in self.outputs.items():
            if name not in results:
                raise RuntimeError(f"Job {self.identifier} did not produce output '{name}'")
            artifact.populate(results[name])
        if not all(out.verify_available(update=True) for out in self.outputs.values()):
            raise RuntimeError(f"Job {self.identifier} ran, but is missing outputs.")
        self.state = JobState.COMPLETE

    def detached(self):
        """
        A shallow copy stripped of its graph links,
        cheap to ship to a worker process.
        """
        job = copy.copy(self)
        job.inputs = {}
        job.outputs = {}
        job.dependencies = []
        return job

    def fail(self):
        self.state = JobState.FAILED
        self._fail_cleanup()

    def _fail_cleanup(self):
        for artifact in self.outputs.values():
            artifact.clear()

    def interrupt(self):
        self.state = JobState.WAITING
        self._fail_cleanup()

    def reset(self):
        self.state = JobState.WAITING

    def __getitem__(self, key):
        """
        Get a Job output by name.
        """
        return self.outputs[key]

    def __repr__(self):
        return f"{type(self).__name__}({self.identifier!r}, state={self.state.name})"
