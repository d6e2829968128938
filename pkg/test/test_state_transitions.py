import pytest
from cids.abstract.job import AbstractJob, JobState
from cids.abstract.artifact import ArtifactState
from cids.core import MemoryArtifact, ReportFile


class MinimalJob(AbstractJob):
    """Minimal AbstractJob for testing state transitions."""
    def _initialize_outputs(self):
        return {"output": MemoryArtifact(parent=self)}

    def _run_logic(self, collected_inputs):
        return {"output": f"result of job {self.identifier}"}


####################################
# JobState transitions
####################################

def test_job_initial_state():
    j = MinimalJob("j")
    assert j.state == JobState.WAITING


@pytest.mark.parametrize("from_state,to_state", [
    (JobState.WAITING, JobState.RUNNING),
    (JobState.RUNNING, JobState.COMPLETE),
    (JobState.RUNNING, JobState.FAILED),
    (JobState.RUNNING, JobState.WAITING),
    (JobState.COMPLETE, JobState.WAITING),
    (JobState.FAILED, JobState.WAITING),
])
def test_job_valid_transitions(from_state, to_state):
    j = MinimalJob("j")
    j._state = from_state
    j.state = to_state
    assert j.state == to_state


@pytest.mark.parametrize("from_state,to_state", [
    (JobState.WAITING, JobState.COMPLETE),
    (JobState.WAITING, JobState.FAILED),
    (JobState.COMPLETE, JobState.RUNNING),
    (JobState.COMPLETE, JobState.FAILED),
    (JobState.FAILED, JobState.RUNNING),
    (JobState.FAILED, JobState.COMPLETE),
])
def test_job_invalid_transitions(from_state, to_state):
    j = MinimalJob("j")
    j._state = from_state
    with pytest.raises(ValueError, match="Invalid JobState transition"):
        j.state = to_state


@pytest.mark.parametrize("same_state", list(JobState))
def test_job_self_transitions(same_state):
    j = MinimalJob("j")
    j._state = same_state
    j.state = same_state
    assert j.state == same_state


def test_job_start_compute_finish():
    j = MinimalJob("j")
    j.start()
    assert j.state == JobState.RUNNING
    j.finish(j.compute(j.collect_inputs()))
    assert j.state == JobState.COMPLETE
    assert j["output"].value == "result of job j"


####################################
# ArtifactState transitions
####################################

def test_artifact_initial_state():
    a = MemoryArtifact()
    assert a.state == ArtifactState.EMPTY


@pytest.mark.parametrize("from_state,to_state", [
    (ArtifactState.EMPTY, ArtifactState.POPULATED),
    (ArtifactState.POPULATED, ArtifactState.AVAILABLE),
    (ArtifactState.POPULATED, ArtifactState.EMPTY),
    (ArtifactState.AVAILABLE, ArtifactState.POPULATED),
    (ArtifactState.AVAILABLE, ArtifactState.EMPTY),
])
def test_artifact_valid_transitions(from_state, to_state):
    a = MemoryArtifact()
    a._state = from_state
    a.state = to_state
    assert a.state == to_state


def test_artifact_invalid_empty_to_available():
    a = MemoryArtifact()
    with pytest.raises(ValueError, match="Invalid ArtifactState transition"):
        a.state = ArtifactState.AVAILABLE


@pytest.mark.parametrize("same_state", list(ArtifactState))
def test_artifact_self_transitions(same_state):
    a = MemoryArtifact()
    a._state = same_state
    a.state = same_state
    assert a.state == same_state


def test_memory_artifact_lifecycle():
    a = MemoryArtifact(pointer={"x": 1})
    assert a.state == ArtifactState.AVAILABLE
    assert a.value == {"x": 1}
    a.clear()
    assert a.state == ArtifactState.POPULATED
    with pytest.raises(RuntimeError, match="not available"):
        a.value


def test_report_file_lifecycle(tmp_path):
    path = tmp_path / "out" / "report.tsv"
    f = ReportFile(pointer=str(path))
    assert f.state == ArtifactState.POPULATED

    f.write(b"a\tb\n")
    assert f.state == ArtifactState.AVAILABLE
    assert path.read_bytes() == b"a\tb\n"
    # no temporary siblings are left behind
    assert [p.name for p in path.parent.iterdir()] == ["report.tsv"]

    f.clear()
    assert f.state == ArtifactState.POPULATED
    assert not path.exists()


def test_report_file_clear_keeps_files_it_did_not_write(tmp_path):
    path = tmp_path / "report.tsv"
    path.write_bytes(b"earlier\n")
    f = ReportFile(pointer=str(path))
    assert f.state == ArtifactState.AVAILABLE
    assert not f.written

    f.clear()
    assert f.state == ArtifactState.POPULATED
    assert path.read_bytes() == b"earlier\n"


def test_report_file_rejects_malformed_path():
    with pytest.raises(ValueError, match="not well-formed"):
        ReportFile(pointer="bad\0path.tsv")
