"""
    core/job.py

    Core implementations of AbstractJob:
    * FunctionJob: calls a python function; its output
                   "result" is the return value, in memory.
    * EmitJob: calls an emitter returning bytes; on finish they
               are written atomically to a report file, output "file".
"""

from cids.abstract import AbstractJob
from cids.core.artifact import MemoryArtifact, ReportFile


class FunctionJob(AbstractJob):
    """
    The function receives the collected inputs plus `kwargs`
    as keyword arguments. Inputs win over kwargs of the same name.
    """

    def __init__(self, identifier, function, inputs=None, kwargs=None):
        if not callable(function):
            raise ValueError(f"`function` argument {function} is not callable")
        self.function = function
        self.kwargs = {} if kwargs is None else dict(kwargs)
        super().__init__(identifier, inputs)

    def _initialize_outputs(self):
        return {"result": MemoryArtifact(parent=self)}

    def _run_logic(self, collected_inputs):
        return {"result": self.function(**{**self.kwargs, **collected_inputs})}


class EmitJob(AbstractJob):
    """
    Writes `emitter(**inputs, **kwargs)` to `path`. An existing
    file is left alone unless this job replaced it.
    """

    def __init__(self, identifier, emitter, path, inputs=None, kwargs=None):
        if not callable(emitter):
            raise ValueError(f"`emitter` argument {emitter} is not callable")
        self.emitter = emitter
        self.path = str(path)
        self.kwargs = {} if kwargs is None else dict(kwargs)
        super().__init__(identifier, inputs)

    def _initialize_outputs(self):
        return {"file": ReportFile(parent=self, pointer=self.path)}

    def _run_logic(self, collected_inputs):
        data = self.emitter(**{**self.kwargs, **collected_inputs})
        if not isinstance(data, bytes):
            raise TypeError(f"Emitter of job {self.identifier} returned {type(data).__name__}, not bytes")
        return {"data": data}

    def finish(self, results):
        self["file"].write(results["data"])
        super().finish({"file": self.path})
