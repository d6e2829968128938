"""
    core/artifact.py

    Basic implementations of the AbstractArtifact class.
"""

from pathlib import Path
import os

from cids.abstract.artifact import AbstractArtifact, ArtifactState
from cids.abstract.helpers import valid_output_path, write_atomic


class MemoryArtifact(AbstractArtifact):
    """
    A python object held in local memory.
    The pointer is the object itself.
    """

    def _verify_available_logic(self):
        return self.state != ArtifactState.EMPTY

    def _validate_format_logic(self):
        # any python object (including `None`) is valid
        return True

    def _load(self):
        return self.pointer

    def _clear_logic(self):
        self.pointer = None


class ReportFile(AbstractArtifact):
    """
    A report file on the local filesystem.
    The pointer is its path. `clear()` only removes a file
    this Artifact wrote.
    """

    def __init__(self, parent=None, **kwargs):
        self.written = False
        super().__init__(parent, **kwargs)

    def _verify_available_logic(self):
        return os.path.exists(self.pointer)

    def _validate_format_logic(self):
        return valid_output_path(self.pointer)

    def _load(self):
        return Path(self.pointer)

    def write(self, data: bytes):
        """
        Atomically replace the file's contents with `data`.
        """
        if self.state == ArtifactState.EMPTY:
            raise RuntimeError("Cannot write a ReportFile without a path")
        write_atomic(self.pointer, data)
        self.written = True
        self.verify_available(update=True)

    def _clear_logic(self):
        if not self.written:
            return
        self.written = False
        try:
            os.remove(self.pointer)
        except FileNotFoundError:
            pass
