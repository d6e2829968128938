"""
    abstract/artifact.py

    A class representing a value passed to or from a Job --
    that is, an input or output.

    It is often used as an "IOU" for data that does not yet
    exist: the Artifact holding a researcher's metrics can be
    handed to the unit job that needs it before the metrics
    job has even run.

    Here we include an abstract base class.
    See `core/artifact.py` for the concrete implementations.

    An Artifact goes through the following lifecycle:

    EMPTY <--> POPULATED <--> AVAILABLE

    * EMPTY -> POPULATED via `populate(...)`
    * POPULATED -> EMPTY when the pointer is not well-formed
    * POPULATED -> AVAILABLE via `verify_available()`
    * AVAILABLE -> POPULATED via `clear()` or a fresh `populate(...)`

    `parents` plays no role in the lifecycle; it only lets a Job
    find the upstream Jobs behind its inputs.
"""

from abc import ABC, abstractmethod
from enum import Enum


class ArtifactState(Enum):
    """
    An Artifact is in exactly one of these states.
    """
    EMPTY = 0
    POPULATED = 1
    AVAILABLE = 2


_ARTIFACT_TRANSITIONS = {
    ArtifactState.EMPTY:     {ArtifactState.POPULATED},
    ArtifactState.POPULATED: {ArtifactState.EMPTY, ArtifactState.AVAILABLE},
    ArtifactState.AVAILABLE: {ArtifactState.EMPTY, ArtifactState.POPULATED},
}


class AbstractArtifact(ABC):
    """
    A value passed to or from a Job. The `pointer` is either
    the value itself or enough information to retrieve it.
    """

    @property
    def state(self):
        return self._state

    @state.setter
    def state(self, new_state):
        if hasattr(self, '_state') and new_state != self._state:
            if new_state not in _ARTIFACT_TRANSITIONS[self._state]:
                raise ValueError(
                    f"Invalid ArtifactState transition: "
                    f"{self._state.name} → {new_state.name}"
                )
        self._state = new_state

    def __init__(self, parent=None, **kwargs):
        """
        Construct an empty Artifact, optionally owned by the
        `parent` Job that produces it. With a `pointer` kwarg
        the Artifact is populated right away.
        """
        self.state = ArtifactState.EMPTY
        self.parents = [parent]
        self.pointer = None
        if "pointer" in kwargs:
            self.populate(kwargs["pointer"])
            self.verify_available(update=True)

    def populate(self, pointer):
        self.pointer = pointer
        self.state = ArtifactState.POPULATED
        self._validate_format()

    def _validate_format(self):
        """
        If the pointer is not well-formed, empty the Artifact
        and raise ValueError.
        """
        if not self._validate_format_logic():
            bad = self.pointer
            self.pointer = None
            self.state = ArtifactState.EMPTY
            raise ValueError(f"Artifact pointer is not well-formed: {bad!r}")

    @abstractmethod
    def _validate_format_logic(self) -> bool:
        raise NotImplementedError("Subclasses of `AbstractArtifact` must implement `_validate_format_logic()`")

    def verify_available(self, update=True) -> bool:
        """
        Whether the Artifact points to data that exists.
        With `update`, an available Artifact becomes AVAILABLE.
        """
        if self.state != ArtifactState.EMPTY and self._verify_available_logic():
            if update:
                self.state = ArtifactState.AVAILABLE
            return True
        return False

    @abstractmethod
    def _verify_available_logic(self) -> bool:
        raise NotImplementedError("Subclasses of `AbstractArtifact` must implement `_verify_available_logic()`")

    @property
    def value(self):
        """
        The data behind an AVAILABLE Artifact.
        """
        if self.state != ArtifactState.AVAILABLE:
            raise RuntimeError(f"Artifact is not available (state {self.state.name})")
        return self._load()

    @abstractmethod
    def _load(self):
        raise NotImplementedError("Subclasses of `AbstractArtifact` must implement `_load()`")

    def clear(self):
        """
        Clear away any persistent data; a non-empty
        Artifact returns to POPULATED.
        """
        if self.state != ArtifactState.EMPTY:
            self._clear_logic()
            self.state = ArtifactState.POPULATED

    @abstractmethod
    def _clear_logic(self):
        raise NotImplementedError("Subclasses of `AbstractArtifact` must implement `_clear_logic()`")
