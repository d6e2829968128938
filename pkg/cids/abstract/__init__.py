
from cids.abstract.artifact import AbstractArtifact, ArtifactState
from cids.abstract.job import AbstractJob, JobState
from cids.abstract.scheduler import AbstractScheduler
from cids.abstract.source import AbstractSource

import cids.abstract.helpers as helpers
