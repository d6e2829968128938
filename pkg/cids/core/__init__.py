
from cids.core.artifact import MemoryArtifact, ReportFile
from cids.core.job import FunctionJob, EmitJob
from cids.core.scheduler import Scheduler
from cids.core.source import CorpusSource
