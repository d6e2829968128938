"""
    abstract/helpers.py

    Helper functions for the abstract base classes.

    Many of these functions are meant to be used in
    methods for Job, Scheduler, and Artifact
    implementations.
"""

from collections import defaultdict
from pathlib import Path
import platform
import tempfile
import os

from pathvalidate import is_valid_filepath

###################################################
# Job helpers
###################################################
def collect_dependencies(input_dict):
    """
    The Jobs behind a dictionary of input Artifacts.

    The result is ordered by identifier so that
    scheduling never depends on set iteration order.
    """
    parents = [p for inp in input_dict.values() for p in inp.parents]
    deps = {id(p): p for p in parents if p is not None}
    return sorted(deps.values(), key=lambda d: d.identifier)


################################################
# Scheduler helpers
################################################
def cycle_exists(jobs):
    """
    Use DFS to detect cycles in job dependencies,
    starting from every job in `jobs`.
    """
    visited = set()
    for job in jobs:
        if _rec_cycle_exists(job, [], visited):
            return True
    return False

def _rec_cycle_exists(job, ancestors, visited):
    """
    ancestors: stack of job identifiers on the current path.
    visited: set of fully explored job identifiers.
    """
    if job.identifier in ancestors:
        return True
    if job.identifier in visited:
        return False

    ancestors.append(job.identifier)
    for d in job.dependencies:
        if _rec_cycle_exists(d, ancestors, visited):
            return True
    ancestors.pop()
    visited.add(job.identifier)
    return False

def collect_jobs(jobs):
    """
    Return every job reachable from `jobs` through
    dependencies, keyed by identifier.
    Raises ValueError if two distinct jobs share an identifier.
    """
    found = {}
    stack = list(jobs)
    while stack:
        job = stack.pop()
        known = found.get(job.identifier)
        if known is job:
            continue
        if known is not None:
            raise ValueError(f"Duplicate job identifier: {job.identifier}")
        found[job.identifier] = job
        stack.extend(job.dependencies)
    return dict(sorted(found.items()))

def construct_adj_list(jobs):
    """
    Construct an 'adjacency list' (job -> children)
    representation of the job DAG.
    """
    adj_list = defaultdict(list)
    for job in jobs:
        adj_list.setdefault(job, [])
        for dep in job.dependencies:
            adj_list[dep].append(job)
    return {k: sorted(v, key=lambda j: j.identifier) for k, v in adj_list.items()}


#########################################
# File helpers
#########################################
def valid_output_path(path) -> bool:
    """
    Whether `path` is a well-formed filepath on this platform.
    """
    return isinstance(path, (str, os.PathLike)) and \
           is_valid_filepath(str(path), platform=platform.system())

def write_atomic(path, data: bytes):
    """
    Write `data` to `path` so that readers only ever see
    the old file or the complete new one: write to a temporary
    sibling, then rename it over the target.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.remove(tmp)
        except FileNotFoundError:
            pass
        raise
