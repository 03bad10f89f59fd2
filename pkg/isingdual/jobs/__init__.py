"""Job running module"""
from .runner import JobContext, JobRunner, JobStatus
