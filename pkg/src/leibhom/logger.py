import json
import logging
import os
import re
import time
from collections import deque
from typing import Any, Deque, MutableMapping

TRACE_FORMAT_VERSION = "1"


class ComplexLoggerAdapter(logging.LoggerAdapter):
    """
    A logger adapter prefixing messages with the name of a complex.
    """

    def process(
        self, msg: str, kwargs: MutableMapping[str, Any]
    ) -> tuple[str, MutableMapping[str, Any]]:
        return "[%s] %s" % (self.extra["name"], msg), kwargs


class ComputationTrace:
    """
    An event trace for one computation.

    Events are stored in the order they occur, with a time relative to the
    start of the trace.
    """

    def __init__(self, name: str) -> None:
        self.name = name
        self._events: Deque[dict[str, Any]] = deque()
        self._start = time.monotonic()

    def log_event(self, *, category: str, event: str, data: dict) -> None:
        self._events.append(
            {
                "data": data,
                "name": category + ":" + event,
                "time": round((time.monotonic() - self._start) * 1000, 3),
            }
        )

    @property
    def events(self) -> list[dict[str, Any]]:
        return list(self._events)

    def to_dict(self) -> dict[str, Any]:
        """
        Return the trace as a dictionary which can be written as JSON.
        """
        return {
            "events": list(self._events),
            "name": self.name,
        }


class ComputationLogger:
    """
    A computation event logger which stores traces in memory.
    """

    def __init__(self) -> None:
        self._traces: list[ComputationTrace] = []

    def start_trace(self, name: str) -> ComputationTrace:
        trace = ComputationTrace(name)
        self._traces.append(trace)
        return trace

    def end_trace(self, trace: ComputationTrace) -> None:
        assert trace in self._traces, (
            "ComputationTrace does not belong to ComputationLogger"
        )

    def to_dict(self) -> dict[str, Any]:
        """
        Return the traces as a dictionary which can be written as JSON.
        """
        return {
            "format_version": TRACE_FORMAT_VERSION,
            "traces": [trace.to_dict() for trace in self._traces],
        }


class ComputationFileLogger(ComputationLogger):
    """
    A computation event logger which writes one trace per file.
    """

    def __init__(self, path: str) -> None:
        if not os.path.isdir(path):
            raise ValueError(
                "Computation log output directory '%s' does not exist" % path
            )
        self.path = path
        super().__init__()

    def end_trace(self, trace: ComputationTrace) -> None:
        filename = re.sub(r"[^A-Za-z0-9_.+-]", "_", trace.name) or "trace"
        trace_path = os.path.join(self.path, filename + ".json")
        with open(trace_path, "w") as logger_fp:
            json.dump(
                {
                    "format_version": TRACE_FORMAT_VERSION,
                    "traces": [trace.to_dict()],
                },
                logger_fp,
            )
        self._traces.remove(trace)
