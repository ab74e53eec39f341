import json
import logging
import os
import tempfile
from unittest import TestCase

from leibhom.logger import (
    ComplexLoggerAdapter,
    ComputationFileLogger,
    ComputationLogger,
)

SINGLE_TRACE = {
    "format_version": "1",
    "traces": [{"events": [], "name": "lie-sl2"}],
}


class ComputationLoggerTest(TestCase):
    def test_empty(self):
        logger = ComputationLogger()
        self.assertEqual(logger.to_dict(), {"format_version": "1", "traces": []})

    def test_single_trace(self):
        logger = ComputationLogger()
        trace = logger.start_trace("lie-sl2")
        logger.end_trace(trace)
        self.assertEqual(logger.to_dict(), SINGLE_TRACE)

    def test_log_event(self):
        logger = ComputationLogger()
        trace = logger.start_trace("lie-sl2")
        trace.log_event(category="homology", event="degree_computed", data={"dim": 1})
        events = trace.events
        self.assertEqual(len(events), 1)
        self.assertEqual(events[0]["name"], "homology:degree_computed")
        self.assertEqual(events[0]["data"], {"dim": 1})
        self.assertGreaterEqual(events[0]["time"], 0)

    def test_foreign_trace(self):
        trace = ComputationLogger().start_trace("a")
        with self.assertRaises(AssertionError):
            ComputationLogger().end_trace(trace)


class ComputationFileLoggerTest(TestCase):
    def test_invalid_path(self):
        with self.assertRaises(ValueError) as cm:
            ComputationFileLogger("this_path_should_not_exist")
        self.assertEqual(
            str(cm.exception),
            "Computation log output directory 'this_path_should_not_exist' "
            "does not exist",
        )

    def test_single_trace(self):
        with tempfile.TemporaryDirectory() as dirpath:
            logger = ComputationFileLogger(dirpath)
            trace = logger.start_trace("lie-sl2")
            logger.end_trace(trace)

            filepath = os.path.join(dirpath, "lie-sl2.json")
            self.assertTrue(os.path.exists(filepath))

            with open(filepath, "r") as fp:
                data = json.load(fp)
            self.assertEqual(data, SINGLE_TRACE)
            self.assertEqual(logger.to_dict()["traces"], [])

    def test_sanitized_name(self):
        with tempfile.TemporaryDirectory() as dirpath:
            logger = ComputationFileLogger(dirpath)
            logger.end_trace(logger.start_trace("verify so3/affine"))
            self.assertEqual(os.listdir(dirpath), ["verify_so3_affine.json"])


class ComplexLoggerAdapterTest(TestCase):
    def test_prefix(self):
        adapter = ComplexLoggerAdapter(logging.getLogger("test"), {"name": "lie(sl2)"})
        msg, kwargs = adapter.process("Built boundary", {})
        self.assertEqual(msg, "[lie(sl2)] Built boundary")
        self.assertEqual(kwargs, {})
