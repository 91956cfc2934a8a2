"""Shared fixtures: the canonical 9-completion corpus and the acceptance
summary hook that prints one pass/fail line per criterion."""

from __future__ import annotations

import sys
import time
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qac.corpus import ingest
from qac.engine import Engine
from qac.index import Index

# Scores chosen so deduplicated decreasing-score order assigns docids 1..9
# exactly as the canonical fixture requires.
FIXTURE_ROWS = [
    ("bmw i3 sedan", 90),
    ("bmw i3 sportback", 80),
    ("audi q8 sedan", 70),
    ("bmw i3 sport", 60),
    ("bmw x1", 50),
    ("audi a3 sport", 40),
    ("bmw i8 sport", 30),
    ("bmw", 20),
    ("audi", 10),
]

FIXTURE_TERMS = ["a3", "audi", "bmw", "i3", "i8", "q8",
                 "sedan", "sport", "sportback", "x1"]


def fixture_lines() -> list[str]:
    return [f"{text}\t{score}" for text, score in FIXTURE_ROWS]


@pytest.fixture(scope="session")
def table1_corpus():
    return ingest(fixture_lines(), "explicit")


@pytest.fixture(scope="session")
def table1_index(table1_corpus):
    return Index.build(table1_corpus)


@pytest.fixture(scope="session")
def table1_engine(table1_index):
    return Engine(table1_index)


# -- acceptance summary ----------------------------------------------------------

_criterion_results: dict[str, list[tuple[str, str]]] = defaultdict(list)
_criterion_started: dict[str, float] = {}
_criterion_elapsed: dict[str, float] = defaultdict(float)


def pytest_runtest_setup(item):
    marker = item.get_closest_marker("criterion")
    if marker:
        _criterion_started[item.nodeid] = time.perf_counter()


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    marker_name = getattr(report, "_criterion", None)
    if marker_name:
        _criterion_results[marker_name].append((report.nodeid, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        report._criterion = marker.args[0]
        started = _criterion_started.pop(item.nodeid, None)
        if started is not None:
            _criterion_elapsed[marker.args[0]] += time.perf_counter() - started


def pytest_terminal_summary(terminalreporter):
    if not _criterion_results:
        return
    tw = terminalreporter
    tw.section("acceptance criteria")
    for name in sorted(_criterion_results):
        outcomes = _criterion_results[name]
        failed = [nodeid for nodeid, outcome in outcomes if outcome == "failed"]
        status = "PASS" if not failed else "FAIL"
        elapsed = _criterion_elapsed.get(name, 0.0)
        tw.write_line(f"{status}  {name}  "
                      f"({len(outcomes) - len(failed)}/{len(outcomes)} checks, {elapsed:.1f}s)")
        for nodeid in failed:
            tw.write_line(f"      failed: {nodeid}")
