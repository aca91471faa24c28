import os
from pathlib import Path

import numpy as np
import pytest

from mta import MotifTemplate, PlantSpec, generate_planted

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

_acceptance_lines = []


def record_acceptance(label: str, passed, detail: str = "") -> None:
    status = "SKIP" if passed is None else ("PASS" if passed else "FAIL")
    line = f"{status}  {label}" + (f"  ({detail})" if detail else "")
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def dataset_path(env: str, default_name: str):
    p = os.environ.get(env)
    if p:
        return Path(p)
    p = DATA_DIR / default_name
    return p if p.is_file() else None


@pytest.fixture
def planted():
    def make(seed=0, length=400, motif_len=40, copies=3, noise=0.1, templates=1):
        rng = np.random.default_rng(seed)
        tpls = tuple(
            MotifTemplate(tuple(np.cumsum(rng.normal(size=motif_len))), copies, noise)
            for _ in range(templates)
        )
        return generate_planted(PlantSpec(length, tpls, 1.0, seed))
    return make
