import json
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple

import pytest

from sdgjel.state.state_manager import BUNDLED_DATA_DIR, StateManager
from sdgjel.taxonomy.jel_taxonomy import JelCode, JelTaxonomy


def build_taxonomy(entries: Iterable[Tuple[str, str, str]]) -> JelTaxonomy:
    """Level-3 (code, label, guideline) triples with their parents filled in"""
    codes: Dict[str, JelCode] = {}
    for code, label, guideline in entries:
        for level in (1, 2):
            prefix = code[:level]
            if prefix not in codes:
                codes[prefix] = JelCode(prefix, level, code[: level - 1] or None, f"Class {prefix}")
        codes[code] = JelCode(code, 3, code[:2], label, guideline)
    return JelTaxonomy(codes.values())


@pytest.fixture(scope="session")
def state() -> StateManager:
    return StateManager(data_dir=BUNDLED_DATA_DIR)


@pytest.fixture(scope="session")
def taxonomy(state):
    return state.load_taxonomy()


@pytest.fixture(scope="session")
def goals(state):
    return state.load_goals()


@pytest.fixture(scope="session")
def stoplist(state):
    return state.load_stoplist()


@pytest.fixture(scope="session")
def goal(goals):
    by_id = {g.id: g for g in goals}
    return lambda goal_id: by_id[goal_id]


@pytest.fixture
def taxonomy_builder():
    return build_taxonomy


@pytest.fixture
def write_corpus(tmp_path):
    """Write records (dicts) or raw lines (str) as a JSON-lines file"""

    def _write(rows: Sequence, name: str = "corpus.jsonl") -> Path:
        path = tmp_path / name
        lines: List[str] = [row if isinstance(row, str) else json.dumps(row) for row in rows]
        path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
        return path

    return _write


def record(record_id: str, year: int = 2016, title: str = "", abstract: str = "", jel_codes=()) -> Dict:
    return {"id": record_id, "year": year, "title": title, "abstract": abstract, "jel_codes": list(jel_codes)}


@pytest.fixture
def make_record():
    return record
