import hashlib
import json
import logging

import pytest

from sdgjel.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, main
from sdgjel.state.state_manager import BUNDLED_DATA_DIR, DATA_DIR_ENV
from sdgjel.taxonomy.jel_taxonomy import JelTaxonomy, serialize_jel_snapshot


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    """No settings file, .env or data-dir override from the surroundings"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(DATA_DIR_ENV, raising=False)
    yield
    for handler in logging.root.handlers[:]:
        logging.root.removeHandler(handler)
        handler.close()


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows(out):
    return [line.split("\t") for line in out.splitlines()]


@pytest.fixture
def linkage_file(tmp_path, capsys):
    path = tmp_path / "linkage.json"
    code, out, _ = run(capsys, "export-linkage", "--method", "lafleur", "--weighting", "top5", "--output", str(path))
    assert code == EXIT_OK
    assert out == ""
    return path


class TestValidate:
    def test_bundled_snapshot(self, capsys):
        code, out, _ = run(capsys, "validate")
        assert code == EXIT_OK
        table = rows(out)
        assert table[0] == ["class", "label", "level2", "level3"]
        assert len(table) == 22
        assert table[-1] == ["Total sum", "", "122", "856"]

    def test_json(self, capsys):
        code, out, _ = run(capsys, "validate", "--format", "json")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["total"] == {"level2": 122, "level3": 856}
        assert data["diff"] == []

    def test_missing_q_code(self, capsys, tmp_path, taxonomy):
        path = tmp_path / "snapshot.json"
        path.write_bytes(serialize_jel_snapshot(JelTaxonomy(c for c in taxonomy if c.code != "Q59")))
        code, _, err = run(capsys, "validate", "--taxonomy", str(path))
        assert code == EXIT_CHECK_FAILED
        assert "Q(5,48) vs expected Q(5,49)" in err

    def test_unreadable_path(self, capsys, tmp_path):
        code, out, _ = run(capsys, "validate", "--taxonomy", str(tmp_path / "missing.json"))
        assert code == EXIT_USAGE
        assert out == ""

    def test_broken_snapshot(self, capsys, tmp_path):
        path = tmp_path / "snapshot.json"
        path.write_text('[{"code": "A", "level": 2}]')
        code, _, err = run(capsys, "validate", "--taxonomy", str(path))
        assert code == EXIT_USAGE
        assert "Entry 1" in err


class TestMatch:
    def test_lafleur_top5(self, capsys):
        code, out, _ = run(capsys, "match", "--method", "lafleur", "--weighting", "top5", "--top", "3")
        assert code == EXIT_OK
        table = rows(out)
        assert table[0] == ["sdg_id", "rank", "jel_code", "label", "score", "matched_keywords"]
        assert table[1][:5] == ["1", "1", "I32", "Measurement and Analysis of Poverty", "36763/10296"]
        assert "poverty;social;poor" in table[1][5]

    def test_boundary_ties_are_starred(self, capsys):
        _, out, _ = run(capsys, "match", "--method", "lafleur", "--goal", "13")
        table = rows(out)[1:]
        assert [r[2] for r in table[:2]] == ["Q54", "Q58"]
        assert [r[1] for r in table[:2]] == ["1", "2"]
        assert ["13", "3*", "C22"] in [r[:3] for r in table]

    def test_direct(self, capsys):
        code, out, err = run(capsys, "match", "--method", "direct")
        assert code == EXIT_OK
        table = rows(out)
        assert table[0] == ["sdg_id", "keyword", "jel_code", "label", "count", "matched_keywords"]
        assert ["6", "sanitation", "-", "-", "0", "-"] in table
        assert ["6", "water", "L95", "Gas Utilities • Pipelines • Water Utilities", "4", "water"] in table
        assert "ignores weighting" in err
        assert "poverty: 6 codes, published count 9" in err

    def test_selected_three_goal_17(self, capsys):
        code, out, _ = run(capsys, "match", "--method", "selected3", "--weighting", "uniform", "--goal", "17")
        assert code == EXIT_OK
        codes = {r[2]: r[1] for r in rows(out)[1:]}
        assert {"F35", "O19"} <= set(codes)
        assert codes["F35"] == "1*"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "match", "--format", "json", "--goal", "1")
        data = json.loads(out)
        assert data["method"] == "lafleur"
        assert data["goals"][0]["codes"][0]["jel"] == "I32"

    @pytest.mark.parametrize("flags", [
        ["--method", "fuzzy"],
        ["--weighting", "linear"],
        ["--top", "0"],
        ["--goal", "18"],
        ["--bogus"],
    ])
    def test_usage_errors(self, capsys, flags):
        code, out, _ = run(capsys, "match", *flags)
        assert code == EXIT_USAGE
        assert out == ""


class TestCompareWeightings:
    def test_selected_three(self, capsys):
        code, out, _ = run(capsys, "compare-weightings", "--method", "selected3", "--goal", "13")
        assert code == EXIT_OK
        table = rows(out)
        assert table[0] == ["sdg_id", "first", "second", "first_codes", "second_codes", "shared", "overlap"]
        assert [r[1:3] for r in table[1:]] == [["uniform", "harmonic"], ["uniform", "top5"], ["harmonic", "top5"]]
        uniform_top5 = table[2]
        assert uniform_top5[3] == uniform_top5[4]
        assert set(uniform_top5[5].split(";")) == set(uniform_top5[3].split(";"))
        assert uniform_top5[6] == "1"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "compare-weightings", "--format", "json")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data["method"] == "lafleur"
        assert len(data["pairs"]) == 51

    def test_direct_is_rejected(self, capsys):
        code, out, _ = run(capsys, "compare-weightings", "--method", "direct")
        assert code == EXIT_USAGE
        assert out == ""


class TestReduce:
    def test_goal_12(self, capsys):
        code, out, _ = run(capsys, "reduce", "--goal", "12")
        assert code == EXIT_OK
        assert "removed, general words (3): impacts, patterns, capita" in out
        assert "(all survive)" in out

    def test_goal_1(self, capsys):
        _, out, _ = run(capsys, "reduce", "--goal", "1")
        survivors = next(line for line in out.splitlines() if line.startswith("survivors"))
        assert "social_protection" in survivors

    def test_goal_out_of_range(self, capsys):
        assert run(capsys, "reduce", "--goal", "0")[0] == EXIT_USAGE

    def test_goal_required(self, capsys):
        assert run(capsys, "reduce")[0] == EXIT_USAGE

    def test_selected_keyword_removed(self, capsys, tmp_path):
        catalog = json.loads("\n".join(
            line for line in (BUNDLED_DATA_DIR / "sdg_catalog.json").read_text().splitlines()
            if not line.startswith("#")
        ))
        catalog[0]["selected_three"] = ["poverty", "poor", "poverty_line"]
        path = tmp_path / "catalog.json"
        path.write_text(json.dumps(catalog))
        code, out, err = run(capsys, "reduce", "--goal", "1", "--catalog", str(path))
        assert code == EXIT_CHECK_FAILED
        assert "NOT all survive" in out


class TestTag:
    def test_tags_records_in_order(self, capsys, linkage_file, write_corpus, make_record):
        corpus = write_corpus([make_record("b", jel_codes=["I32"]), make_record("a", jel_codes=[])])
        code, out, _ = run(capsys, "tag", "--records", str(corpus), "--linkage", str(linkage_file))
        assert code == EXIT_OK
        lines = [json.loads(line) for line in out.splitlines()]
        assert [d["id"] for d in lines] == ["b", "a"]
        assert lines[0]["argmax"] == 1
        assert lines[1] == {"id": "a", "scores": {}, "argmax": None}

    def test_empty_corpus(self, capsys, linkage_file, write_corpus):
        code, out, _ = run(capsys, "tag", "--records", str(write_corpus([])), "--linkage", str(linkage_file))
        assert code == EXIT_OK
        assert out == ""

    def test_unknown_code_warns(self, capsys, linkage_file, write_corpus, make_record):
        corpus = write_corpus([make_record("x", jel_codes=["X99", "I32"])])
        code, out, err = run(capsys, "tag", "--records", str(corpus), "--linkage", str(linkage_file))
        assert code == EXIT_OK
        assert "unknown JEL code X99" in err
        assert json.loads(out)["argmax"] == 1

    def test_missing_linkage(self, capsys, tmp_path, write_corpus):
        code, _, _ = run(capsys, "tag", "--records", str(write_corpus([])), "--linkage", str(tmp_path / "none.json"))
        assert code == EXIT_USAGE

    def test_tampered_linkage(self, capsys, linkage_file, write_corpus):
        data = json.loads(linkage_file.read_text())
        data["entries"]["1"][0]["score_num"] += 1
        linkage_file.write_text(json.dumps(data))
        code, _, err = run(capsys, "tag", "--records", str(write_corpus([])), "--linkage", str(linkage_file))
        assert code == EXIT_USAGE
        assert "Bad linkage table" in err

    def test_linkage_entries_not_a_list(self, capsys, tmp_path, write_corpus):
        path = tmp_path / "linkage.json"
        path.write_text(json.dumps({"method": "lafleur", "weighting": "top5", "entries": {"1": None}}))
        code, out, _ = run(capsys, "tag", "--records", str(write_corpus([])), "--linkage", str(path))
        assert code == EXIT_USAGE
        assert out == ""


class TestTrend:
    def synthetic(self, make_record):
        records, n = [], 0
        for year in range(2000, 2021):
            for _ in range(max(0, 2015 - year)):
                records.append(make_record(f"r{n}", year, "Reaching the Millennium Development Goals"))
                n += 1
            for _ in range(max(0, year - 2012)):
                records.append(make_record(f"r{n}", year, "A title", "On the sustainable development goals"))
                n += 1
            records.append(make_record(f"r{n}", year, "Unrelated"))
            n += 1
        return records

    def test_series(self, capsys, write_corpus, make_record):
        corpus = write_corpus(self.synthetic(make_record))
        code, out, _ = run(
            capsys, "trend", "--records", str(corpus),
            "--group", "SDG=sustainable development goal;sustainable development goals",
            "--group", "MDG=millennium development goal;millennium development goals",
            "--from", "2000", "--to", "2020",
        )
        assert code == EXIT_OK
        table = rows(out)
        assert table[0] == ["year", "SDG", "MDG"]
        counts = {int(r[0]): (int(r[1]), int(r[2])) for r in table[1:]}
        assert sorted(counts) == list(range(2000, 2021))
        assert counts == {y: (max(0, y - 2012), max(0, 2015 - y)) for y in range(2000, 2021)}
        assert counts[2013][0] < counts[2013][1] and counts[2014][0] > counts[2014][1]

    def test_default_groups(self, capsys, write_corpus, make_record):
        corpus = write_corpus(self.synthetic(make_record))
        _, out, _ = run(capsys, "trend", "--records", str(corpus), "--from", "2019", "--to", "2020")
        assert out == "year\tSDGs\tMDGs\n2019\t7\t0\n2020\t8\t0\n"

    def test_no_records_in_range(self, capsys, write_corpus, make_record):
        corpus = write_corpus([make_record("a", 1990, "sustainable development goals")])
        _, out, _ = run(capsys, "trend", "--records", str(corpus), "--from", "2001", "--to", "2002")
        assert out == "year\tSDGs\tMDGs\n2001\t0\t0\n2002\t0\t0\n"

    @pytest.mark.parametrize("groups", [
        ["--group", "SDG=a", "--group", "SDG=b"],
        ["--group", "SDG"],
        ["--group", "=phrase"],
    ])
    def test_bad_groups(self, capsys, write_corpus, groups):
        code, _, _ = run(capsys, "trend", "--records", str(write_corpus([])), *groups)
        assert code == EXIT_USAGE


def test_settings_file(capsys, tmp_path):
    settings = tmp_path / "custom.yaml"
    settings.write_text("method: selected3\nweighting: uniform\ntop_k: 1\n")
    _, out, _ = run(capsys, "match", "--config", str(settings), "--goal", "13")
    assert [r[2] for r in rows(out)[1:]] == ["Q54"]


@pytest.mark.parametrize("content", [
    "top_k: 3.7\n",
    "top_k: true\n",
    "top_k: three\n",
    "years:\n  from: 2000.5\n  to: 2020\n",
])
def test_settings_reject_non_integers(capsys, tmp_path, content):
    settings = tmp_path / "custom.yaml"
    settings.write_text(content)
    code, out, err = run(capsys, "match", "--config", str(settings), "--goal", "1")
    assert code == EXIT_USAGE
    assert out == ""
    assert "must be an integer" in err


def test_settings_accept_integer_strings(capsys, tmp_path):
    settings = tmp_path / "custom.yaml"
    settings.write_text("top_k: \"1\"\n")
    code, out, _ = run(capsys, "match", "--config", str(settings), "--goal", "1")
    assert code == EXIT_OK
    assert [r[2] for r in rows(out)[1:]] == ["I32"]


def test_data_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(DATA_DIR_ENV, str(tmp_path / "empty"))
    assert run(capsys, "validate")[0] == EXIT_USAGE


def test_log_file(capsys, tmp_path):
    log_dir = tmp_path / "logs"
    assert run(capsys, "validate", "--log-dir", str(log_dir))[0] == EXIT_OK
    assert len(list(log_dir.glob("sdgjel_*.log"))) == 1


@pytest.mark.parametrize("argv", [
    ["validate"],
    ["match", "--method", "direct"],
    ["match", "--method", "lafleur", "--weighting", "harmonic", "--top", "5"],
    ["match", "--method", "selected3", "--format", "json"],
    ["reduce", "--goal", "3"],
    ["export-linkage", "--method", "selected3"],
])
def test_output_is_deterministic(capsys, argv):
    first = hashlib.sha256(run(capsys, *argv)[1].encode()).hexdigest()
    second = hashlib.sha256(run(capsys, *argv)[1].encode()).hexdigest()
    assert first == second


@pytest.mark.parametrize("method, weighting", [("selected3", "uniform"), ("lafleur", "top5")])
def test_default_weighting_follows_method(capsys, method, weighting):
    _, out, _ = run(capsys, "export-linkage", "--method", method)
    assert json.loads(out)["weighting"] == weighting
