"""End-to-end command-line behavior: subcommands, exit codes, output modes."""

from __future__ import annotations

import json

import pytest

from archive_recommender.cli import EXIT_CONFIG, EXIT_EMPTY, EXIT_OK, EXIT_USAGE, main
from archive_recommender.nbayes import load_model
from archive_recommender.ontology import load_index, save_index

TSV_DUMP = (
    "Top/Computers/Computer_Science\thttp://cs.example.edu/\tCS Dept\tResearch and teaching\n"
    "Top/World/Deutsch/Computer\thttp://beispiel.de/\tBeispiel\tSeite\n"
    "Top/Sports/Baseball\thttp://baseball.example.com/\tBaseball\tCards and scores\n"
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def records_of(out: str) -> list[dict]:
    return [json.loads(line) for line in out.splitlines() if line.strip()]


class TestUsageErrors:
    def test_no_command(self, capsys):
        code, _, err = run(capsys)
        assert code == EXIT_USAGE
        assert "usage" in err

    def test_unknown_command(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == EXIT_USAGE

    def test_missing_positional(self, capsys):
        code, _, _ = run(capsys, "recommend")
        assert code == EXIT_USAGE

    def test_bad_flag_value(self, capsys):
        code, _, _ = run(capsys, "recommend", "http://a.com/", "--top", "ten")
        assert code == EXIT_USAGE

    def test_help_exits_zero(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == EXIT_OK
        assert "COMMAND" in out


class TestConfigErrors:
    def test_no_archive_source(self, capsys, fixtures_dir):
        code, _, err = run(
            capsys, "recommend", "http://a.com/", "--index", str(fixtures_dir / "index.tsv")
        )
        assert code == EXIT_CONFIG
        assert "no archive source" in err

    def test_bad_weights(self, capsys, fixtures_dir):
        code, _, err = run(
            capsys,
            "recommend",
            "http://a.com/",
            "--fixtures",
            str(fixtures_dir),
            "--weights",
            "1,2,3",
        )
        assert code == EXIT_CONFIG

    def test_bad_datetime(self, capsys, fixtures_dir):
        code, _, err = run(
            capsys,
            "recommend",
            "http://a.com/",
            "--fixtures",
            str(fixtures_dir),
            "--datetime",
            "whenever",
        )
        assert code == EXIT_CONFIG
        assert "datetime" in err

    def test_unparseable_request_uri(self, capsys, fixtures_dir):
        code, _, _ = run(capsys, "recommend", "http://", "--fixtures", str(fixtures_dir))
        assert code == EXIT_CONFIG

    def test_missing_config_file(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "stats", "--config", str(tmp_path / "absent.conf")
        )
        assert code == EXIT_CONFIG
        assert "not found" in err

    def test_missing_log_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "analyze-logs", str(tmp_path / "absent.log"))
        assert code == EXIT_CONFIG


@pytest.fixture(scope="module")
def worked_example(fixtures_dir):
    import contextlib
    import io

    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        code = main(
            [
                "recommend",
                "http://odu.edu/compsci",
                "--datetime",
                "2014-03-01",
                "--fixtures",
                str(fixtures_dir),
                "--now",
                "2014-06-01T00:00:00Z",
                "--output",
                "records",
            ]
        )
    return code, records_of(buffer.getvalue())


class TestRecommend:
    def test_exit_ok(self, worked_example):
        code, _ = worked_example
        assert code == EXIT_OK

    def test_result_record_first(self, worked_example):
        _, records = worked_example
        head = records[0]
        assert head["type"] == "result"
        assert head["route"] == "classified-deep"
        assert head["returned"] == 8
        assert {d["why"] for d in head["dropped"]} == {"not archived"}

    def test_recommendation_records(self, worked_example):
        _, records = worked_example
        recs = [r for r in records if r["type"] == "recommendation"]
        assert [r["position"] for r in recs] == list(range(1, 9))
        assert recs[0]["uri"] == "http://cs.odu.edu"
        assert recs[0]["memento_datetime"] == "2014-02-26T09:08:46Z"
        scores = [r["score"] for r in recs]
        assert scores == sorted(scores, reverse=True)

    def test_table_output(self, capsys, fixtures_dir):
        code, out, _ = run(
            capsys,
            "recommend",
            "http://odu.edu/compsci",
            "--datetime",
            "2014-03-01",
            "--fixtures",
            str(fixtures_dir),
            "--now",
            "2014-06-01T00:00:00Z",
            "--top",
            "2",
        )
        assert code == EXIT_OK
        assert "route: classified-deep" in out
        assert "memento:" in out
        assert out.count("\n    memento:") == 2  # --top honored

    def test_empty_result_exits_two(self, capsys, fixtures_dir):
        code, out, _ = run(
            capsys,
            "recommend",
            "http://qqxxyyzz.dev/",
            "--fixtures",
            str(fixtures_dir),
            "--now",
            "2014-06-01T00:00:00Z",
        )
        assert code == EXIT_EMPTY
        assert "no recommendations" in out

    def test_env_and_file_layering(self, capsys, fixtures_dir, tmp_path, monkeypatch):
        # env asks for records; the file pins top=1; the flag wins over both
        monkeypatch.setenv("ARCHREC_OUTPUT", "records")
        conf = tmp_path / "a.conf"
        conf.write_text(f"fixtures = {fixtures_dir}\ntop = 1\n", "utf-8")
        code, out, _ = run(
            capsys,
            "recommend",
            "http://odu.edu/compsci",
            "--datetime",
            "2014-03-01",
            "--now",
            "2014-06-01T00:00:00Z",
            "--config",
            str(conf),
            "--top",
            "2",
        )
        assert code == EXIT_OK
        recs = [r for r in records_of(out) if r["type"] == "recommendation"]
        assert len(recs) == 2


class TestIngest:
    def test_tsv_roundtrip(self, capsys, tmp_path):
        dump = tmp_path / "dump.tsv"
        dump.write_text(TSV_DUMP, "utf-8")
        out_path = tmp_path / "index.tsv"
        code, out, _ = run(
            capsys, "ingest", str(dump), "--index-out", str(out_path), "--output", "records"
        )
        assert code == EXIT_OK
        head = records_of(out)[0]
        assert head["kept"] == 2
        assert head["dropped_category"] == 1
        index = load_index(out_path)
        assert len(index) == 2

    def test_rdf(self, capsys, tmp_path, fixtures_dir):
        out_path = tmp_path / "index.tsv"
        code, out, _ = run(
            capsys,
            "ingest",
            str(fixtures_dir / "dmoz_sample.rdf"),
            "--format",
            "rdf",
            "--index-out",
            str(out_path),
        )
        assert code == EXIT_OK
        assert "kept 3" in out


class TestTrainAndEvaluate:
    @pytest.fixture()
    def taxonomy_index(self, taxonomy, tmp_path):
        path = tmp_path / "taxonomy.tsv"
        save_index(taxonomy, path)
        return path

    def test_train_writes_model(self, capsys, taxonomy_index, tmp_path):
        model_path = tmp_path / "l1.json"
        code, out, _ = run(
            capsys,
            "train",
            "--index",
            str(taxonomy_index),
            "--model-out",
            str(model_path),
            "--output",
            "records",
        )
        assert code == EXIT_OK
        head = records_of(out)[0]
        assert head["documents"] == 96
        assert head["classes"] == 4
        model = load_model(model_path)
        assert set(model.classes) == {"Arts", "Science", "Society", "Sports"}

    def test_train_rejects_unknown_variant(self, capsys, taxonomy_index, tmp_path):
        code, _, err = run(
            capsys,
            "train",
            "--index",
            str(taxonomy_index),
            "--model-out",
            str(tmp_path / "m.json"),
            "--variants",
            "strip-vowels",
        )
        assert code == EXIT_CONFIG
        assert "unknown variants" in err

    def test_evaluate_l1(self, capsys, taxonomy_index):
        code, out, _ = run(
            capsys,
            "evaluate-l1",
            "--index",
            str(taxonomy_index),
            "--folds",
            "4",
            "--output",
            "records",
        )
        assert code == EXIT_OK
        records = records_of(out)
        assert any(r.get("type") == "baseline" for r in records)
        summary = next(r for r in records if r.get("section") == "summary")
        assert summary["micro_f1"] == 1.0  # synthetic corpus is fully separable
        assert sum(1 for r in records if r.get("section") == "fold") == 4

    def test_evaluate_deep(self, capsys, taxonomy_index):
        code, out, _ = run(
            capsys,
            "evaluate-deep",
            "--index",
            str(taxonomy_index),
            "--output",
            "records",
        )
        assert code == EXIT_OK
        levels = [r for r in records_of(out) if r.get("section") == "level"]
        assert [r["key"] for r in levels] == [1, 2, 3]
        assert all(r["mi_f1"] == 1.0 for r in levels)


class TestLogsAndStats:
    def test_analyze_logs_table(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "analyze-logs", str(fixtures_dir / "access_log_sample.log"))
        assert code == EXIT_OK
        assert "filter summary" in out
        assert "kept: 7" in out

    def test_analyze_logs_records(self, capsys, fixtures_dir):
        code, out, _ = run(
            capsys,
            "analyze-logs",
            str(fixtures_dir / "access_log_sample.log"),
            "--output",
            "records",
        )
        assert code == EXIT_OK
        head = records_of(out)[0]
        assert head["type"] == "filter"
        assert head["kept"] == 7
        assert head["total_lines"] == 20

    def test_stats(self, capsys, fixtures_dir):
        code, out, _ = run(capsys, "stats", "--fixtures", str(fixtures_dir))
        assert code == EXIT_OK
        assert "uris" in out
        assert "489" in out
