import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from conftest import DEMO_CORPUS, GOLDEN_DIR
from sere.cli import main
from sere.pipeline import PipelineConfig
from sere.service import Backend, create_app

BACKEND = f"corpus:{DEMO_CORPUS}"


@pytest.fixture
def runner():
    return CliRunner()


class TestQuery:
    def test_table_top_row_is_best_entity(self, runner):
        result = runner.invoke(
            main, ["query", "Angela Merkel", "--backend", BACKEND, "--format", "table"]
        )
        assert result.exit_code == 0
        rows = [line for line in result.output.splitlines() if line.lstrip().startswith("1 ")]
        assert len(rows) == 1
        assert "CDU" in rows[0] and "0.3685" in rows[0]

    def test_table_top_limits_rows(self, runner):
        result = runner.invoke(
            main, ["query", "Angela Merkel", "--backend", BACKEND, "--top", "3"]
        )
        assert result.exit_code == 0
        assert " Gerhard Schröder " not in result.output
        assert "Helmut Kohl" in result.output

    def test_xml_matches_golden(self, runner):
        result = runner.invoke(
            main, ["query", "Angela Merkel", "--backend", BACKEND, "--format", "xml"]
        )
        assert result.exit_code == 0
        assert result.stdout_bytes == (GOLDEN_DIR / "angela_merkel.xml").read_bytes()

    def test_xml_byte_identical_to_service(self, runner):
        backend = Backend(PipelineConfig(), corpus_path=str(DEMO_CORPUS), langs=("en",))
        client = TestClient(create_app(backend))
        for fields in (None, "sr,category"):
            args = ["query", "Angela Merkel", "--backend", BACKEND, "--format", "xml"]
            params = {"q": "Angela Merkel"}
            if fields:
                args += ["--fields", fields]
                params["fields"] = fields
            cli_out = runner.invoke(main, args)
            http_out = client.get("/api/explore", params=params)
            assert cli_out.stdout_bytes == http_out.content

    def test_json_output_parses(self, runner):
        result = runner.invoke(
            main, ["query", "Angela Merkel", "--backend", BACKEND, "--format", "json"]
        )
        assert result.exit_code == 0
        payload = json.loads(result.stdout_bytes)
        assert payload["concept"]["title"] == "Angela Merkel"

    def test_missing_term_is_usage_error(self, runner):
        result = runner.invoke(main, ["query"])
        assert result.exit_code == 2

    def test_blank_term_is_usage_error(self, runner):
        result = runner.invoke(main, ["query", "  ", "--backend", BACKEND])
        assert result.exit_code == 2

    def test_no_match_exit_code(self, runner):
        result = runner.invoke(main, ["query", "zzzz", "--backend", BACKEND])
        assert result.exit_code == 1
        assert "error:" in result.output

    def test_unknown_backend_is_usage_error(self, runner):
        result = runner.invoke(main, ["query", "Paris", "--backend", "oracle"])
        assert result.exit_code == 2

    def test_unreadable_corpus_is_backend_failure(self, runner, tmp_path):
        result = runner.invoke(
            main, ["query", "Paris", "--backend", f"corpus:{tmp_path}/absent.jsonl"]
        )
        assert result.exit_code == 3


class TestIngestCheck:
    def test_valid_fixture(self, runner):
        result = runner.invoke(main, ["ingest-check", str(DEMO_CORPUS)])
        assert result.exit_code == 0
        assert "20 articles" in result.output

    def test_duplicate_title(self, runner, tmp_path):
        path = tmp_path / "dup.jsonl"
        row = json.dumps({"title": "Euro", "text": "x", "links": [], "categories": []})
        path.write_text(row + "\n" + row + "\n")
        result = runner.invoke(main, ["ingest-check", str(path)])
        assert result.exit_code == 4
        assert "Euro" in result.output and "line 2" in result.output

    def test_malformed_line_number_reported(self, runner, tmp_path):
        path = tmp_path / "bad.jsonl"
        good = json.dumps({"title": "A", "text": "x", "links": [], "categories": []})
        path.write_text(good + "\n" * 6 + "{not json\n")
        result = runner.invoke(main, ["ingest-check", str(path)])
        assert result.exit_code == 4
        assert "line 7" in result.output
