"""Adapter-level checks: CoNLL-U validity, round-trip through the consumer
format, order preservation, determinism, and the CLI surface."""

import json
from pathlib import Path

import pytest

from nlp_adapter.cli import main, parse_batch
from nlp_adapter.conllu import ValidationError, render_document, validate_document
from nlp_adapter.engines import UnknownModelError, installed_models, load_engine
from nlp_adapter.micro import Token

PRIMARY_FIXTURES = Path(__file__).resolve().parents[2] / "tests" / "fixtures"

SENTENCES = [
    "Jeanne d'Arc est née à Domrémy.",
    "Victor Hugo était un écrivain français.",
    "Il aimait la mer.",
    "Marie Curie épousa Pierre Curie en 1895.",
]


class TestParseBatch:
    def test_output_passes_structural_validation(self):
        document = parse_batch(SENTENCES, "micro-fr")
        assert validate_document(document) == len(SENTENCES)

    def test_sentence_count_and_order_preserved(self):
        document = parse_batch(SENTENCES, "micro-fr")
        texts = [
            line.split("= ", 1)[1]
            for line in document.splitlines()
            if line.startswith("# text = ")
        ]
        assert texts == SENTENCES

    def test_round_trips_through_consumer_parser(self):
        relexkit = pytest.importorskip("relexkit")
        document = parse_batch(SENTENCES, "micro-fr")
        graphs = relexkit.parse_conllu(document)
        assert len(graphs) == len(SENTENCES)
        assert [g.sentence_text for g in graphs] == SENTENCES
        for g in graphs:
            assert relexkit.parse_conllu(relexkit.to_conllu(g)) == [g]

    def test_byte_identical_across_runs(self):
        assert parse_batch(SENTENCES, "micro-fr") == parse_batch(SENTENCES, "micro-fr")

    def test_empty_input_gives_header_only(self):
        document = parse_batch([], "micro-fr")
        lines = document.splitlines()
        assert lines[0].startswith("# generator = nlp-adapter")
        assert lines[1].startswith("# model = micro-fr")
        assert validate_document(document) == 0

    def test_model_recorded_in_header(self):
        document = parse_batch(SENTENCES, "micro-fr")
        assert "# model = micro-fr 1.0.0" in document.splitlines()[1]

    def test_unknown_model_lists_installed(self):
        with pytest.raises(UnknownModelError, match="micro-fr"):
            load_engine("no-such-model")
        assert "micro-fr" in installed_models()

    def test_committed_fixture_parses_are_adapter_output(self):
        sentences_path = PRIMARY_FIXTURES / "sentences.jsonl"
        parses_path = PRIMARY_FIXTURES / "parses.conllu"
        if not sentences_path.exists():
            pytest.skip("primary fixture corpus not present")
        sentences = [
            json.loads(line)["text"]
            for line in sentences_path.read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
        assert parse_batch(sentences, "micro-fr") == parses_path.read_text(
            encoding="utf-8"
        )


class TestErrorBlocks:
    def test_failed_sentence_becomes_error_block(self):
        parsed = [
            ("Une phrase correcte.", [Token(1, "Une", "un", "DET", 0, "root")]),
            ("phrase cassée", RuntimeError("boom")),
        ]
        document = render_document(parsed, "micro-fr", "1.0.0")
        assert "# error = boom" in document
        assert "# text = phrase cassée" in document
        # the error block carries no token rows but the text is never dropped
        assert validate_document(document) == 1


class TestValidator:
    def test_rejects_wrong_column_count(self):
        with pytest.raises(ValidationError, match="10 columns"):
            validate_document("1\tx\tx\tX\t_\t_\t0\troot\t_\n")

    def test_rejects_multiple_roots(self):
        bad = (
            "1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n"
            "2\tb\tb\tX\t_\t_\t0\troot\t_\t_\n"
        )
        with pytest.raises(ValidationError, match="exactly one root"):
            validate_document(bad)

    def test_rejects_head_cycle(self):
        bad = (
            "1\ta\ta\tX\t_\t_\t2\tdep\t_\t_\n"
            "2\tb\tb\tX\t_\t_\t1\tdep\t_\t_\n"
        )
        with pytest.raises(ValidationError, match="root|cycle"):
            validate_document(bad)

    def test_rejects_gapped_ids(self):
        bad = (
            "1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n"
            "3\tb\tb\tX\t_\t_\t1\tdep\t_\t_\n"
        )
        with pytest.raises(ValidationError, match="contiguous"):
            validate_document(bad)


class TestCli:
    def _write_sentences(self, path: Path):
        with open(path, "w", encoding="utf-8") as fh:
            for s in SENTENCES:
                fh.write(json.dumps({"text": s}, ensure_ascii=False) + "\n")

    def test_parse_command(self, tmp_path, capsys):
        infile = tmp_path / "sentences.jsonl"
        outfile = tmp_path / "parses.conllu"
        self._write_sentences(infile)
        rc = main(
            ["parse", "--lang", "fr", "--model", "micro-fr",
             "--in", str(infile), "--out", str(outfile)]
        )
        assert rc == 0
        document = outfile.read_text(encoding="utf-8")
        assert validate_document(document) == len(SENTENCES)

    def test_parse_twice_is_byte_identical(self, tmp_path):
        infile = tmp_path / "sentences.jsonl"
        self._write_sentences(infile)
        out1, out2 = tmp_path / "a.conllu", tmp_path / "b.conllu"
        assert main(["parse", "--model", "micro-fr", "--in", str(infile), "--out", str(out1)]) == 0
        assert main(["parse", "--model", "micro-fr", "--in", str(infile), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_unknown_model_exit_code_and_listing(self, tmp_path, capsys):
        infile = tmp_path / "sentences.jsonl"
        self._write_sentences(infile)
        rc = main(
            ["parse", "--model", "nope", "--in", str(infile), "--out", str(tmp_path / "o")]
        )
        assert rc == 1
        assert "micro-fr" in capsys.readouterr().err

    def test_missing_input_is_usage_error(self, tmp_path, capsys):
        rc = main(
            ["parse", "--model", "micro-fr", "--in", str(tmp_path / "absent"),
             "--out", str(tmp_path / "o")]
        )
        assert rc == 1

    def test_plain_string_lines_accepted(self, tmp_path):
        infile = tmp_path / "sentences.jsonl"
        infile.write_text('"Il aimait la mer."\n', encoding="utf-8")
        outfile = tmp_path / "o.conllu"
        assert main(["parse", "--model", "micro-fr", "--in", str(infile), "--out", str(outfile)]) == 0
        assert "# text = Il aimait la mer." in outfile.read_text(encoding="utf-8")

    def test_models_command(self, capsys):
        assert main(["models"]) == 0
        assert "micro-fr" in capsys.readouterr().out
