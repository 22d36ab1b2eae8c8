import re

import pytest

from vorfeld.avm import read_fs
from vorfeld.cli import (
    format_report,
    machine_report,
    main,
    parse_corpus_line,
    run_corpus,
    tokenize_sentence,
)
from vorfeld.lexicon import corpus_text
from vorfeld.tfs import fs_equal


class TestTokenizer:
    def test_strips_final_punctuation(self):
        assert tokenize_sentence("Erzählen wird er seiner Tochter ein Märchen.") == [
            "Erzählen", "wird", "er", "seiner", "Tochter", "ein", "Märchen"]

    def test_strips_leading_comma(self):
        assert tokenize_sentence(", weil er ihr ein Märchen erzählen müssen wird.")[0] == "weil"

    def test_keeps_capitalization(self):
        assert tokenize_sentence("Müssen wird er.")[0] == "Müssen"

    def test_empty(self):
        assert tokenize_sentence("  . ") == []


class TestCorpusLineParsing:
    def test_blank_and_comment_skipped(self):
        assert parse_corpus_line(1, "") is None
        assert parse_corpus_line(2, "# comment") is None

    def test_verdicts(self):
        line = parse_corpus_line(3, "OK=2\tEr wird.")
        assert line.verdict == "OK=2" and line.expected == 2

    def test_malformed_verdict(self):
        with pytest.raises(ValueError, match="line 4"):
            parse_corpus_line(4, "FINE\tEr wird.")

    def test_missing_tab(self):
        with pytest.raises(ValueError, match="line 5"):
            parse_corpus_line(5, "OK Er wird.")


class TestCmdParse:
    def test_grammatical_sentence_exits_zero(self, capsys):
        rc = main(["parse", "--sentence", "Erzählen wird er seiner Tochter ein Märchen"])
        out = capsys.readouterr().out
        assert rc == 0
        assert re.search(r"readings: [1-9]", out)

    def test_starred_sentence_exits_one(self, capsys):
        rc = main(["parse", "--sentence", "Müssen wird er ihr ein Märchen erzählen"])
        assert rc == 1
        assert "readings: 0" in capsys.readouterr().out

    def test_empty_sentence_exits_two(self, capsys):
        rc = main(["parse", "--sentence", ""])
        assert rc == 2
        assert "error" in capsys.readouterr().err

    def test_unknown_word_exits_two(self, capsys):
        rc = main(["parse", "--sentence", "Hans schläft"])
        assert rc == 2
        assert "Hans" in capsys.readouterr().err

    def test_missing_lexicon_file_exits_two(self, capsys):
        rc = main(["parse", "--lexicon", "/nonexistent.lex", "--sentence", "Er wird"])
        assert rc == 2

    def test_printed_avm_reads_back(self, capsys, fragment):
        rc = main(["parse", "--sentence", "Seiner Tochter ein Märchen erzählen wird er",
                   "--print-avm"])
        assert rc == 0
        out = capsys.readouterr().out
        avm_text = out.split("-- avm 1\n", 1)[1]
        fs = read_fs(avm_text, fragment.hierarchy)
        assert fs_equal(read_fs(avm_text, fragment.hierarchy), fs)
        assert fs.nodes[fs.root].type == "phrasal-sign"

    def test_derivation_printing_shows_fields(self, capsys):
        rc = main(["parse", "--sentence", "Vortragen wird er es morgen",
                   "--print-derivation"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "VF" in out and "LB" in out and "pvp-slash-intro" in out

    def test_bad_flag_exits_two(self, capsys):
        assert main(["parse", "--sentence", "Er wird", "--mode", "psychic"]) == 2


class TestCmdCorpus:
    def test_bundled_corpus_passes(self, capsys):
        rc = main(["corpus"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "12/12 lines pass" in out

    def test_flipped_verdict_pinpoints_the_line(self, fragment, capsys, tmp_path):
        flipped = corpus_text().replace(
            "BAD\tMüssen wird er ihr ein Märchen erzählen.",
            "OK\tMüssen wird er ihr ein Märchen erzählen.")
        path = tmp_path / "corpus.tsv"
        path.write_text(flipped, encoding="utf-8")
        rc = main(["corpus", "--corpus", str(path)])
        out = capsys.readouterr().out
        assert rc == 1
        fail_lines = [l for l in out.splitlines() if "FAIL" in l]
        assert len(fail_lines) == 1
        assert "Müssen wird er" in fail_lines[0]

    def test_lexical_gap_counts_as_failure(self, tmp_path, capsys):
        path = tmp_path / "corpus.tsv"
        path.write_text("OK\tHans schläft.\nOK\tEr wird seiner Tochter ein Märchen erzählen müssen.\n",
                        encoding="utf-8")
        rc = main(["corpus", "--corpus", str(path)])
        out = capsys.readouterr().out
        assert rc == 1
        assert "gap" in out
        assert "1/2 lines pass" in out

    def test_malformed_line_exits_two(self, tmp_path, capsys):
        path = tmp_path / "corpus.tsv"
        path.write_text("OK\tEr wird seiner Tochter ein Märchen erzählen müssen.\nWAT\tfoo.\n",
                        encoding="utf-8")
        rc = main(["corpus", "--corpus", str(path)])
        err = capsys.readouterr().err
        assert rc == 2
        assert "line 2" in err

    def test_machine_report_written(self, tmp_path, capsys):
        out_path = tmp_path / "report.tsv"
        rc = main(["corpus", "--out", str(out_path)])
        capsys.readouterr()
        assert rc == 0
        text = out_path.read_text(encoding="utf-8")
        lines = text.strip().splitlines()
        assert lines[-1] == "total=passed 12 of 12"
        first = dict(kv.split("=", 1) for kv in lines[0].split("\t"))
        assert first["status"] == "pass"
        assert first["verdict"] == "OK"
        assert "time_ms" in first


class TestReportDeterminism:
    def test_byte_identical_modulo_timing(self, fragment):
        first = run_corpus(fragment, corpus_text())
        second = run_corpus(fragment, corpus_text())

        def normalize(report_text):
            return re.sub(r"time_ms=[0-9.]+", "time_ms=_", report_text)

        assert normalize(machine_report(first)) == normalize(machine_report(second))

        def normalize_table(text):
            return [re.sub(r"\s+[0-9]+\.[0-9]\s\s", " _ ", line)
                    for line in text.splitlines()]

        assert normalize_table(format_report(first)) == normalize_table(format_report(second))
