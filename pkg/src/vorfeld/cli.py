"""Command-line front end: parse single sentences, run the regression corpus.

Exit codes for ``parse``: 0 with at least one reading, 1 with none, 2 on
errors (bad flags, lexicon trouble, unknown words).  ``corpus`` exits 0
only when every line meets its verdict.
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from .lexicon import Lexicon, LexiconError, corpus_text, fragment_text, load_lexicon
from .orderdomain import assign_fields, mask_positions
from .parser import (
    Derivation,
    LexicalGapError,
    ParseOptions,
    ParseResult,
    enumerate_readings,
    parse,
)


@dataclass(frozen=True)
class CorpusLine:
    number: int
    verdict: str  # 'OK' | 'OK=n' | 'BAD'
    expected: Optional[int]  # exact count for OK=n, else None
    sentence: str


@dataclass
class LineOutcome:
    line: CorpusLine
    readings: int
    passed: bool
    error: Optional[str]
    millis: float


@dataclass
class Report:
    outcomes: list[LineOutcome]

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    @property
    def totals(self) -> tuple[int, int]:
        good = sum(1 for o in self.outcomes if o.passed)
        return good, len(self.outcomes)


def tokenize_sentence(text: str) -> list[str]:
    """Whitespace tokenization after normalizing sentence punctuation.

    Strips one final '.', '!' or '?' and a leading comma (as written
    before subordinate clauses); German capitalization is preserved.
    """
    text = text.strip()
    if text.startswith(","):
        text = text[1:]
    text = text.strip()
    if text and text[-1] in ".!?":
        text = text[:-1]
    return text.split()


def parse_corpus_line(number: int, raw: str) -> Optional[CorpusLine]:
    """One ``VERDICT<TAB>sentence`` record; None for blanks and comments."""
    stripped = raw.strip()
    if not stripped or stripped.startswith("#"):
        return None
    if "\t" not in raw:
        raise ValueError(f"corpus line {number}: expected VERDICT<TAB>sentence")
    verdict, sentence = raw.split("\t", 1)
    verdict = verdict.strip()
    sentence = sentence.strip()
    expected: Optional[int] = None
    if verdict.startswith("OK="):
        try:
            expected = int(verdict[3:])
        except ValueError:
            raise ValueError(f"corpus line {number}: bad verdict {verdict!r}")
        if expected < 1:
            raise ValueError(f"corpus line {number}: OK=n requires n >= 1")
    elif verdict not in ("OK", "BAD"):
        raise ValueError(f"corpus line {number}: bad verdict {verdict!r}")
    if not tokenize_sentence(sentence):
        raise ValueError(f"corpus line {number}: empty sentence")
    return CorpusLine(number, verdict, expected, sentence)


def _load_lexicon_arg(path: Optional[str]) -> Lexicon:
    if path is None:
        return load_lexicon(fragment_text())
    with open(path, encoding="utf-8") as handle:
        return load_lexicon(handle.read())


def _print_derivation(derivation: Derivation, clause_type: str, out: TextIO) -> None:
    for line in derivation.tree_lines():
        print(line, file=out)
    print("fields:", file=out)
    for element, fld in assign_fields(derivation.sign, clause_type):
        cov = ",".join(str(p) for p in mask_positions(element.coverage))
        print(f"  {fld:2s} [{cov}] {' '.join(element.phon)}", file=out)


def cmd_parse(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    try:
        lexicon = _load_lexicon_arg(args.lexicon)
    except (OSError, LexiconError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    tokens = tokenize_sentence(args.sentence)
    if not tokens:
        print("error: empty sentence", file=err)
        return 2
    options = ParseOptions(mode=args.mode, edge_limit=args.edge_limit,
                           clause_type=args.clause_type)
    try:
        result = parse(tokens, lexicon, options)
    except LexicalGapError as exc:
        print(f"error: {exc}", file=err)
        return 2
    print(f"readings: {result.readings}", file=out)
    if result.limit_hit:
        print(f"edge limit {result.edge_limit} exceeded in {result.mode} mode "
              f"({len(result.edges)} edges built)", file=out)
    for i, (derivation, avm) in enumerate(enumerate_readings(result.derivations), 1):
        if args.print_derivation:
            print(f"-- derivation {i}", file=out)
            _print_derivation(derivation, result.clause_type, out)
        if args.print_avm:
            print(f"-- avm {i}", file=out)
            print(avm, file=out)
    return 0 if result.readings > 0 else 1


def run_corpus(lexicon: Lexicon, text: str, edge_limit: int = 50000) -> Report:
    """Parse every corpus line and judge it against its verdict.

    Lines are processed in order (outcomes keep corpus order); a lexical
    gap counts as a failing line, not a crash.
    """
    outcomes: list[LineOutcome] = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = parse_corpus_line(number, raw)
        if line is None:
            continue
        tokens = tokenize_sentence(line.sentence)
        start = time.perf_counter()
        error = None
        readings = 0
        try:
            result = parse(tokens, lexicon, ParseOptions(edge_limit=edge_limit))
            readings = result.readings
        except LexicalGapError as exc:
            error = str(exc)
        millis = (time.perf_counter() - start) * 1000.0
        if error is not None:
            passed = False
        elif line.verdict == "BAD":
            passed = readings == 0
        elif line.expected is not None:
            passed = readings == line.expected
        else:
            passed = readings >= 1
        outcomes.append(LineOutcome(line, readings, passed, error, millis))
    return Report(outcomes)


def _expected_text(line: CorpusLine) -> str:
    if line.verdict == "BAD":
        return "0"
    if line.expected is not None:
        return str(line.expected)
    return ">=1"


def format_report(report: Report) -> str:
    rows = []
    rows.append(f"{'line':>4}  {'status':6}  {'verdict':7}  {'want':>4}  {'got':>3}  "
                f"{'ms':>8}  sentence")
    for o in report.outcomes:
        status = "pass" if o.passed else "FAIL"
        got = "gap" if o.error else str(o.readings)
        rows.append(
            f"{o.line.number:>4}  {status:6}  {o.line.verdict:7}  "
            f"{_expected_text(o.line):>4}  {got:>3}  {o.millis:8.1f}  {o.line.sentence}"
        )
    good, total = report.totals
    rows.append(f"{good}/{total} lines pass")
    return "\n".join(rows)


def machine_report(report: Report) -> str:
    """Line-oriented key=value records (tab-separated; sentence last).

    All fields except time_ms are deterministic for identical inputs.
    """
    rows = []
    for o in report.outcomes:
        fields = [
            f"line={o.line.number}",
            f"status={'pass' if o.passed else 'fail'}",
            f"verdict={o.line.verdict}",
            f"expected={_expected_text(o.line)}",
            f"got={'gap' if o.error else o.readings}",
            f"time_ms={o.millis:.1f}",
            f"sentence={o.line.sentence}",
        ]
        rows.append("\t".join(fields))
    good, total = report.totals
    rows.append(f"total=passed {good} of {total}")
    return "\n".join(rows) + "\n"


def cmd_corpus(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    try:
        lexicon = _load_lexicon_arg(args.lexicon)
        if args.corpus is None:
            text = corpus_text()
        else:
            with open(args.corpus, encoding="utf-8") as handle:
                text = handle.read()
    except (OSError, LexiconError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    try:
        report = run_corpus(lexicon, text, edge_limit=args.edge_limit)
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return 2
    print(format_report(report), file=out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(machine_report(report))
    return 0 if report.passed else 1


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="vorfeld",
        description="HPSG parser for German verb clusters and partial VP fronting",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse one sentence")
    p.add_argument("--lexicon", help="fragment file (default: bundled German fragment)")
    p.add_argument("--sentence", required=True, help="sentence text")
    p.add_argument("--print-avm", action="store_true", help="print each reading's AVM")
    p.add_argument("--print-derivation", action="store_true",
                   help="print each reading's schema tree and field assignment")
    p.add_argument("--mode", choices=["licensing", "trace"], default="licensing")
    p.add_argument("--edge-limit", type=int, default=50000)
    p.add_argument("--clause-type", choices=["auto", "v2", "vfinal"], default="auto")

    c = sub.add_parser("corpus", help="run a regression corpus")
    c.add_argument("--lexicon", help="fragment file (default: bundled German fragment)")
    c.add_argument("--corpus", help="corpus file (default: bundled corpus)")
    c.add_argument("--out", help="write a machine-readable report here")
    c.add_argument("--edge-limit", type=int, default=50000)
    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    top = build_arg_parser()
    try:
        args = top.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.command == "parse":
        return cmd_parse(args, sys.stdout, sys.stderr)
    return cmd_corpus(args, sys.stdout, sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
