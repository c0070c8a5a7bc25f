"""Command-line entry point.

Subcommands:
  encode        print the digit code of a word
  dolch-stats   consecutive-same-key statistics over word lists
  candidates    rank candidate words for a digit code
  simulate      generate a synthetic session log
  analyze       compute metrics over session logs
  replay        verify a log replays deterministically
  serve         run the study-client HTTP service
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import data
from .decoder import DecoderConfig, Variant
from .errors import T9Error
from .layout import KeyboardGeometry, clean_word, code_of, consecutive_same_key_stats
from .metrics import MetricsReport
from .predictor import Lexicon, candidates as rank_candidates
from .session import SessionLog, StudyPlan, load_phrase_set, replay, sample_phrases
from .simulator import SimParams, simulate_session

LEXICON_ENV = "T9SWIPE_LEXICON"


def _load_lexicon(path: str | None) -> Lexicon:
    path = path or os.environ.get(LEXICON_ENV) or data.default_lexicon_path()
    return Lexicon.from_tsv(path)


def _load_words(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [clean_word(line) for line in fh if clean_word(line)]


def cmd_encode(args) -> int:
    print("".join(str(d) for d in code_of(args.word)))
    return 0


def cmd_dolch_stats(args) -> int:
    paths = args.words or [data.dolch_nonnouns_path(), data.dolch_nouns_path()]
    parts = [str(consecutive_same_key_stats(_load_words(p))) for p in paths]
    print("  ".join(parts))
    return 0


def cmd_candidates(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    code = tuple(int(c) for c in args.code)
    for cand in rank_candidates(code, args.k, lexicon):
        print(f"{cand.word}\t{cand.origin.value}")
    return 0


def cmd_simulate(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    if args.plan:
        with open(args.plan, encoding="utf-8") as fh:
            plan = StudyPlan.from_json_dict(json.load(fh))
    else:
        phrase_set = load_phrase_set(args.phrases or data.default_phrase_set_path())
        plan = StudyPlan.create(
            phrase_set, participant_id=args.participant, participant_index=args.index,
            seed=args.seed,
        )
    if args.params:
        with open(args.params, encoding="utf-8") as fh:
            params = SimParams.from_json_dict(json.load(fh))
    else:
        params = SimParams(seed=args.seed)
    log = simulate_session(plan, params, lexicon)
    log.write(args.out)
    print(f"wrote {args.out} ({len(log.events)} events)")
    return 0


def cmd_analyze(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    results = []
    for path in args.logs:
        results.extend(replay(SessionLog.read(path), lexicon))
    report = MetricsReport.from_results(results)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(report.to_csv())
    for variant, agg in report.per_variant.items():
        print(
            f"{variant}: {agg['phrases']} phrases, "
            f"wpm {agg['wpm']:.2f}, kspc {agg['kspc']:.3f}, wer {agg['wer']:.2f}%"
        )
    return 0


def cmd_replay(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    log = SessionLog.read(args.log)
    first = replay(log, lexicon)
    second = replay(log, lexicon)
    if first != second:
        print("replay is not deterministic", file=sys.stderr)
        return 1
    print(f"replayed {len(first)} phrases with zero mismatches")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    lexicon = _load_lexicon(args.lexicon)
    phrase_set = load_phrase_set(args.phrases or data.default_phrase_set_path())
    app = create_app(lexicon=lexicon, phrase_set=phrase_set)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="t9swipe", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="print the digit code of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("dolch-stats", help="consecutive-same-key word statistics")
    p.add_argument("--words", nargs="*", help="word-list files (default: bundled Dolch lists)")
    p.set_defaults(func=cmd_dolch_stats)

    p = sub.add_parser("candidates", help="rank candidates for a digit code")
    p.add_argument("code", help="digit string, e.g. 27753")
    p.add_argument("--lexicon")
    p.add_argument("-k", type=int, default=5)
    p.set_defaults(func=cmd_candidates)

    p = sub.add_parser("simulate", help="generate a synthetic session log")
    p.add_argument("--plan", help="StudyPlan JSON file")
    p.add_argument("--params", help="SimParams JSON file")
    p.add_argument("--phrases", help="phrase-set file (when no --plan)")
    p.add_argument("--participant", default="sim")
    p.add_argument("--index", type=int, default=0, help="participant index for counterbalancing")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lexicon")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="compute metrics over session logs")
    p.add_argument("logs", nargs="+")
    p.add_argument("--lexicon")
    p.add_argument("--out", help="JSON report path")
    p.add_argument("--csv", help="CSV report path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("replay", help="verify replay determinism of a log")
    p.add_argument("log")
    p.add_argument("--lexicon")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("serve", help="run the study-client HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--lexicon")
    p.add_argument("--phrases")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except T9Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
