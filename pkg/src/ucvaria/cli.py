"""Command-line entry point.

    ucvaria analyze family.json -o out/ [--truth truth.json] [--figures]
    ucvaria blocks family.json
    ucvaria sim family.json [--block bv01]
    ucvaria fm family.json --format xml
    ucvaria eval out/fm.json truth.json
    ucvaria dot family.json [--what variants|fm|cb|bvNN]

Exit status: 0 on success, 1 on input or configuration errors, 2 on
internal errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import UcvariaError
from .evaluation import GroundTruth, evaluate
from .fca import build_aoc_poset, poset_to_dot
from .features import feature_model_to_dot, feature_model_to_xml
from .lsi import DEFAULT_THRESHOLD, LsiConfig, default_stopwords, read_stopwords
from .model import load_family
from .pipeline import analyze, blocks_document, write_artifacts

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2

DEFAULTS = {"threshold": DEFAULT_THRESHOLD, "lsi_rank": "full", "weighting": "tf",
            "stem": True, "stopwords": None}


class UsageError(UcvariaError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _rank(text: str):
    if text == "full":
        return "full"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'full', got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("rank must be >= 1")
    return value


def _threshold(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"threshold must lie in (0, 1], got {value}")
    return value


def _config_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("family", type=Path, help="family JSON file or member directory")
    p.add_argument("--config", type=Path, help="JSON file with default options")
    p.add_argument("--threshold", type=_threshold)
    p.add_argument("--lsi-rank", type=_rank)
    p.add_argument("--weighting", choices=("tf", "tfidf"))
    p.add_argument("--no-stem", dest="stem", action="store_const", const=False)
    p.add_argument("--stopwords", type=Path, help="stopword file, one word per line")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ucvaria",
                     description="Detect common and variable features across "
                                 "use-case diagram variants.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="run the whole pipeline and write artifacts")
    _config_options(p)
    p.add_argument("-o", "--output", type=Path, default=Path("out"))
    p.add_argument("--truth", type=Path, help="ground-truth features to evaluate against")
    p.add_argument("--figures", action="store_true", help="also render PNG figures")

    p = sub.add_parser("blocks", help="print the Common Block and Blocks of Variation")
    _config_options(p)

    p = sub.add_parser("sim", help="print per-block similarity matrices as CSV")
    _config_options(p)
    p.add_argument("--block", help="block id (cb, bv01, ...); default: all")

    p = sub.add_parser("fm", help="print the detected feature model")
    _config_options(p)
    p.add_argument("--format", choices=("json", "xml", "dot"), default="json")

    p = sub.add_parser("dot", help="print an AOC-poset or the FM in DOT")
    _config_options(p)
    p.add_argument("--what", default="variants",
                   help="'variants', 'fm', or a block id such as cb or bv01")

    p = sub.add_parser("eval", help="score a feature model JSON against a ground truth")
    p.add_argument("fm", type=Path)
    p.add_argument("truth", type=Path)
    return parser


def _load_config(args) -> LsiConfig:
    settings = dict(DEFAULTS)
    if args.config is not None:
        try:
            data = json.loads(args.config.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        settings.update(data)
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    stopwords = (read_stopwords(settings["stopwords"]) if settings["stopwords"]
                 else default_stopwords())
    return LsiConfig(rank=settings["lsi_rank"], threshold=settings["threshold"],
                     stemming=bool(settings["stem"]), stopwords=stopwords,
                     weighting=settings["weighting"])


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _run(args) -> int:
    if args.command == "eval":
        fm = json.loads(args.fm.read_text(encoding="utf-8"))
        report = evaluate(fm, GroundTruth.load(args.truth))
        _emit(report.to_json())
        return EXIT_OK

    cfg = _load_config(args)
    family = load_family(args.family)
    if args.command == "analyze":
        truth = GroundTruth.load(args.truth) if args.truth else None
        analysis = analyze(family, cfg, truth)
        written = write_artifacts(analysis, args.output, figures=args.figures)
        fm = analysis.feature_model
        print(f"{len(fm.mandatory)} mandatory, {len(fm.optional)} optional, "
              f"{len(fm.unmatched)} unmatched; {len(written)} files in {args.output}")
        if analysis.evaluation is not None:
            r = analysis.evaluation
            print(f"precision={r.precision:.4f} recall={r.recall:.4f} "
                  f"f_measure={r.f_measure:.4f}")
        return EXIT_OK

    analysis = analyze(family, cfg)
    if args.command == "blocks":
        _emit(json.dumps(blocks_document(analysis), indent=2, ensure_ascii=False) + "\n")
    elif args.command == "sim":
        chosen = [a for a in analysis.blocks if args.block in (None, a.block_id)]
        if not chosen:
            raise UsageError(f"no block {args.block!r}")
        for a in chosen:
            if len(chosen) > 1:
                _emit(f"# {a.block_id}\n")
            _emit(a.similarity.to_csv())
    elif args.command == "fm":
        fm = analysis.feature_model
        _emit({"json": fm.to_json, "xml": lambda: feature_model_to_xml(fm),
               "dot": lambda: feature_model_to_dot(fm)}[args.format]())
    elif args.command == "dot":
        if args.what == "variants":
            _emit(poset_to_dot(analysis.poset, "variants"))
        elif args.what == "fm":
            _emit(feature_model_to_dot(analysis.feature_model))
        else:
            match = [a for a in analysis.blocks if a.block_id == args.what]
            if not match:
                raise UsageError(f"no block {args.what!r}")
            _emit(poset_to_dot(build_aoc_poset(match[0].context), args.what))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return _run(args)
    except (UcvariaError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        logging.getLogger(__name__).exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
