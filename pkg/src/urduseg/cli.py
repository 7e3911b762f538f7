"""Command-line interface.

Subcommands: train, segment, eval, ablate, kappa, normalize, inspect.
Segmented text and reports go to stdout; every diagnostic goes to stderr.
Exit codes: 0 success, 1 usage error, 2 I/O failure, 3 corpus or model
format error. A JSON config file can supply defaults for any flag of a
subcommand; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import script
from .corpus import cohen_kappa, load_corpus
from .errors import (
    EmptyAfterNormalization,
    AlignmentMismatch,
    IoFailure,
    UrdusegError,
)
from .evaluation import ablate, evaluate
from .features import CUMULATIVE_RUNG_NAMES, FeatureTemplateSet, cumulative_ladder
from .pipeline import SegmentOptions, segment_text
from .serialization import describe_model, load_model, save_model
from .training import TrainConfig, train

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_FORMAT = 3

_FEATURE_FAMILIES = ("digit", "joiner", "class", "dir")
_LADDERS = {"table4": cumulative_ladder, "cumulative": cumulative_ladder}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage problems as exit code 1."""

    def error(self, message):
        raise _UsageError(message)


def _say(message):
    print(message, file=sys.stderr)


def _report_issues(corpus):
    for issue in corpus.issues:
        _say("warning: %s: %s" % (corpus.source, issue))


def _templates_from_args(args):
    spec = (args.features or "all").strip()
    if spec == "all":
        families = set(_FEATURE_FAMILIES)
    elif spec == "none":
        families = set()
    else:
        families = {part.strip() for part in spec.split(",") if part.strip()}
        unknown = families - set(_FEATURE_FAMILIES)
        if unknown:
            raise _UsageError(
                "unknown feature families: %s (choose from %s, or all/none)"
                % (", ".join(sorted(unknown)), ", ".join(_FEATURE_FAMILIES))
            )
    return FeatureTemplateSet(
        window=args.window,
        use_is_digit="digit" in families,
        use_is_joiner="joiner" in families,
        use_unicode_class="class" in families,
        use_direction="dir" in families,
        use_trigrams=args.trigrams,
    )


def _train_config_from_args(args):
    config = TrainConfig(
        l2_sigma=args.sigma,
        max_iterations=args.max_iter,
        convergence_tol=args.tol,
        optimizer=args.optimizer,
        use_transitions=not args.no_transitions,
        min_count=args.min_count,
    )
    config.validate()
    return config


def _open_in(path):
    if path is None:
        return sys.stdin
    try:
        return open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise IoFailure("cannot read %s: %s" % (path, exc)) from exc


def _open_out(path):
    if path is None:
        return sys.stdout
    try:
        return open(path, "w", encoding="utf-8")
    except OSError as exc:
        raise IoFailure("cannot write %s: %s" % (path, exc)) from exc


def _close(handle):
    if handle not in (sys.stdin, sys.stdout):
        handle.close()


def cmd_train(args):
    corpus = load_corpus(
        args.corpus, strip_diacritics=not args.keep_diacritics, strict=args.strict
    )
    _report_issues(corpus)
    templates = _templates_from_args(args)
    config = _train_config_from_args(args)
    model = train(corpus, templates, config)
    save_model(model, args.output)
    _say(
        "trained on %d sentences (%d features); model written to %s"
        % (len(corpus.sentences), len(model.feature_index), args.output)
    )
    return EXIT_OK


def cmd_segment(args):
    model = load_model(args.model)
    options = SegmentOptions(
        respect_existing_boundaries=args.respect_boundaries,
        strip_diacritics=not args.keep_diacritics,
    )
    fin = _open_in(args.input)
    fout = _open_out(args.output)
    try:
        for raw in fin:
            line = raw.rstrip("\n")
            try:
                fout.write(segment_text(line, model, options) + "\n")
            except EmptyAfterNormalization:
                fout.write("\n")
    finally:
        _close(fin)
        _close(fout)
    return EXIT_OK


def cmd_eval(args):
    model = load_model(args.model)
    corpus = load_corpus(
        args.gold, strip_diacritics=not args.keep_diacritics, strict=args.strict
    )
    _report_issues(corpus)
    report = evaluate(model, corpus)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK


def cmd_ablate(args):
    train_corpus = load_corpus(args.train, strip_diacritics=not args.keep_diacritics)
    test_corpus = load_corpus(args.test, strip_diacritics=not args.keep_diacritics)
    _report_issues(train_corpus)
    _report_issues(test_corpus)
    ladder = _LADDERS[args.ladder]()
    config = _train_config_from_args(args)
    rows = ablate(train_corpus, test_corpus, ladder, config)
    names = CUMULATIVE_RUNG_NAMES
    if args.json:
        payload = [
            {
                "rung": name,
                "templates": row.templates.to_dict(),
                "f1_word": row.f1_word,
                "f1_subword": row.f1_subword,
            }
            for name, row in zip(names, rows)
        ]
        print(json.dumps(payload, indent=2))
    else:
        print("%-22s %10s %10s" % ("features", "F1(B_w)", "F1(B_s)"))
        for name, row in zip(names, rows):
            print("%-22s %10.4f %10.4f" % (name, row.f1_word, row.f1_subword))
    return EXIT_OK


def cmd_kappa(args):
    strip = not args.keep_diacritics
    corpus_a = load_corpus(args.file_a, strip_diacritics=strip)
    corpus_b = load_corpus(args.file_b, strip_diacritics=strip)
    _report_issues(corpus_a)
    _report_issues(corpus_b)
    if len(corpus_a.sentences) != len(corpus_b.sentences):
        raise AlignmentMismatch(
            "annotation files differ in sentence count: %d vs %d"
            % (len(corpus_a.sentences), len(corpus_b.sentences))
        )
    pooled_a = []
    pooled_b = []
    for si, (sa, sb) in enumerate(zip(corpus_a.sentences, corpus_b.sentences)):
        if sa.chars != sb.chars:
            raise AlignmentMismatch(
                "sentence %d: annotation files disagree on the text itself" % (si + 1)
            )
        pooled_a.extend(sa.labels)
        pooled_b.extend(sb.labels)
    value = cohen_kappa(pooled_a, pooled_b)
    if args.json:
        print(json.dumps({"kappa": value, "positions": len(pooled_a)}))
    else:
        print("kappa: %.4f over %d positions" % (value, len(pooled_a)))
    return EXIT_OK


def cmd_normalize(args):
    fin = _open_in(args.input)
    fout = _open_out(args.output)
    try:
        for raw in fin:
            line = script.normalize(raw.rstrip("\n"))
            if not args.keep_diacritics:
                line = script.strip_diacritics(line)
            fout.write(line + "\n")
    finally:
        _close(fin)
        _close(fout)
    return EXIT_OK


def cmd_inspect(args):
    print(describe_model(load_model(args.model)))
    return EXIT_OK


def _add_corpus_flags(sub):
    sub.add_argument(
        "--keep-diacritics",
        action="store_true",
        help="keep diacritics instead of stripping the default set",
    )
    sub.add_argument(
        "--strict",
        action="store_true",
        help="fail on the first malformed corpus line instead of repairing",
    )


def _add_train_flags(sub):
    sub.add_argument("--window", type=int, default=3, choices=(0, 1, 2, 3),
                     help="character window half-width (default 3)")
    sub.add_argument("--features", default="all",
                     help="comma list of digit,joiner,class,dir or all/none (default all)")
    sub.add_argument("--trigrams", action="store_true",
                     help="add character trigram templates")
    sub.add_argument("--sigma", type=float, default=1.0,
                     help="L2 prior standard deviation (default 1.0)")
    sub.add_argument("--max-iter", type=int, default=500,
                     help="optimizer iteration cap (default 500)")
    sub.add_argument("--tol", type=float, default=1e-6,
                     help="relative objective-change stopping tolerance")
    sub.add_argument("--optimizer", choices=("lbfgs", "gd"), default="lbfgs",
                     help="lbfgs (default) or plain gradient descent")
    sub.add_argument("--min-count", type=int, default=1,
                     help="drop features seen fewer than this many times")
    sub.add_argument("--no-transitions", action="store_true",
                     help="pin transition/start weights at zero")


def _build_parser():
    parser = _Parser(
        prog="urduseg",
        description="Word and sub-word segmentation for Urdu text.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    submap = {}

    def add(name, func, help_text):
        sub = subparsers.add_parser(name, help=help_text)
        sub.set_defaults(func=func)
        sub.add_argument("--config", default=None,
                         help="JSON file with default values for the flags below")
        submap[name] = sub
        return sub

    sub = add("train", cmd_train, "train a model on an annotated corpus")
    sub.add_argument("corpus", help="annotated corpus file")
    sub.add_argument("-o", "--output", required=True, help="model file to write")
    _add_train_flags(sub)
    _add_corpus_flags(sub)

    sub = add("segment", cmd_segment, "segment raw text lines")
    sub.add_argument("-m", "--model", required=True, help="trained model file")
    sub.add_argument("-i", "--input", default=None, help="input file (default stdin)")
    sub.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    sub.add_argument("--keep-diacritics", action="store_true",
                     help="keep diacritics instead of stripping the default set")
    sub.add_argument("--respect-boundaries", action="store_true",
                     help="keep boundary markers already present in the input")

    sub = add("eval", cmd_eval, "score a model against a gold corpus")
    sub.add_argument("gold", help="gold annotated corpus file")
    sub.add_argument("-m", "--model", required=True, help="trained model file")
    sub.add_argument("--json", action="store_true", help="emit a JSON report")
    _add_corpus_flags(sub)

    sub = add("ablate", cmd_ablate, "train and score a ladder of feature sets")
    sub.add_argument("train", help="training corpus file")
    sub.add_argument("test", help="test corpus file")
    sub.add_argument("--ladder", choices=sorted(_LADDERS), default="table4",
                     help="which template ladder to run (default table4)")
    sub.add_argument("--json", action="store_true", help="emit JSON rows")
    _add_train_flags(sub)
    sub.add_argument("--keep-diacritics", action="store_true",
                     help="keep diacritics instead of stripping the default set")

    sub = add("kappa", cmd_kappa, "inter-annotator agreement of two files")
    sub.add_argument("file_a", help="first annotation file")
    sub.add_argument("file_b", help="second annotation file")
    sub.add_argument("--keep-diacritics", action="store_true",
                     help="keep diacritics instead of stripping the default set")
    sub.add_argument("--json", action="store_true", help="emit JSON")

    sub = add("normalize", cmd_normalize, "normalize raw text lines")
    sub.add_argument("-i", "--input", default=None, help="input file (default stdin)")
    sub.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    sub.add_argument("--keep-diacritics", action="store_true",
                     help="keep diacritics instead of stripping the default set")

    sub = add("inspect", cmd_inspect, "print a summary of a model file")
    sub.add_argument("-m", "--model", required=True, help="model file to describe")

    return parser, submap


def _apply_config_defaults(argv, submap):
    """Feed --config values in as subparser defaults (flags still win)."""
    if not argv or argv[0] not in submap:
        return
    path = None
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif token.startswith("--config="):
            path = token.split("=", 1)[1]
    if path is None:
        return
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure("cannot read config file %s: %s" % (path, exc)) from exc
    try:
        values = json.loads(text)
    except ValueError as exc:
        raise _UsageError("config file %s is not valid JSON: %s" % (path, exc))
    if not isinstance(values, dict):
        raise _UsageError("config file %s must hold a JSON object" % path)
    sub = submap[argv[0]]
    known = {action.dest for action in sub._actions}
    unknown = set(values) - known
    if unknown:
        raise _UsageError(
            "config file %s sets unknown options: %s"
            % (path, ", ".join(sorted(unknown)))
        )
    sub.set_defaults(**values)


def cli_main(argv=None):
    """Run the CLI; returns the process exit code."""
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, submap = _build_parser()
    try:
        _apply_config_defaults(argv, submap)
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            raise _UsageError("a subcommand is required (see --help)")
        return args.func(args)
    except _UsageError as err:
        _say("error: %s" % err)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse --help
        code = exc.code
        return int(code) if code else EXIT_OK
    except ValueError as err:
        _say("error: %s" % err)
        return EXIT_USAGE
    except IoFailure as err:
        _say("error: %s" % err)
        return EXIT_IO
    except UrdusegError as err:
        _say("error: %s" % err)
        return EXIT_FORMAT


def main():
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    for stream in (sys.stdin, sys.stdout, sys.stderr):
        try:
            stream.reconfigure(encoding="utf-8")
        except (AttributeError, ValueError):
            pass
    sys.exit(cli_main())
