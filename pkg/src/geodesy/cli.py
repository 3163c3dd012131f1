"""``geodesy`` command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 a radius, capacity or
step budget was too small, 3 an oracle or acceptor contradicted itself or
a cross-check failed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .automata import DfaDeltaOracle, delta_from_dfa, dfa_from_selector, validate_dfa_against_ball
from .checks import all_words, reduce_check, sample_words
from .core import EMPTY, GeodesyError, Presentation, format_word, parse_word
from .growth import DEFAULT_WORD_BUDGET, growth_csv, growth_series
from .models import RelatorNotTrivial, RewritingModel, model_from_selector
from .oracles import (
    DEFAULT_CAPACITY,
    CapacityExceeded,
    RadiusExceeded,
    bfs_bounded,
    bfs_delta,
    bfs_geodesic,
    bfs_length,
    build_ball,
)
from .reductions import BudgetExhausted, EnumeratorConfig, NoDescentLetter, geodesic_from_delta

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_INCONSISTENT = 0, 1, 2, 3

COMMANDS = (
    "length",
    "bounded",
    "geodesic",
    "delta",
    "growth",
    "validate",
    "reduce-check",
    "geodesic-from-delta",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    model: str | None = None
    radius: int = 8
    via: str = "bfs"
    capacity: int = DEFAULT_CAPACITY
    enumerator: EnumeratorConfig = field(default_factory=EnumeratorConfig)
    word_budget: int = DEFAULT_WORD_BUDGET
    output: str = "text"
    args: list[str] = field(default_factory=list)
    word_file: str | None = None
    max_len: int = 5
    csv_path: str | None = None
    dfa: str | None = None
    presentation: str | None = None
    samples: int = 1000
    sample_lengths: tuple[int, ...] = (6, 7)
    seed: int = 0
    models: list[str] = field(default_factory=list)


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _lengths(text):
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated lengths, got {text!r}")
    if not values or min(values) < 0:
        raise argparse.ArgumentTypeError("lengths must be non-negative")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="geodesy", description="Geodesic problems in finitely generated groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def common(p, model_required=True):
        p.add_argument("--model", required=model_required,
                       help="free:k, abelian:k, bs:n or rewrite:PATH")
        p.add_argument("--radius", type=_nonneg, default=8, help="Cayley ball radius (default 8)")
        p.add_argument("--capacity", type=_positive, default=DEFAULT_CAPACITY,
                       help="maximum number of ball elements")

    p = sub.add_parser("length", help="geodesic length of each word")
    common(p)
    p.add_argument("words", nargs="*")
    p.add_argument("--word-file")

    p = sub.add_parser("geodesic", help="a geodesic representative of each word")
    common(p)
    p.add_argument("words", nargs="*")
    p.add_argument("--word-file")

    p = sub.add_parser("bounded", help="is the geodesic length at most K")
    common(p)
    p.add_argument("words", nargs="*", metavar="WORD K")
    p.add_argument("--word-file", help="lines of 'WORD K'")

    p = sub.add_parser("delta", help="l(ux) - l(u) for a geodesic u and letter x")
    common(p)
    p.add_argument("--via", choices=("bfs", "dfa"), default="bfs")
    p.add_argument("words", nargs="*", metavar="WORD LETTER")
    p.add_argument("--word-file", help="lines of 'WORD LETTER'")

    p = sub.add_parser("growth", help="geodesic and sphere counts up to a length")
    common(p)
    p.add_argument("--via", choices=("bfs", "dfa"), default="bfs")
    p.add_argument("--max-len", type=_nonneg, required=True)
    p.add_argument("--csv", dest="csv_path", help="also write the table as CSV")
    p.add_argument("--format", dest="output", choices=("text", "csv"), default="text")
    p.add_argument("--word-budget", type=_positive, default=DEFAULT_WORD_BUDGET)

    p = sub.add_parser("validate", help="compare a geodesic acceptor with the ball oracle")
    common(p, model_required=False)
    p.add_argument("--dfa", required=True, help="free:k or abelian:k")

    p = sub.add_parser("reduce-check", help="cross-check every reduction against the ball")
    p.add_argument("--model", action="append", required=True, dest="models",
                   help="repeatable model selector")
    p.add_argument("--radius", type=_nonneg, default=8)
    p.add_argument("--capacity", type=_positive, default=DEFAULT_CAPACITY)
    p.add_argument("--max-len", type=_nonneg, default=5, help="exhaustive word length")
    p.add_argument("--samples", type=_nonneg, default=1000)
    p.add_argument("--sample-lengths", type=_lengths, default=(6, 7))
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("geodesic-from-delta",
                       help="geodesic via a delta oracle and relator-conjugate search")
    common(p, model_required=False)
    p.add_argument("--presentation", required=True)
    p.add_argument("--word", dest="words", action="append", default=[])
    p.add_argument("--max-factors", type=_positive, default=2)
    p.add_argument("--max-conj", type=_nonneg, default=2)
    p.add_argument("--max-products", type=_positive, default=10**5)
    return parser


def load_run_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(command=ns.command)
    for name in ("model", "radius", "capacity", "via", "word_file", "max_len", "csv_path",
                 "output", "dfa", "presentation", "samples", "sample_lengths", "seed",
                 "models", "word_budget"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    cfg.args = list(getattr(ns, "words", []))
    if ns.command == "geodesic-from-delta":
        cfg.enumerator = EnumeratorConfig(ns.max_factors, ns.max_conj, ns.max_products)
    if cfg.via == "dfa":
        kind = (cfg.model or "").partition(":")[0]
        if kind not in ("free", "abelian"):
            raise UsageError(
                f"--via dfa needs a free:k or abelian:k model, got {cfg.model!r}: "
                "no regular geodesic language is available for it"
            )
    return cfg


def _read_batch(cfg: RunConfig, arity: int) -> list[list[str]]:
    items = list(cfg.args)
    if cfg.word_file:
        for line in Path(cfg.word_file).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if arity == 1:
                items.append(line)
            elif line:
                items.extend(line.split())
    if arity == 1:
        return [[w] for w in items]
    if len(items) % arity:
        raise UsageError(f"{cfg.command}: expected groups of {arity} arguments")
    return [items[i:i + arity] for i in range(0, len(items), arity)]


def _word(text, p):
    return EMPTY if text in ("ε", "") else parse_word(text, p)


def _letter(text, p):
    w = parse_word(text, p)
    if len(w) != 1:
        raise UsageError(f"expected a single letter, got {text!r}")
    return w[0]


def _run(cfg: RunConfig, out) -> int:
    cmd = cfg.command
    if cmd == "reduce-check":
        return _reduce_check(cfg, out)
    if cmd == "validate":
        return _validate(cfg, out)
    if cmd == "geodesic-from-delta":
        return _geodesic_from_delta(cfg, out)

    model = model_from_selector(cfg.model)
    p = model.presentation

    if cmd == "delta" and cfg.via == "dfa":
        dfa = dfa_from_selector(cfg.model)
        for u, x in _read_batch(cfg, 2):
            grows = delta_from_dfa(dfa, _word(u, p), _letter(x, p))
            # free and free abelian groups have only even relators: delta is never 0
            print(1 if grows else -1, file=out)
        return EXIT_OK

    if cmd == "growth":
        if cfg.via == "dfa":
            oracle = DfaDeltaOracle(dfa_from_selector(cfg.model))
        else:
            ball = build_ball(model, cfg.max_len, cfg.capacity)

            def oracle(u, x):
                return bfs_delta(ball, u, x) == 1

        table = growth_series(model, oracle, cfg.max_len, cfg.word_budget)
        text = growth_csv(table)
        if cfg.csv_path:
            Path(cfg.csv_path).write_text(text, encoding="utf-8")
        out.write(text if cfg.output == "csv" else table.render())
        return EXIT_OK

    ball = build_ball(model, cfg.radius, cfg.capacity)
    if cmd == "length":
        for (w,) in _read_batch(cfg, 1):
            print(bfs_length(ball, _word(w, p)), file=out)
    elif cmd == "geodesic":
        for (w,) in _read_batch(cfg, 1):
            print(format_word(bfs_geodesic(ball, _word(w, p)), p) or "ε", file=out)
    elif cmd == "bounded":
        for w, k in _read_batch(cfg, 2):
            try:
                bound = int(k)
            except ValueError:
                raise UsageError(f"bounded: K must be an integer, got {k!r}") from None
            print("yes" if bfs_bounded(ball, _word(w, p), bound) else "no", file=out)
    elif cmd == "delta":
        for u, x in _read_batch(cfg, 2):
            print(bfs_delta(ball, _word(u, p), _letter(x, p)), file=out)
    return EXIT_OK


def _validate(cfg, out):
    dfa = dfa_from_selector(cfg.dfa)
    model = model_from_selector(cfg.model or cfg.dfa)
    ball = build_ball(model, cfg.radius, cfg.capacity)
    report = validate_dfa_against_ball(dfa, ball, cfg.radius)
    print(f"acceptor {cfg.dfa} vs ball of {model.name}", file=out)
    print(report.render(model.presentation), file=out)
    return EXIT_OK if report.ok else EXIT_INCONSISTENT


def _reduce_check(cfg, out):
    status = EXIT_OK
    for selector in cfg.models:
        model = model_from_selector(selector)
        ball = build_ball(model, cfg.radius, cfg.capacity)
        letters = model.alphabet
        words = list(all_words(letters, cfg.max_len))
        if cfg.samples:
            words += sample_words(letters, cfg.samples, cfg.sample_lengths, cfg.seed)
        report = reduce_check(model, ball, words)
        out.write(report.render())
        if not report.ok:
            status = EXIT_INCONSISTENT
    return status


def _geodesic_from_delta(cfg, out):
    p = Presentation.load(cfg.presentation)
    model = (model_from_selector(cfg.model) if cfg.model
             else RewritingModel(p, assume_confluent=True, name=f"rewrite:{cfg.presentation}"))
    if model.presentation.generators != p.generators:
        raise UsageError("the model and the presentation use different generators")
    ball = build_ball(model, cfg.radius, cfg.capacity)

    def p2(u, x):
        return bfs_delta(ball, u, x) == 1

    for w in cfg.args:
        result = geodesic_from_delta(p2, p, _word(w, p), cfg.enumerator)
        print(format_word(result, p) or "ε", file=out)
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = load_run_config(argv)
        return _run(cfg, sys.stdout)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (RadiusExceeded, CapacityExceeded, BudgetExhausted) as exc:
        print(f"geodesy: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NoDescentLetter, RelatorNotTrivial) as exc:
        print(f"geodesy: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (GeodesyError, ValueError, OSError) as exc:
        print(f"geodesy: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
