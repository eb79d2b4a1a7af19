"""Command-line entry point: ``dicegroups <subcommand> [--config PATH | --preset NAME] ...``."""
from __future__ import annotations

import argparse
import random
import sys
from collections import Counter
from typing import Sequence

from .config import DiceConfig, parse_config
from .elements import DiceGroup
from .errors import DiceError
from .lucky import CONDITIONS, Status, lucky_infinitely_often, lucky_steps
from .order import OrderContext, is_smooth, order
from .presets import PRESETS, get_preset
from .quotient import TreeLayers, group_order, project
from .verify import SUITES, run_suite

EX_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--config", metavar="PATH", help="dice v1 configuration file")
    src.add_argument("--preset", metavar="NAME", help=f"built-in configuration ({', '.join(PRESETS)})")
    p.add_argument("--format", choices=("text", "tsv", "dot"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit-depth", type=int, default=None, metavar="N")
    p.add_argument("--limit-memo", type=int, default=None, metavar="N")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = _Parser(prog="dicegroups", description="Dice groups: orders, lucky rolls, level quotients.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="lucky-roll verdicts per step")
    p.add_argument("--condition", choices=sorted(CONDITIONS), default="ddmin")
    p.add_argument("--i-max", type=int, default=None, help="last step to check")

    p = sub.add_parser("order", parents=[common], help="exact order of a word")
    p.add_argument("--word", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the assertion suite of a preset")
    p.add_argument("name", nargs="?", help=f"preset ({', '.join(SUITES)})")

    p = sub.add_parser("sample", parents=[common], help="orders of random words")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-wlen", type=int, default=4)

    p = sub.add_parser("act", parents=[common], help="image of a vertex")
    p.add_argument("--word", required=True)
    p.add_argument("--vertex", required=True, help="dot-separated vertex indices, e.g. 3.0")

    p = sub.add_parser("portrait", parents=[common], help="portrait of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--output", metavar="FILE")

    p = sub.add_parser("quotient", parents=[common], help="order of the group induced on level n")
    p.add_argument("--words", required=True, help="comma-separated generator words")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--method", choices=("schreier-sims", "layers"), default="schreier-sims")
    return parser


def load_config(args) -> DiceConfig:
    if args.config and args.preset:
        raise UsageError("give either --config or --preset, not both")
    if args.preset:
        return get_preset(args.preset).config
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                return parse_config(fh.read())
        except OSError as e:
            raise UsageError(f"cannot read {args.config}: {e.strerror}") from None
    raise UsageError("a configuration is required: --config PATH or --preset NAME")


def _context(args) -> OrderContext:
    return OrderContext(max_depth=args.limit_depth, max_memo=args.limit_memo)


def cmd_check(args, out) -> int:
    config = load_config(args)
    k = len(config.prefix)
    i_max = args.i_max if args.i_max is not None else k + config.period
    if i_max < 1:
        raise UsageError("--i-max must be at least 1")
    verdicts = lucky_steps(config, i_max, args.condition)
    if args.format == "tsv":
        out.write("step\tcondition\tstatus\tdetail\n")
    for v in verdicts:
        if args.format == "tsv":
            out.write(f"{v.step}\t{args.condition}\t{v.status.value}\t{v.describe()}\n")
        else:
            out.write(f"step {v.step}: {v.describe()}\n")
    if args.format != "tsv":
        yes = lucky_infinitely_often(config, args.condition)
        out.write(f"lucky at infinitely many steps: {'yes' if yes else 'no'}\n")
    statuses = {v.status for v in verdicts}
    if Status.NOT_LUCKY in statuses:
        return 1
    if Status.UNDETERMINED in statuses:
        return 2
    return 0


def cmd_order(args, out) -> int:
    group = DiceGroup(load_config(args))
    x = group.from_word(args.word)
    res = order(x, _context(args))
    if args.format == "tsv":
        val = res.order if res.finite else "EXCEEDED"
        out.write(f"{args.word}\t{val}\t{res}\n")
    else:
        out.write(f"{res}\n")
    return 0 if res.finite else 2


def cmd_verify(args, out) -> int:
    name = args.name or args.preset
    if name is None:
        raise UsageError("verify needs a preset name")
    if name not in SUITES:
        raise UsageError(f"unknown preset {name!r}; available: {', '.join(SUITES)}")
    checks = run_suite(name)
    for c in checks:
        out.write(c.line() + "\n")
    failed = sum(not c.passed for c in checks)
    out.write(f"{len(checks) - failed}/{len(checks)} passed\n")
    return 0 if failed == 0 else 1


def cmd_sample(args, out) -> int:
    if args.count < 0 or args.max_wlen < 0:
        raise UsageError("--count and --max-wlen must be non-negative")
    group = DiceGroup(load_config(args))
    primes = group.config.primes
    rng = random.Random(args.seed)
    hist: Counter = Counter()
    bad = 0
    if args.format == "tsv":
        out.write("index\tword\torder\n")
    for idx in range(args.count):
        x = group.random_element(rng, args.max_wlen)
        res = order(x, _context(args))
        if res.finite:
            hist[res.order] += 1
            if not is_smooth(res.order, primes):
                bad += 1
        else:
            hist["EXCEEDED"] += 1
            bad += 1
        if args.format == "tsv":
            out.write(f"{idx}\t{x}\t{res.order if res.finite else 'EXCEEDED'}\n")
    if args.format != "tsv":
        out.write(f"sampled {args.count} words, max w-length {args.max_wlen}, seed {args.seed}\n")
        for key in sorted(hist, key=lambda k: (isinstance(k, str), k)):
            out.write(f"order {key}: {hist[key]}\n")
        label = ",".join(map(str, sorted(primes)))
        out.write(f"all finite and {{{label}}}-smooth: {'yes' if bad == 0 else 'no'}\n")
    return 0 if bad == 0 else 1


def _parse_vertex(group: DiceGroup, text: str) -> list[int]:
    try:
        codes = [int(t) for t in text.split(".")] if text else []
    except ValueError:
        raise UsageError(f"bad vertex {text!r}; expected dot-separated integers like 3.0") from None
    for d, c in enumerate(codes):
        size = group.config.shape(1 + d).size
        if not 0 <= c < size:
            raise UsageError(f"vertex digit {c} at depth {d + 1} is out of range 0..{size - 1}")
    return codes


def cmd_act(args, out) -> int:
    group = DiceGroup(load_config(args))
    x = group.from_word(args.word)
    image = group.act_codes(x, _parse_vertex(group, args.vertex))
    out.write(".".join(map(str, image)) + "\n")
    return 0


def cmd_portrait(args, out) -> int:
    if args.depth < 0:
        raise UsageError("--depth must be non-negative")
    group = DiceGroup(load_config(args))
    portrait = group.portrait(group.from_word(args.word), args.depth)
    if args.format == "dot":
        text = portrait.to_dot()
    else:
        sep = "\t" if args.format == "tsv" else " "
        rows = sorted(portrait.labels, key=lambda t: (len(t), t))
        text = "".join(f"{'.'.join(map(str, v)) or '-'}{sep}{portrait.labels[v]}\n" for v in rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def cmd_quotient(args, out) -> int:
    if args.level < 1:
        raise UsageError("--level must be at least 1")
    group = DiceGroup(load_config(args))
    words = [w.strip() for w in args.words.split(",")]
    perms = [project(group.from_word(w), args.level) for w in words]
    n = group_order(perms) if args.method == "schreier-sims" else TreeLayers(perms).order()
    out.write(f"{n}\n")
    return 0


COMMANDS = {
    "check": cmd_check,
    "order": cmd_order,
    "verify": cmd_verify,
    "sample": cmd_sample,
    "act": cmd_act,
    "portrait": cmd_portrait,
    "quotient": cmd_quotient,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    if hasattr(out, "reconfigure"):
        out.reconfigure(line_buffering=True)
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, DiceError) as e:
        print(f"dicegroups {args.command}: {e}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
