"""Command line interface.

Exit codes: 0 success, 2 usage or validation error, 3 malformed codeword.
"""

from __future__ import annotations

import argparse
import random
import re
import sys
from statistics import mean

from . import codec
from .fibseq import (
    MAX_INDEX,
    FibSequence,
    parse_sequence_spec,
    primitive_root,
    unique_form_conditions,
    zeckendorf_conditions,
)
from .kequiv import SparseSeq, binary_normalize, block_normalize
from .module_space import PRESET_NAMES, embed, format_element, parse_element, preset


class UsageError(Exception):
    pass


def _sequence(args) -> FibSequence:
    if (args.preset is None) == (args.spec is None):
        raise UsageError("give exactly one of --preset or --spec")
    if args.preset is not None:
        try:
            return preset(args.preset)[1]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        with open(args.spec) as fh:
            return parse_sequence_spec(fh.read())
    except (OSError, ValueError) as exc:
        raise UsageError(f"{args.spec}: {exc}") from None


def _coding_sequence(args) -> FibSequence:
    seq = _sequence(args)
    if not unique_form_conditions(seq):
        raise UsageError("sequence cannot be used for coding: needs F_0 = 0, rank k-1 and a spanning window")
    return seq


def _read_input(path, binary=False):
    if path in (None, "-"):
        return sys.stdin.buffer.read() if binary else sys.stdin.read()
    with open(path, "rb" if binary else "r") as fh:
        return fh.read()


def _write_output(path, data):
    if path in (None, "-"):
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            sys.stdout.write(data)
        return
    with open(path, "wb" if isinstance(data, bytes) else "w") as fh:
        fh.write(data)


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


# ---------------------------------------------------------------------------
# commands


def cmd_preset(args) -> None:
    if args.action == "list":
        for name in PRESET_NAMES:
            print(name)
        return
    if not args.name:
        raise UsageError("preset show needs a preset name")
    try:
        spec, seq = preset(args.name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not 1 <= args.terms <= MAX_INDEX:
        raise UsageError(f"--terms must be in [1, {MAX_INDEX}]")
    print(f"name: {spec.name}")
    print(f"rank: {spec.rank}")
    print(f"basis: {','.join(spec.labels)}")
    print(f"order: {seq.order}")
    for r in range(-1, -args.terms - 1, -1):
        e = seq.term(r)
        line = f"F[{r}] = {format_element(spec, e)}"
        if spec.name == "e8":
            line += "  ambient (" + ",".join(str(x) for x in embed(spec, e)) + ")"
        print(line)


def cmd_encode(args) -> None:
    if args.classic:
        try:
            n = int(args.element)
        except ValueError:
            raise UsageError(f"--classic needs a positive integer, got {args.element!r}") from None
        if n < 1:
            raise UsageError("--classic needs a positive integer")
        print(codec.classic_encode(n))
        return
    seq = _coding_sequence(args)
    m = parse_element(seq.spec, args.element)
    print(codec.encode(seq, m))


def cmd_decode(args) -> None:
    bits = codec.clean_bits(args.bits)
    if args.classic:
        print(codec.classic_decode(bits))
        return
    seq = _coding_sequence(args)
    print(format_element(seq.spec, codec.decode(seq, bits)))


def cmd_stream_encode(args) -> None:
    text = _read_input(args.input)
    if args.classic:
        ns = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                n = int(line)
                if n < 1:
                    raise ValueError("classic stream messages must be positive integers")
                ns.append(n)
        bits, k = codec.classic_encode_stream(ns), 2
    else:
        seq = _coding_sequence(args)
        bits, k = codec.encode_stream(seq, codec.read_messages(seq.spec, text)), seq.order
    _write_output(args.output, codec.pack(bits, k) if args.format == "packed" else bits + "\n")


def cmd_stream_decode(args) -> None:
    if args.format == "packed":
        bits, k = codec.unpack(_read_input(args.input, binary=True))
    else:
        bits, k = codec.clean_bits(_read_input(args.input)), None
    if args.classic:
        expected = 2
        res = codec.decode_frames(bits, 2, codec.classic_decode)
        out = "".join(f"{n}\n" for n in res.messages)
    else:
        seq = _coding_sequence(args)
        expected = seq.order
        res = codec.decode_frames(bits, seq.order, lambda f: codec.decode(seq, f))
        out = codec.write_messages(seq.spec, res.messages)
    if k is not None and k != expected:
        raise UsageError(f"container was written with k={k}, sequence has k={expected}")
    _write_output(args.output, out)
    for a, b, reason in res.skipped:
        print(f"skipped frame [{a}:{b}]: {reason}", file=sys.stderr)
    if res.trailing:
        print(f"trailing bits: {res.trailing}", file=sys.stderr)


def cmd_analyze(args) -> None:
    seq = _sequence(args)
    cond = zeckendorf_conditions(seq)
    print(f"module: {seq.spec.name} (rank {seq.spec.rank}, basis {','.join(seq.spec.labels)})")
    print(f"order: {seq.order}")
    print(f"spans: {_fmt_bool(cond.spans)}")
    print(f"rank_ok: {_fmt_bool(cond.rank_ok)}")
    print(f"two-way verdict: {_fmt_bool(cond.verdict)}")
    print(f"unique-form: {_fmt_bool(unique_form_conditions(seq))}")
    print(f"lambda1: {primitive_root(seq.order).value:.12f}")


def cmd_normalize(args) -> None:
    try:
        s = SparseSeq.parse(args.seq)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    trace = [] if args.trace else None
    if args.mode == "block":
        result = block_normalize(s, args.k, trace)
        text = str(result)
    else:
        if any(v < 0 for _, v in s.items()):
            raise UsageError("binary mode needs nonnegative coefficients")
        result = binary_normalize(s, args.k, trace)
        text = str(result) if result else "zero"
    for step, state in trace or ():
        print(f"  {step}: {state if state else 'zero'}")
    print(text)


def cmd_simulate(args) -> None:
    try:
        spec, seq = preset(args.preset)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    counts = codec.parse_edit_counts(args.edits)
    if args.trials < 1 or args.messages < 1:
        raise UsageError("--trials and --messages must be positive")
    affected, dists = [], []
    for t in range(args.trials):
        rng = random.Random(f"{args.seed}:{t}")
        ms = codec.random_elements(rng, spec, args.messages, args.bound)
        length = len(codec.encode_stream(seq, ms))
        edits = codec.random_edits(rng, length, counts)
        rep = codec.channel_trial(seq, ms, edits)
        first = min((e.pos for e in edits), default=0)
        dist = rep.resync_index - first if edits else 0
        affected.append(rep.affected)
        dists.append(dist)
        if not args.quiet:
            print(f"trial {t}: affected={rep.affected} resync={rep.resync_index} distance={dist}")
    print(f"trials: {args.trials}")
    print(f"max affected: {max(affected)}")
    print(f"mean affected: {mean(affected):.3f}")
    print(f"mean resync distance: {mean(dists):.3f}")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zeckmod", description="Zeckendorf representations and Fibonacci codes over free Z-modules")
    sub = p.add_subparsers(dest="command", required=True)

    def seq_flags(sp):
        sp.add_argument("--preset", help="integers, gaussian, eisenstein, quadratic:D or e8")
        sp.add_argument("--spec", help="sequence spec file")

    sp = sub.add_parser("preset", help="list or show presets")
    sp.add_argument("action", choices=["list", "show"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("--terms", type=int, default=10, help="how many backward terms to show")
    sp.set_defaults(func=cmd_preset)

    sp = sub.add_parser("encode", help="encode one element")
    seq_flags(sp)
    sp.add_argument("-e", "--element", required=True)
    sp.add_argument("--classic", action="store_true", help="classic order-2 code for positive integers")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="decode one codeword")
    seq_flags(sp)
    sp.add_argument("-b", "--bits", required=True)
    sp.add_argument("--classic", action="store_true")
    sp.set_defaults(func=cmd_decode)

    for name, func, help_ in (
        ("stream-encode", cmd_stream_encode, "encode a message file into one bit stream"),
        ("stream-decode", cmd_stream_decode, "split and decode a bit stream"),
    ):
        sp = sub.add_parser(name, help=help_)
        seq_flags(sp)
        sp.add_argument("-i", "--input", help="input file (default stdin)")
        sp.add_argument("-o", "--output", help="output file (default stdout)")
        sp.add_argument("--format", choices=["text", "packed"], default="text")
        sp.add_argument("--classic", action="store_true")
        sp.set_defaults(func=func)

    sp = sub.add_parser("analyze", help="check representation conditions of a sequence")
    seq_flags(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("normalize", help="block or binary normal form of a coefficient sequence")
    sp.add_argument("seq", help='index:coeff pairs, e.g. "-1:-2,1:-1,2:-2,4:1"')
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--mode", choices=["block", "binary"], default="binary")
    sp.add_argument("--trace", action="store_true")
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("simulate", help="channel error trials")
    sp.add_argument("--preset", default="gaussian")
    sp.add_argument("--messages", type=int, default=20)
    sp.add_argument("--edits", default="", help='e.g. "delete:1" or "flip:1,insert:1"')
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--bound", type=int, default=50, help="coordinate range of random messages")
    sp.add_argument("-q", "--quiet", action="store_true", help="summary only")
    sp.set_defaults(func=cmd_simulate)
    return p


_VALUE_FLAGS = ("-e", "--element", "-b", "--bits", "-k")
_NEGATIVE = re.compile(r"^[-\u2212]\d")


def _protect_negatives(argv: list[str]) -> list[str]:
    """Keep values such as ``-2+3i`` or ``-1:-2,1:1`` from being read as flags."""
    out: list[str] = []
    tail: list[str] = []
    for tok in argv:
        if out and out[-1] in _VALUE_FLAGS and tok[:1] in ("-", "\u2212"):
            flag = out.pop()
            out.append(f"{flag}={tok}" if flag.startswith("--") else flag + tok)
        elif _NEGATIVE.match(tok):
            tail.append(tok)
        else:
            out.append(tok)
    return out + ["--"] + tail if tail else out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_protect_negatives(argv))
    k = getattr(args, "k", None)
    if k is not None and not 2 <= k <= 32:
        parser.exit(2, f"{parser.prog}: error: -k must be in [2, 32]\n")
    try:
        args.func(args)
    except codec.CodewordError as exc:
        print(f"{parser.prog}: malformed codeword: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError, OSError, IndexError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
