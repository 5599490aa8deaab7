"""Command-line front end.

Exit status: 0 on success, 1 when a check fails (counterexample, not a
matchgate, replay mismatch), 2 on unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import sys

from . import formats
from .canonical import canonicalize, reconstruct
from .collapse import (
    HoloProblem,
    collapse_symmetric,
    collapse_via_cover,
    collapse_via_realizer,
    strip_columns,
    verify_collapse,
)
from .holant import InstanceError, evaluate, gadget_signature
from .matchgate import NotAMatchgateError, is_matchgate, pfaffian, signature_from_graph
from .tensor import MatrixView

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _parse(path: str, reader):
    try:
        return reader(_read(path))
    except formats.FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _is_json(text: str) -> bool:
    return text.lstrip().startswith(("{", "["))


def _load_function(path: str, split: int | None):
    """A signature document or an underlying-graph file, as (signature, split)."""
    text = _read(path)
    try:
        if _is_json(text):
            sig, file_split = formats.read_signature(text)
            return sig, split if split is not None else file_split
        g = formats.read_graph(text)
    except formats.FormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    return signature_from_graph(g), split if split is not None else g.split


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------


def cmd_eval(args) -> int:
    inst = _parse(args.instance, formats.read_instance)
    try:
        value = evaluate(inst, max_bits=args.max_bits)
    except InstanceError as exc:
        raise InputError(str(exc)) from None
    print(value)
    return OK


def cmd_signature(args) -> int:
    text = _read(args.file)
    try:
        if _is_json(text):
            inst = formats.read_instance(text)
            try:
                sig = gadget_signature(inst, max_bits=args.max_bits)
            except InstanceError as exc:
                raise InputError(str(exc)) from None
            split = None
        else:
            g = formats.read_graph(text)
            sig, split = signature_from_graph(g), g.split
    except formats.FormatError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    _emit(formats.write_signature(sig, split), args.output)
    return OK


def cmd_pfaffian(args) -> int:
    g = _parse(args.graph, formats.read_graph)
    print(pfaffian(g).compact())
    return OK


def cmd_check(args) -> int:
    sig, _ = _load_function(args.file, None)
    if any(d != 2 for d in sig.domains):
        raise InputError("matchgate signatures need Boolean variables")
    res = is_matchgate(sig)
    if not res:
        print(f"not a matchgate: rebuilt value differs at input {''.join(map(str, res.mismatch))}")
        return FAILED
    print("matchgate")
    if res.graph is not None:
        print("[graph]")
        sys.stdout.write(formats.write_graph(res.graph))
        print("[normalization]")
        sys.stdout.write(formats.write_log(res.log))
    return OK


def cmd_canonicalize(args) -> int:
    sig, split = _load_function(args.file, args.split)
    if split is None:
        raise InputError("need a split: pass --split or use a bipartite graph / signature with 'split'")
    if any(d != 2 for d in sig.domains) or not 0 <= split <= sig.arity:
        raise InputError(f"bad split {split} for domains {sig.domains}")
    try:
        form = canonicalize(MatrixView(sig, split))
    except NotAMatchgateError as exc:
        print(f"not a matchgate: {exc}", file=sys.stderr)
        return FAILED
    _emit(formats.write_canonical(form), args.output)
    return OK


def _load_problem(args) -> HoloProblem:
    base = _parse(args.base, formats.read_matrix)
    left = [_parse(p, lambda t: formats.read_signature(t)[0]) for p in args.left]
    right = [_parse(p, lambda t: formats.read_signature(t)[0]) for p in args.right]
    try:
        return HoloProblem(left, base, right)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_collapse(args) -> int:
    original = _load_problem(args)
    m, left, right = original.base, original.left, original.right
    try:
        if args.mode == "strip":
            consts = None if args.constants is None else tuple(int(c) for c in args.constants)
            result = strip_columns(m, right, consts, args.r, left)
        elif args.mode == "realizer":
            if not args.realizer:
                raise InputError("--realizer is required for mode realizer")
            result = collapse_via_realizer(m, _parse(args.realizer, formats.read_matrix), left, right)
        elif args.mode == "cover":
            if not (args.cover and args.coefficients):
                raise InputError("--cover and --coefficients are required for mode cover")
            p = _parse(args.cover, formats.read_matrix)
            q = _parse(args.coefficients, formats.read_matrix)
            result = collapse_via_cover(m, p, q, left, right)
        else:
            if len(left) != 1:
                raise InputError("mode symmetric takes exactly one --left signature")
            result = collapse_symmetric(left[0], m, right)
    except NotAMatchgateError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return FAILED
    except ValueError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return FAILED
    _emit(formats.write_collapse(result, original, args.mode), args.output)
    return OK


def _verify_canonical(args, text: str) -> int:
    try:
        form = formats.read_canonical(text)
    except formats.FormatError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    if not args.original:
        raise InputError("--original is required to verify a canonical form")
    sig, _ = _load_function(args.original, None)
    rebuilt = reconstruct(form)
    if rebuilt != sig:
        print("mismatch: replaying the logs does not reproduce the original signature")
        return FAILED
    print(f"ok: logs replay to the original signature (r = {form.r})")
    return OK


def _verify_collapse(args, text: str) -> int:
    try:
        collapsed, original, _ = formats.read_collapse(text)
    except formats.FormatError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    if original is None:
        raise InputError("collapse file carries no original problem")
    cert = collapsed.certificate
    moved = cert.replay(original.base)
    for c in range(moved.shape[1]):
        if c not in cert.kept and any(moved[:, c]):
            print(f"certificate replay: column {c} is nonzero but was stripped")
            return FAILED
    report = verify_collapse(original, collapsed, args.trials, args.seed, args.max_edges)
    print(report.summary())
    return OK if report else FAILED


def cmd_verify(args) -> int:
    text = _read(args.file)
    if _is_json(text):
        return _verify_collapse(args, text)
    return _verify_canonical(args, text)


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="holocollapse", description="Exact Holant, matchgate and base-collapse tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="value of a closed instance")
    p.add_argument("instance")
    p.add_argument("--max-bits", type=float, default=24)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("signature", help="signature of a gadget instance or an underlying graph")
    p.add_argument("file")
    p.add_argument("--max-bits", type=float, default=24)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("pfaffian", help="Pfaffian of an underlying graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_pfaffian)

    p = sub.add_parser("check-matchgate", help="membership test with witness")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("canonicalize", help="matching form with both transform logs")
    p.add_argument("file")
    p.add_argument("--split", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_canonicalize)

    p = sub.add_parser("collapse", help="shrink the base of #F | M H")
    p.add_argument("--mode", choices=("strip", "realizer", "cover", "symmetric"), required=True)
    p.add_argument("--base", required=True, help="matrix M (JSON)")
    p.add_argument("--left", action="append", default=[], help="left signature (repeatable)")
    p.add_argument("--right", action="append", default=[], help="right signature (repeatable)")
    p.add_argument("--realizer", help="matrix A (mode realizer)")
    p.add_argument("--cover", help="matrix P (mode cover)")
    p.add_argument("--coefficients", help="matrix Q (mode cover)")
    p.add_argument("--constants", help="stripped bit values, e.g. 11 (mode strip)")
    p.add_argument("--r", type=int, help="kept bit count (mode strip)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("verify", help="replay a canonical form or a collapse certificate")
    p.add_argument("file", help="canonical form text or collapse JSON ('-' for stdin)")
    p.add_argument("--original", help="signature or graph the canonical form came from")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-edges", type=int, default=6)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
