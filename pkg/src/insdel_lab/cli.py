"""Command-line front end: ``insdel-lab <verb> ...``.

Exit codes: 0 success, 2 input error, 3 guard or budget exceeded,
4 soundness tripwire (an applicable bound fell below the exact distance).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .bounds import (
    CodeContext,
    c21_bound,
    c22_bound,
    half_singleton_bound,
    t21_bound_search,
)
from .codefile import format_code, format_perm, read_code, read_perm, write_code
from .codes import (
    DEFAULT_CODEWORD_GUARD,
    agfc_insert,
    cyclic_code,
    hermitian_example,
    reed_muller,
    reed_solomon,
)
from .errors import GuardExceeded, InsdelLabError, SoundnessViolation
from .galois import FieldSpec
from .metrics import DEFAULT_SUBSPACE_GUARD
from .ordering import (
    DEFAULT_BUDGET,
    MODES,
    OBJECTIVES,
    apply_and_report,
    rm_hyperplane_ordering,
    rm_t31_ordering,
    search_ordering,
)
from .report import AnalysisReport, analyze, code_summary
from .reproduce import CASES, run as run_reproduce

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_GUARD = 3
EXIT_SOUNDNESS = 4

GUARD_ENV = "INSDEL_LAB_GUARD"
WITNESS_BOUNDS = ("t21_search", "c21", "c22", "half_singleton")


class InputError(InsdelLabError, ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def env_guards(environ=os.environ) -> tuple[int, int]:
    """Default guards, overridden by ``INSDEL_LAB_GUARD``.

    The variable is either a single integer (the codeword guard) or
    ``codewords=N,subspaces=M`` with either key optional.
    """
    codewords, subspaces = DEFAULT_CODEWORD_GUARD, DEFAULT_SUBSPACE_GUARD
    raw = environ.get(GUARD_ENV, "").strip()
    if not raw:
        return codewords, subspaces
    try:
        if "=" not in raw:
            return int(raw), subspaces
        for part in raw.split(","):
            key, _, val = part.partition("=")
            if key.strip() == "codewords":
                codewords = int(val)
            elif key.strip() == "subspaces":
                subspaces = int(val)
            else:
                raise ValueError(key)
    except ValueError:
        raise InputError(f"cannot parse {GUARD_ENV}={raw!r}") from None
    return codewords, subspaces


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # defaults are suppressed on the verb parsers so flags given before the verb survive
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    g = p.add_argument_group("global options")
    g.add_argument("--max-codewords", type=int, default=d(None), help="codeword enumeration guard")
    g.add_argument("--max-subspaces", type=int, default=d(None), help="GHW subspace guard")
    g.add_argument("--threads", type=int, default=d(1), help="worker threads for the exact oracle")
    g.add_argument("--seed", type=int, default=d(0), help="seed for randomized searches")
    g.add_argument("--json", nargs="?", const="-", default=d(None), metavar="OUT",
                   help="emit JSON (to OUT, or stdout when omitted)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="insdel-lab",
        allow_abbrev=False,
        description="Exact insdel distances and upper bounds for small linear codes.",
        parents=[_global_flags(False)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _global_flags(True)
    sub = parser.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("construct", parents=[common], help="write a code file")
    c.add_argument("kind", choices=("rs", "rm", "cyclic", "hermitian", "agfc"))
    c.add_argument("--out", "-o", help="output path (stdout when omitted)")
    c.add_argument("--p", type=int, default=2, help="field characteristic (rs, cyclic)")
    c.add_argument("--m", type=int, help="extension degree (rs, cyclic) or RM variable count")
    c.add_argument("--poly", type=_int_list, help="field modulus, highest degree first")
    c.add_argument("--points", type=_int_list, help="RS evaluation points (default: all field elements)")
    c.add_argument("--k", type=int, help="RS dimension")
    c.add_argument("--u", type=int, help="RM degree")
    c.add_argument("--rm-ordering", choices=("default", "hyperplane", "t31"), default="default")
    c.add_argument("--n", type=int, help="cyclic code length")
    c.add_argument("--g", type=_int_list, help="cyclic generator, highest degree first")
    c.add_argument("--ordering", type=int, choices=(1, 2), default=1, help="Hermitian ordering")
    c.add_argument("--in", dest="in_path", help="parent code file (agfc)")
    c.add_argument("--f", type=_int_list, help="AGFC functional coefficients, length n")
    c.add_argument("--pos", type=int, help="AGFC insertion position, 1..n+1")

    a = sub.add_parser("analyze", parents=[common], help="exact metrics and bounds")
    a.add_argument("code")
    a.add_argument("--exact", action="store_true")
    a.add_argument("--ghw", action="store_true")
    a.add_argument("--bounds", action="store_true")
    a.add_argument("--all", action="store_true", help="same as --exact --ghw --bounds")
    a.add_argument("--perm", help="permutation file applied before analysis")

    for verb, text in (("bounds", "all twelve bounds"), ("exact", "exact insdel distance"),
                       ("ghw", "generalized Hamming weight profile")):
        v = sub.add_parser(verb, parents=[common], help=text)
        v.add_argument("code")

    w = sub.add_parser("witness", parents=[common], help="witness pair of one bound")
    w.add_argument("code")
    w.add_argument("--bound", choices=WITNESS_BOUNDS, default="t21_search")

    s = sub.add_parser("search-ordering", parents=[common], help="search coordinate orderings")
    s.add_argument("code")
    s.add_argument("--objective", choices=OBJECTIVES, default="exact_insdel")
    s.add_argument("--mode", choices=MODES, default="local_search")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--maximize", action="store_true")
    s.add_argument("--perm-out", help="write the best permutation to this file")

    r = sub.add_parser("reproduce", parents=[common], help="recompute the pinned reference values")
    r.add_argument("case", nargs="?", default="all", choices=CASES + ("all",))
    return parser


class Settings:
    def __init__(self, args: argparse.Namespace, environ=os.environ):
        env_cw, env_sub = env_guards(environ)
        self.codeword_guard = args.max_codewords if args.max_codewords is not None else env_cw
        self.subspace_guard = args.max_subspaces if args.max_subspaces is not None else env_sub
        self.threads = args.threads
        self.seed = args.seed
        self.json = args.json
        if self.threads < 1:
            raise InputError("--threads must be at least 1")

    def context(self, code) -> CodeContext:
        return CodeContext(code, self.codeword_guard, self.subspace_guard)


def _emit_json(data: dict, dest: str, out) -> None:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if dest == "-":
        out.write(text)
    else:
        Path(dest).write_text(text)


def _fmt_word(w) -> str:
    return "(" + ",".join(map(str, w)) + ")"


def _legend(q: int) -> list[str]:
    return ["legend: in GF(4), 2 = ω and 3 = ω²"] if q == 4 else []


def _bound_lines(bounds) -> list[str]:
    lines = [f"{'bound':16} {'value':>6}  note"]
    for b in bounds:
        value = str(b.value) if b.value is not None else "-"
        note = "" if b.applicable else f"inapplicable: {b.reason}"
        if b.applicable and b.params.get("mode") == "partial":
            note = "partial scan"
        lines.append(f"{b.name:16} {value:>6}  {note}".rstrip())
    return lines


def _report_lines(report: AnalysisReport) -> list[str]:
    c = report.code
    lines = [f"code: {c['label'] or '(unnamed)'}  q={c['q']} n={c['n']} k={c['k']}"
             + (f" d_H={c['d_H']}" if "d_H" in c else "")]
    if report.ghw is not None:
        lines.append("ghw: " + " ".join(f"d_{r}={v}" for r, v in enumerate(report.ghw, 1)))
    if report.exact is not None:
        e = report.exact
        lines.append(f"exact insdel distance: {e.distance} (lcs {e.lcs_length}, "
                     f"{e.pairs_examined} pairs)")
        if e.witness_pair:
            lines.append(f"  pair: {_fmt_word(e.witness_pair[0])} {_fmt_word(e.witness_pair[1])}")
    if report.bounds:
        lines.extend(_bound_lines(report.bounds))
    lines.extend(report.notes)
    lines.extend(_legend(c["q"]))
    return lines


def _write_report(report: AnalysisReport, settings: Settings, out) -> None:
    if settings.json:
        text = report.to_json()
        if settings.json == "-":
            out.write(text)
            return
        Path(settings.json).write_text(text)
    else:
        report.check_soundness()
    out.write("\n".join(_report_lines(report)) + "\n")


def cmd_construct(args, settings: Settings, out) -> int:
    kind = args.kind
    if kind == "rs":
        if args.k is None:
            raise InputError("rs needs --k")
        field = FieldSpec(args.p, args.m or 1, tuple(args.poly) if args.poly else None)
        points = args.points if args.points is not None else list(field.elements())
        code = reed_solomon(field, points, args.k)
    elif kind == "rm":
        if args.u is None or args.m is None:
            raise InputError("rm needs --u and --m")
        points = None
        if args.rm_ordering == "hyperplane":
            points = rm_hyperplane_ordering(args.m)
        elif args.rm_ordering == "t31":
            points = rm_t31_ordering(args.u, args.m)
        code = reed_muller(args.u, args.m, points, ordering=args.rm_ordering)
    elif kind == "cyclic":
        if args.n is None or args.g is None:
            raise InputError("cyclic needs --n and --g")
        field = FieldSpec(args.p, args.m or 1, tuple(args.poly) if args.poly else None)
        code = cyclic_code(field, args.n, args.g)
    elif kind == "hermitian":
        code = hermitian_example(args.ordering)
    else:
        if args.in_path is None or args.f is None or args.pos is None:
            raise InputError("agfc needs --in, --f and --pos")
        parent = read_code(args.in_path)
        code = agfc_insert(parent, args.f, args.pos - 1)
    if args.out:
        write_code(code, args.out)
    else:
        out.write(format_code(code))
    return EXIT_OK


def cmd_analyze(args, settings: Settings, out) -> int:
    code = read_code(args.code)
    want_exact = args.exact or args.all
    want_ghw = args.ghw or args.all
    want_bounds = args.bounds or args.all
    options = dict(
        exact=want_exact,
        ghw=want_ghw,
        bounds=want_bounds,
        codeword_guard=settings.codeword_guard,
        subspace_guard=settings.subspace_guard,
        threads=settings.threads,
        seed=settings.seed,
    )
    if args.perm:
        report = apply_and_report(code, read_perm(args.perm), **options)
    else:
        report = analyze(code, **options)
    _write_report(report, settings, out)
    return EXIT_OK


def cmd_bounds(args, settings: Settings, out) -> int:
    code = read_code(args.code)
    report = analyze(code, exact=False, ghw=False, bounds=True,
                     codeword_guard=settings.codeword_guard,
                     subspace_guard=settings.subspace_guard, seed=settings.seed)
    _write_report(report, settings, out)
    return EXIT_OK


def cmd_exact(args, settings: Settings, out) -> int:
    code = read_code(args.code)
    report = analyze(code, exact=True, ghw=False, bounds=False,
                     codeword_guard=settings.codeword_guard, threads=settings.threads,
                     seed=settings.seed)
    _write_report(report, settings, out)
    return EXIT_OK


def cmd_ghw(args, settings: Settings, out) -> int:
    code = read_code(args.code)
    report = analyze(code, exact=False, ghw=True, bounds=False,
                     codeword_guard=settings.codeword_guard,
                     subspace_guard=settings.subspace_guard, seed=settings.seed)
    _write_report(report, settings, out)
    return EXIT_OK


def cmd_witness(args, settings: Settings, out) -> int:
    code = read_code(args.code)
    ctx = settings.context(code)
    calc = {
        "t21_search": t21_bound_search,
        "c21": c21_bound,
        "c22": c22_bound,
        "half_singleton": half_singleton_bound,
    }[args.bound]
    result = calc(code, ctx)
    if settings.json:
        _emit_json(result.to_dict(), settings.json, out)
        if settings.json == "-":
            return EXIT_OK
    if result.witness is None:
        reason = result.reason or result.params.get("diagnostic", "no witness pair")
        out.write(f"{result.name}: no witness ({reason})\n")
        return EXIT_OK
    a, b = result.witness
    out.write(f"{result.name} = {result.value}\n{_fmt_word(a)}\n{_fmt_word(b)}\n")
    for line in _legend(code.q):
        out.write(line + "\n")
    return EXIT_OK


def cmd_search_ordering(args, settings: Settings, out) -> int:
    code = read_code(args.code)
    result = search_ordering(
        code,
        objective=args.objective,
        mode=args.mode,
        budget=args.budget,
        seed=settings.seed,
        maximize=args.maximize,
        guard=settings.codeword_guard,
    )
    if args.perm_out:
        Path(args.perm_out).write_text(format_perm(result.best_permutation))
    data = {
        "schema": 1,
        "code": code_summary(code),
        "search": result.to_dict(),
        "environment": {
            "tool_version": __version__,
            "guards": {"codewords": settings.codeword_guard},
            "seed": settings.seed,
        },
    }
    if settings.json:
        _emit_json(data, settings.json, out)
        if settings.json == "-":
            return EXIT_OK
    out.write(f"{'maximum' if args.maximize else 'minimum'} {args.objective}: {result.best_value} "
              f"(start {result.start_value}, {result.evaluations} evaluations)\n")
    out.write(format_perm(result.best_permutation))
    return EXIT_OK


def cmd_reproduce(args, settings: Settings, out) -> int:
    checks = run_reproduce(args.case)
    if settings.json:
        _emit_json({"schema": 1, "checks": [c.__dict__ | {"computed": repr(c.computed),
                                                          "expected": repr(c.expected)}
                                            for c in checks]}, settings.json, out)
        if settings.json == "-":
            return EXIT_OK if all(c.status != "FAIL" for c in checks) else 1
    for c in checks:
        out.write(c.line() + "\n")
    counts = {s: sum(c.status == s for c in checks) for s in ("PASS", "WARN", "FAIL")}
    out.write(f"{counts['PASS']} pass, {counts['WARN']} warn, {counts['FAIL']} fail\n")
    return EXIT_OK if counts["FAIL"] == 0 else 1


COMMANDS = {
    "construct": cmd_construct,
    "analyze": cmd_analyze,
    "bounds": cmd_bounds,
    "exact": cmd_exact,
    "ghw": cmd_ghw,
    "witness": cmd_witness,
    "search-ordering": cmd_search_ordering,
    "reproduce": cmd_reproduce,
}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None, environ=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    environ = os.environ if environ is None else environ
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        settings = Settings(args, environ)
        return COMMANDS[args.verb](args, settings, out)
    except SoundnessViolation as exc:
        err.write(f"soundness violation: {exc}\n")
        return EXIT_SOUNDNESS
    except GuardExceeded as exc:
        err.write(f"guard exceeded: {exc}\n")
        return EXIT_GUARD
    except (InsdelLabError, ValueError, ZeroDivisionError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main_entry() -> None:  # pragma: no cover
    sys.exit(main())
