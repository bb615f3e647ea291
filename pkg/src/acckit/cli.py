"""Command-line front door: generators, expansion, validation, audits,
finite planes, and rendering, wired for shell pipelines.

Subcommands that read an IN argument accept "-" for standard input.  The
structure-consuming commands (validate, stats, audit) detect the input
format from its header: a .wedge input is expanded on the fly, so
"acckit gen family --j 1 | acckit stats" works directly.

Exit codes: 0 when everything requested holds, 1 when a check fails or a
structure is invalid, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import audits, formats, render
from .family import family_wedge, gen_near_pencil, gen_pencil, gen_simple_cyclic
from .plane import NotPrime, pg2, sample_lines, structure_from_lines
from .structure import IncidenceStructure, InvalidStructureError, compute_stats, validate
from .wedge import ExpansionError, expand

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class _UsageError(Exception):
    pass


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc


def _detect_structure(text: str) -> IncidenceStructure:
    """Parse .acc directly; expand .wedge input on the fly."""
    for _, line in formats._significant_lines(text):
        if line.startswith("wedge"):
            return expand(formats.parse_wedge(text)).structure
        break
    return formats.parse_structure(text)


def _emit(out_path: str | None, text: str):
    if out_path and out_path != "-":
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _fraction(value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1/2, got {value!r}")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")
    common.add_argument("--quiet", action="store_true", help="suppress informational NOTE/NOTICE lines")

    parser = argparse.ArgumentParser(
        prog="acckit",
        description="pseudoline kaleidoscope and incidence-structure workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate wedges and structures")
    gen_sub = gen.add_subparsers(dest="generator", required=True)

    g_family = gen_sub.add_parser("family", parents=[common])
    g_family.add_argument("--j", type=int, required=True)

    for name in ("pencil", "near-pencil", "simple"):
        g = gen_sub.add_parser(name, parents=[common])
        g.add_argument("--n", type=int, required=True)

    g_pg2 = gen_sub.add_parser("pg2", parents=[common])
    g_pg2.add_argument("--p", type=int, required=True)
    g_pg2.add_argument("--n", type=int, default=None)
    g_pg2.add_argument("--seed", type=int, default=0)
    g_pg2.add_argument("--all", action="store_true")

    p_expand = sub.add_parser("expand", help="expand a wedge into a canonical .acc structure", parents=[common])
    p_expand.add_argument("input")

    p_validate = sub.add_parser("validate", help="check the structure axioms", parents=[common])
    p_validate.add_argument("input")

    p_stats = sub.add_parser("stats", help="exact statistics of a structure", parents=[common])
    p_stats.add_argument("input")
    p_stats.add_argument("--format", choices=("text", "machine"), default="text")

    p_audit = sub.add_parser("audit", help="run an exact audit")
    audit_sub = p_audit.add_subparsers(dest="audit", required=True)

    a_thm3 = audit_sub.add_parser("thm3", parents=[common])
    a_thm3.add_argument("input")

    a_dirac = audit_sub.add_parser("dirac", parents=[common])
    a_dirac.add_argument("input")

    a_pairs = audit_sub.add_parser("pairs", parents=[common])
    a_pairs.add_argument("input")

    a_dyadic = audit_sub.add_parser("dyadic", parents=[common])
    a_dyadic.add_argument("input")
    a_dyadic.add_argument("--gamma", type=_fraction, required=True)
    a_dyadic.add_argument("--v", type=int, required=True)

    a_dich = audit_sub.add_parser("dichotomy", parents=[common])
    a_dich.add_argument("input")
    a_dich.add_argument("--fraction", type=_fraction, required=True)

    p_render = sub.add_parser("render", help="emit an SVG diagram")
    render_sub = p_render.add_subparsers(dest="target", required=True)
    for target in ("wedge", "arrangement"):
        r = render_sub.add_parser(target, parents=[common])
        r.add_argument("input")

    return parser


def _cmd_gen(args) -> tuple[int, str]:
    if args.generator == "family":
        if args.j < 1:
            raise _UsageError("--j must be >= 1")
        return EXIT_OK, formats.serialize_wedge(family_wedge(args.j))
    if args.generator == "pencil":
        return EXIT_OK, formats.serialize_structure(gen_pencil(args.n))
    if args.generator == "near-pencil":
        return EXIT_OK, formats.serialize_structure(gen_near_pencil(args.n))
    if args.generator == "simple":
        return EXIT_OK, formats.serialize_structure(gen_simple_cyclic(args.n))
    if args.generator == "pg2":
        plane = pg2(args.p)
        if args.all:
            ids = tuple(range(len(plane.lines)))
        elif args.n is not None:
            ids = sample_lines(plane, args.n, args.seed)
        else:
            raise _UsageError("pg2 needs --all or --n")
        return EXIT_OK, formats.serialize_structure(structure_from_lines(plane, ids))
    raise AssertionError(args.generator)


def _cmd_validate(args) -> tuple[int, str]:
    s = _detect_structure(_read_input(args.input))
    report = validate(s)
    lines = []
    if report.valid:
        lines.append(f"valid alpha={s.alpha} n={s.n} vertices={len(s.vertices)}")
        code = EXIT_OK
    else:
        lines.append(f"invalid alpha={s.alpha} n={s.n} violations={len(report.violations)}")
        lines.extend(f"  {violation}" for violation in report.violations)
        code = EXIT_CHECK_FAILED
    return code, "\n".join(lines) + "\n"


def _cmd_stats(args) -> tuple[int, str]:
    s = _detect_structure(_read_input(args.input))
    stats = compute_stats(s)
    lines = []
    if args.format == "machine":
        lines.append(f"STAT alpha {s.alpha}")
        lines.append(f"STAT n {s.n}")
        lines.append(f"STAT vertices {len(s.vertices)}")
        lines.append(f"STAT r {stats.r}")
        for k, count in stats.tk.items():
            lines.append(f"TK {k} {count}")
        for d, count in stats.ld.items():
            lines.append(f"LD {d} {count}")
    else:
        lines.append(f"alpha = {s.alpha}, n = {s.n}, vertices = {len(s.vertices)}")
        lines.append(f"max curve degree r = {stats.r}")
        lines.append("t_k (vertices of degree k): " + ", ".join(f"t_{k}={c}" for k, c in stats.tk.items()))
        lines.append("l_d (pairs with min common-vertex degree d): " + ", ".join(f"l_{d}={c}" for d, c in stats.ld.items()))
    return EXIT_OK, "\n".join(lines) + "\n"


def _frac_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _cmd_audit(args) -> tuple[int, str]:
    s = _detect_structure(_read_input(args.input))
    stats = compute_stats(s)
    budget = audits.budget_from_env()
    lines: list[str] = []
    failed = False

    if args.audit == "thm3":
        report = audits.audit_tk_bounds(stats, s.alpha, s.n)
        for entry in report.entries:
            if entry.tk == 0:
                continue
            word = "holds" if entry.holds1 else "fails"
            failed |= not entry.holds1
            lines.append(f"CHECK thm3.part1.k{entry.k} {word} {_frac_text(entry.margin1)}")
            if entry.bound2_applicable:
                word = "holds" if entry.holds2 else "fails"
                failed |= not entry.holds2
                lines.append(f"CHECK thm3.part2.k{entry.k} {word} {_frac_text(entry.margin2)}")
        word = "holds" if report.part1_holds else "fails"
        lines.append(f"CHECK thm3.part1 {word} {_frac_text(report.part1_min_margin())}")
        margin2 = report.part2_min_margin()
        word = "holds" if report.part2_holds else "fails"
        lines.append(f"CHECK thm3.part2 {word} {_frac_text(margin2) if margin2 is not None else '0/1'}")
        failed |= not (report.part1_holds and report.part2_holds)

    elif args.audit == "dirac":
        report = audits.audit_dirac(s, budget)
        if not report.hypothesis_holds:
            witness = ",".join(str(i) for i in report.witness_subset)
            if not args.quiet:
                lines.append(
                    f"NOTICE dirac hypothesis_violated witness={witness} covers all {report.n} curves"
                )
        else:
            word = "holds" if report.g_ge_h else "fails"
            failed |= not report.g_ge_h
            lines.append(f"CHECK dirac.g_ge_h {word} {report.g_margin}/1")
            word = "holds" if report.binom_ineq_holds else "fails"
            failed |= not report.binom_ineq_holds
            lines.append(f"CHECK dirac.binom {word} {report.binom_margin}/1")
            if not args.quiet:
                witness = ",".join(str(i) for i in report.witness_subset)
                lines.append(f"NOTE dirac g={report.g} h={report.h} witness={witness}")

    elif args.audit == "pairs":
        report = audits.audit_pair_identity(stats, s.n)
        word = "holds" if report.holds else "fails"
        failed |= not report.holds
        lines.append(f"CHECK pairs {word} {report.observed}/{report.expected}")

    elif args.audit == "dyadic":
        params = audits.DyadicProfileParams(gamma=args.gamma, v=args.v)
        report = audits.dyadic_profile(stats, params, s.n)
        if not args.quiet:
            lines.append(f"NOTE dyadic window {report.lower} {report.upper}")
            lines.append(f"NOTE dyadic empty {'true' if report.empty_window else 'false'}")
            lines.append(f"NOTE dyadic below {report.below}")
            lines.append(f"NOTE dyadic inside {report.inside}")
            lines.append(f"NOTE dyadic above {report.above}")
        expected = audits.audit_pair_identity(stats, s.n).expected
        word = "holds" if report.total == expected else "fails"
        failed |= report.total != expected
        lines.append(f"CHECK dyadic.total {word} {report.total}/{expected}")

    elif args.audit == "dichotomy":
        report = audits.dichotomy_report(s, args.fraction, budget)
        witness = ",".join(str(i) for i in report.witness_subset)
        if not args.quiet:
            lines.append(f"NOTE dichotomy branch {report.branch}")
            lines.append(f"NOTE dichotomy coverage {report.coverage}/{report.n}")
            lines.append(f"NOTE dichotomy witness {witness}")
            lines.append(f"NOTE dichotomy vertices {report.vertex_count}")
    else:
        raise AssertionError(args.audit)

    code = EXIT_CHECK_FAILED if failed else EXIT_OK
    return code, ("\n".join(lines) + "\n") if lines else ""


def _cmd_render(args) -> tuple[int, str]:
    spec = formats.parse_wedge(_read_input(args.input))
    if args.target == "wedge":
        return EXIT_OK, render.render_wedge(spec)
    return EXIT_OK, render.render_arrangement(spec)


def dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    try:
        if args.command == "gen":
            code, text = _cmd_gen(args)
        elif args.command == "expand":
            spec = formats.parse_wedge(_read_input(args.input))
            code, text = EXIT_OK, formats.serialize_structure(expand(spec).structure)
        elif args.command == "validate":
            code, text = _cmd_validate(args)
        elif args.command == "stats":
            code, text = _cmd_stats(args)
        elif args.command == "audit":
            code, text = _cmd_audit(args)
        elif args.command == "render":
            code, text = _cmd_render(args)
        else:
            raise AssertionError(args.command)
    except (formats.ParseError, NotPrime, _UsageError, audits.SizeLimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ExpansionError, InvalidStructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    _emit(args.out, text)
    return code


def main(argv=None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)
