"""Command-line front end.

    bidouble invariants "((5,2),(3,2),(1,2))" --format json
    bidouble compare "((28,8),(12,8))" "((30,8),(10,8))"
    bidouble search --max-n 5 --max-m 2
    bidouble singularity "1/8(1,3)"
    bidouble deform-profile "((3,2),(3,2),(3,2))"
    bidouble manetti 14 4 6 1

Exit status: 0 on success, 1 on invalid input, 2 on internal inconsistency.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from bidouble.configuration import Configuration, load_config_file
from bidouble.covers import canonicalize, line_bundle_degrees, parse_cover_type
from bidouble.deformations import manetti_check, natural_deformation_profile, pair_verdict, preserved_symmetry
from bidouble.errors import BidoubleError, InternalInconsistency, InvalidInput, NotClassT
from bidouble.graph import search_report
from bidouble.invariants import example_family_types, invariant_record
from bidouble.schema import DeformProfileReport, SearchFooter, SingularityReport
from bidouble.search import SearchConfig
from bidouble.singularities import link_lens_space, parse_cyclic_quotient, recognize_class_T, smoothing_family
from bidouble.utils import dump_json, format_fields, format_table, setup_logging

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors are invalid input (exit 1), not argparse's exit 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise InvalidInput(f"{self.prog}: {message}", "command line usage")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json"], default=None, help="Output format (default: table)")
    common.add_argument("--threads", type=int, default=None, help="Concurrent search partitions (overrides BIDOUBLE_THREADS)")
    common.add_argument("--log-level", default=None, help="Logging level on stderr")

    parser = _ArgumentParser(prog="bidouble", description="Invariants and certificates for bidouble covers of P1 x P1")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("invariants", parents=[common], help="Invariants of one cover type")
    p.add_argument("type")

    p = sub.add_parser("compare", parents=[common], help="Homeomorphism and non-deformation verdict for two types")
    p.add_argument("type1")
    p.add_argument("type2")

    p = sub.add_parser("search", parents=[common], help="Enumerate types and group them by signature")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--config", default=None, help="key=value search config file; flags win")
    p.add_argument("--no-general-type-filter", action="store_true")
    p.add_argument("--no-simply-connected-filter", action="store_true")
    p.add_argument("--no-certify", action="store_true")

    p = sub.add_parser("singularity", parents=[common], help="Recognize a class T cyclic quotient 1/m(1,q)")
    p.add_argument("quotient")

    p = sub.add_parser("deform-profile", parents=[common], help="Natural deformation degrees and counts")
    p.add_argument("type")

    p = sub.add_parser("manetti", parents=[common], help="Check the non-deformation hypotheses for (a,b,c,k)")
    for name in ("a", "b", "c", "k"):
        p.add_argument(name, type=int)

    return parser


def _invariants(args: argparse.Namespace, fmt: str, settings: Configuration) -> List[str]:
    t = parse_cover_type(args.type)
    record = invariant_record(t)
    if fmt == "json":
        return [dump_json(record)]

    k_first, k_second = record.canonical_bidegree
    bundles = " ".join(str(b) for b in line_bundle_degrees(t))
    return [
        format_fields(
            [
                ("type", t),
                ("class", t.cover_class.value),
                ("n", record.n),
                ("m", record.m),
                ("chi", record.chi),
                ("K^2", record.k_squared),
                ("q", record.q),
                ("p_g", record.p_g),
                ("K bidegree", f"({k_first},{k_second})"),
                ("L bundles", bundles),
                ("divisibility", record.divisibility or "refused (not general type)"),
                ("pi1", record.pi1.value),
                ("general type", record.general_type),
            ]
        )
    ]


def _compare(args: argparse.Namespace, fmt: str, settings: Configuration) -> List[str]:
    t1, t2 = parse_cover_type(args.type1), parse_cover_type(args.type2)
    verdict = pair_verdict(t1, t2)
    if fmt == "json":
        return [dump_json(verdict)]

    certificate = verdict.certificate
    return [
        format_fields(
            [
                ("types", f"{t1} vs {t2}"),
                ("homeo", verdict.homeo.value),
                ("nondef", verdict.nondef.value),
                ("signature", verdict.signature or "-"),
                ("certificate (a,b,c,k)", certificate.params() if certificate else "-"),
            ]
        )
    ]


def _search_config(args: argparse.Namespace, settings: Configuration) -> Dict[str, Any]:
    values: Dict[str, Any] = {"max_n": settings.max_n, "max_m": settings.max_m, "threads": settings.threads}
    if args.config:
        values.update(load_config_file(args.config))
    if args.max_n is not None:
        values["max_n"] = args.max_n
    if args.max_m is not None:
        values["max_m"] = args.max_m
    if args.no_general_type_filter:
        values["require_general_type"] = False
    if args.no_simply_connected_filter:
        values["require_simply_connected"] = False
    if args.no_certify:
        values["certify_nondef"] = False
    if args.threads is not None:
        values["threads"] = args.threads
    return values


def _search(args: argparse.Namespace, fmt: str, settings: Configuration) -> List[str]:
    values = _search_config(args, settings)
    try:
        threads = int(values.pop("threads"))
        cfg = SearchConfig(**values)
    except (ValidationError, ValueError) as e:
        raise InvalidInput(f"Invalid search configuration: {e}", "search config bounds >= 0") from e
    if threads < 1:
        raise InvalidInput(f"--threads must be >= 1, got {threads}", "threads >= 1")

    report = search_report(cfg, threads)
    summary = report.summary
    print(f"wall time: {summary.elapsed_seconds:.3f}s", file=sys.stderr)

    if fmt == "json":
        lines = [dump_json(group) for group in report.groups]
        lines.append(dump_json(SearchFooter(summary=summary)))
        return lines

    rows = [
        {
            "signature": str(group.signature),
            "members": " ".join(str(t) for t in group.members),
            "certified (a,b,c,k)": " ".join(
                f"{group.members[p.first]}~{group.members[p.second]}:{p.certificate.params()}"
                for p in group.certified_pairs
            ),
        }
        for group in report.groups
    ]
    footer = [
        f"types enumerated: {summary.enumerated}",
        f"filtered (not general type): {summary.filtered_not_general_type}",
        f"filtered (pi1 = Z/2): {summary.filtered_z2}",
        f"skipped (signature undetermined): {summary.skipped_undetermined}",
        f"pi1 = Z/2 types listed: {len(summary.z2_types)}",
        f"groups: {summary.groups}",
        f"certified pairs: {summary.certified_pairs}",
    ]
    if summary.z2_types:
        footer.append("pi1 = Z/2 (no homeomorphism claim): " + " ".join(str(t) for t in summary.z2_types))
    return [format_table(rows, ["signature", "members", "certified (a,b,c,k)"]), *footer]


def _singularity(args: argparse.Namespace, fmt: str, settings: Configuration) -> List[str]:
    quotient = parse_cyclic_quotient(args.quotient)
    try:
        datum = recognize_class_T(quotient)
    except NotClassT:
        report = SingularityReport(class_T=False)
        return [dump_json(report) if fmt == "json" else "not class T"]

    family = smoothing_family(datum)
    report = SingularityReport(
        class_T=True,
        d=datum.d,
        n=datum.n,
        a=datum.a,
        link=link_lens_space(datum),
        equation=family.render(),
    )
    if fmt == "json":
        return [dump_json(report)]

    m, q = link_lens_space(datum)
    return [
        format_fields(
            [
                ("singularity", quotient),
                ("class T", "yes"),
                ("(d,n,a)", datum.as_tuple()),
                ("link", f"L({m},{q})"),
                ("smoothing family", family.render(ascii_only=True)),
                ("group", family.describe_action(ascii_only=True)),
                ("smoothing parameters", family.parameter_count),
            ]
        )
    ]


def _deform_profile(args: argparse.Namespace, fmt: str, settings: Configuration) -> List[str]:
    t = parse_cover_type(args.type)
    profile = natural_deformation_profile(t)
    symmetry = preserved_symmetry(t)
    if fmt == "json":
        report = DeformProfileReport(cover_type=str(canonicalize(t)), profile=profile, preserved_symmetry=symmetry)
        return [dump_json(report)]

    rows = [
        {
            "branch": i + 1,
            "f degree": profile.f_degrees[i],
            "f sections": profile.f_dims[i],
            "phi degree": profile.phi_degrees[i],
            "phi sections": profile.phi_dims[i],
        }
        for i in range(3)
    ]
    return [
        format_table(rows, ["branch", "f degree", "f sections", "phi degree", "phi sections"]),
        f"total parameters: {profile.total_params}",
        f"preserved symmetry: {symmetry.value}",
    ]


def _manetti(args: argparse.Namespace, fmt: str, settings: Configuration) -> List[str]:
    certificate = manetti_check(args.a, args.b, args.c, args.k)
    if fmt == "json":
        return [dump_json(certificate)]
    if not certificate.satisfied:
        return ["not certified: violated " + ", ".join(certificate.violated_conditions)]

    t1, t2 = example_family_types(args.a, args.b, args.c, args.k)
    return ["certified: not deformation equivalent", f"types: {t1} vs {t2}"]


COMMANDS: Dict[str, Callable[[argparse.Namespace, str, Configuration], List[str]]] = {
    "invariants": _invariants,
    "compare": _compare,
    "search": _search,
    "singularity": _singularity,
    "deform-profile": _deform_profile,
    "manetti": _manetti,
}


def _load_settings() -> Configuration:
    try:
        return Configuration()
    except ValidationError as e:
        raise InvalidInput(f"Invalid BIDOUBLE_* settings: {e}", "environment settings") from e


def main(argv: Optional[Sequence[str]] = None) -> int:
    fmt = "table"
    try:
        settings = _load_settings()
        fmt = settings.output_format
        args = build_parser().parse_args(argv)
        fmt = args.format or settings.output_format
        setup_logging(args.log_level or settings.log_level)
        lines = COMMANDS[args.command](args, fmt, settings)
    except BidoubleError as e:
        logger.error(f"❌ {e}")
        print(dump_json(e.to_dict()) if fmt == "json" else f"error: {type(e).__name__} ({e.invariant}): {e.message}", file=sys.stderr)
        return 1
    except InternalInconsistency as e:
        logger.error(f"❌ Internal inconsistency: {e}", exc_info=True)
        print(dump_json(e.to_dict()) if fmt == "json" else f"internal error: {e}", file=sys.stderr)
        return 2

    for line in lines:
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
