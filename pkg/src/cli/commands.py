"""
Command-line front end.

Every command is a thin adapter: load fixture files, call one operation,
render the result.  Construction commands (zalg, zalg-left, twist, delta,
gamma, compress, endo, from-iso, fixture) print a fixture document; check
commands (validate, verify-twist, check-iso, obstruct) print a report.

Exit status: 0 success or property holds, 1 property verified false (the
report carries the witness), 2 input error (message on stderr).
"""

from __future__ import annotations

import argparse
import logging
import logging.config
import sys
from pathlib import Path
from typing import Callable, Sequence

from src.config import Settings, get_settings
from src.endo import endo_g_algebra
from src.fixtures import fixture, list_fixtures
from src.foundations.errors import (
    CertificationFailed,
    UncertifiedIso,
    UnverifiedPrincipalMap,
    UnverifiedTwistingSystem,
    ZalgError,
)
from src.foundations.fields import FieldSpec
from src.foundations.groups import DegreeWindow, IndexWindow
from src.galgebra import (
    Side,
    associated_g_algebra,
    associated_left_g_algebra,
    check_g_algebra_iso,
    compress,
    principal_dimension_obstruction,
    validate_g_algebra,
)
from src.graded import check_algebra_automorphism, check_algebra_iso, validate_algebra
from src.twisting import (
    check_inverse_twist_relation,
    is_normalized,
    principal_to_twisting,
    twist_equivalence_from_iso,
    twisting_to_principal,
    verify_twisting_system,
    zhang_twist,
)

from .fixture_format import FixtureDocument, bundle_document, document_of, load_documents, print_document
from .reports import (
    CheckLine,
    CommandReport,
    check_from_validation,
    check_from_verdict,
    compact,
    render,
    render_fixture_list,
)

logger = logging.getLogger(__name__)

# Failed certifications are answers, not input errors.
VERIFIED_FALSE = (CertificationFailed, UncertifiedIso, UnverifiedPrincipalMap, UnverifiedTwistingSystem)


class Outcome:
    """Rendered output plus the exit status it implies."""

    def __init__(self, text: str, status: int = 0):
        self.text = text
        self.status = status


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _field(args: argparse.Namespace) -> FieldSpec | None:
    return FieldSpec.parse(args.field) if args.field else None


def _load(args: argparse.Namespace) -> FixtureDocument:
    return load_documents(args.files, field=_field(args))


def _index_window(args: argparse.Namespace, doc: FixtureDocument) -> IndexWindow | None:
    text = args.index_window or args.window
    return IndexWindow.parse(text, doc.group) if text else None


def _document(doc: FixtureDocument, expand: bool = False, **objects: dict) -> Outcome:
    return Outcome(print_document(document_of(doc.field, doc.group, **objects), expand=expand))


def _report(report: CommandReport, args: argparse.Namespace) -> Outcome:
    return Outcome(render(report, args.format), 0 if report.ok else 1)


# ---------------------------------------------------------------------------
# Check commands
# ---------------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> Outcome:
    doc = _load(args)
    checks = []
    algebras = doc.algebras
    g_algebras = doc.g_algebras
    if args.object:
        if args.object not in algebras and args.object not in g_algebras:
            raise ZalgError(f"no algebra or G-algebra named {args.object!r}")
        algebras = {k: v for k, v in algebras.items() if k == args.object}
        g_algebras = {k: v for k, v in g_algebras.items() if k == args.object}
    for name in sorted(algebras):
        checks.append(check_from_validation(validate_algebra(algebras[name]), f"algebra {name}"))
    for name in sorted(g_algebras):
        checks.append(check_from_validation(validate_g_algebra(g_algebras[name]), f"galgebra {name}"))
    if not checks:
        raise ZalgError("nothing to validate: no algebra or galgebra sections")
    subject = args.object or ",".join(sorted(algebras) + sorted(g_algebras))
    return _report(CommandReport(command="validate", subject=subject, checks=checks), args)


def cmd_verify_twist(args: argparse.Namespace) -> Outcome:
    doc = _load(args)
    tau = doc.pick("twist", args.object)
    A = tau.carrier
    verdict = verify_twisting_system(A, tau)
    checks = [check_from_verdict(verdict)]
    # the inverse relation inverts blocks, so it only runs on a verified system
    if verdict.ok:
        checks.append(check_from_verdict(check_inverse_twist_relation(A, tau)))
    facts = [("algebra", A.name), ("family", tau.family_window.format()),
             ("blocks", str(tau.block_count())), ("normalized", str(is_normalized(tau)).lower())]
    return _report(CommandReport(command="verify-twist", subject=tau.name, checks=checks, facts=facts), args)


def cmd_check_iso(args: argparse.Namespace) -> Outcome:
    doc = _load(args)
    if doc.morphisms and (args.object is None or args.object in doc.morphisms):
        phi = doc.pick("morphism", args.object)
        verdict = check_g_algebra_iso(phi.source, phi.target, phi)
    else:
        phi = doc.pick("map", args.object)
        if phi.source is phi.target:
            verdict = check_algebra_automorphism(phi.source, phi)
        else:
            verdict = check_algebra_iso(phi.source, phi.target, phi)
    facts = [("source", phi.source.name), ("target", phi.target.name)]
    subject = args.object or getattr(phi, "name", "phi")
    report = CommandReport(command="check-iso", subject=subject, checks=[check_from_verdict(verdict)], facts=facts)
    return _report(report, args)


def cmd_obstruct(args: argparse.Namespace) -> Outcome:
    doc = _load(args)
    R = doc.pick("galgebra", args.object)
    obstruction = principal_dimension_obstruction(R)
    first = obstruction.entries[0] if obstruction.entries else None
    check = {
        "name": "principal-dimension",
        "ok": obstruction.ok,
        "rule": "" if first is None else "dim R_(h,l) = dim R_(gh,gl)",
        "witness": "" if first is None else compact((first.source, first.target)),
        "detail": "" if first is None else f"shift {first.shift}: dims {first.source_dim} != {first.target_dim}",
        "checked": len(R.pairs()),
    }
    rows = [f"g={e.shift} {compact(e.source)} dim {e.source_dim} -> {compact(e.target)} dim {e.target_dim}"
            for e in obstruction.entries]
    report = CommandReport(command="obstruct", subject=R.name, checks=[CheckLine(**check)],
                           facts=[("scope", obstruction.scope), ("entries", str(len(obstruction.entries)))],
                           rows=rows)
    return _report(report, args)


# ---------------------------------------------------------------------------
# Construction commands
# ---------------------------------------------------------------------------


def _zalg(args: argparse.Namespace, side: Side) -> Outcome:
    doc = _load(args)
    A = doc.pick("algebra", args.object)
    I = _index_window(args, doc) or IndexWindow(group=A.group, lo=A.window.lo, hi=A.window.hi)
    build = associated_g_algebra if side is Side.RIGHT else associated_left_g_algebra
    R = build(A, I)
    return _document(doc, expand=True, g_algebras={R.name: R})


def cmd_zalg(args: argparse.Namespace) -> Outcome:
    return _zalg(args, Side.RIGHT)


def cmd_zalg_left(args: argparse.Namespace) -> Outcome:
    return _zalg(args, Side.LEFT)


def cmd_twist(args: argparse.Namespace) -> Outcome:
    doc = _load(args)
    tau = doc.pick("twist", args.object)
    twisted = zhang_twist(tau.carrier, tau)
    return _document(doc, algebras={twisted.name: twisted})


def cmd_delta(args: argparse.Namespace) -> Outcome:
    doc = _load(args)
    T = doc.pick("principal", args.object)
    tau = principal_to_twisting(T)
    return _document(doc, systems={tau.name: tau}, g_algebras={T.carrier.name: T.carrier})


def cmd_gamma(args: argparse.Namespace) -> Outcome:
    doc = _load(args)
    tau = doc.pick("twist", args.object)
    I = _index_window(args, doc)
    carrier = None
    if I is None:
        for R in doc.g_algebras.values():
            if R.origin is not None and R.origin.side is Side.RIGHT and R.origin.algebra is tau.carrier:
                carrier = R
                break
    T = twisting_to_principal(tau, I, carrier=carrier)
    return _document(doc, principal_maps={T.name: T})


def cmd_compress(args: argparse.Namespace) -> Outcome:
    doc = _load(args)
    T = doc.pick("principal", args.object)
    window = DegreeWindow.parse(args.window, doc.group) if args.window else None
    A = compress(T.carrier, T, window)
    return _document(doc, algebras={A.name: A})


def cmd_endo(args: argparse.Namespace) -> Outcome:
    doc = _load(args)
    P = doc.pick("module", args.object)
    H = endo_g_algebra(P, _index_window(args, doc))
    return _document(doc, g_algebras={H.name: H})


def cmd_from_iso(args: argparse.Namespace) -> Outcome:
    doc = _load(args)
    alpha = doc.pick("morphism", args.object)
    if alpha.source.origin is None or alpha.target.origin is None:
        raise ZalgError("from-iso needs a morphism between associated G-algebras")
    result = twist_equivalence_from_iso(alpha.source.origin.algebra, alpha.target.origin.algebra, alpha)
    return _document(
        doc,
        systems={result.system.name: result.system},
        algebras={result.twisted.name: result.twisted},
        maps={"iso": result.iso},
    )


def cmd_fixture(args: argparse.Namespace) -> Outcome:
    window = args.index_window or args.window
    bundle = fixture(args.name, args.field or get_settings().field, window)
    return Outcome(print_document(bundle_document(bundle)))


def cmd_list(args: argparse.Namespace) -> Outcome:
    return Outcome(render_fixture_list(list_fixtures(), args.format))


COMMANDS: dict[str, tuple[Callable[[argparse.Namespace], Outcome], str, bool]] = {
    # name: (handler, help, takes fixture files)
    "validate": (cmd_validate, "validate every algebra and G-algebra in the files", True),
    "zalg": (cmd_zalg, "build the associated G-algebra A-bar", True),
    "zalg-left": (cmd_zalg_left, "build the left associated G-algebra A-hat", True),
    "twist": (cmd_twist, "form the Zhang twist of an algebra by a twisting system", True),
    "verify-twist": (cmd_verify_twist, "verify a twisting system", True),
    "delta": (cmd_delta, "principal map -> twisting system", True),
    "gamma": (cmd_gamma, "twisting system -> principal map on A-bar", True),
    "compress": (cmd_compress, "compress a G-algebra along a principal map", True),
    "check-iso": (cmd_check_iso, "certify a G-algebra morphism or graded algebra map", True),
    "obstruct": (cmd_obstruct, "dimension obstruction to principal maps", True),
    "endo": (cmd_endo, "endomorphism G-algebra of a bigraded module", True),
    "from-iso": (cmd_from_iso, "twist equivalence from an iso of associated G-algebras", True),
    "fixture": (cmd_fixture, "print a shipped fixture bundle", False),
    "list": (cmd_list, "list the shipped fixtures", False),
}


# ---------------------------------------------------------------------------
# Parser and dispatch
# ---------------------------------------------------------------------------


def build_parser(settings: Settings | None = None) -> argparse.ArgumentParser:
    settings = settings or get_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None,
                        help="q or fp:<p>; re-reads inputs over this field (default: as declared)")
    common.add_argument("--window", default=settings.window, help="degree window lo..hi")
    common.add_argument("--index-window", default=settings.index_window, help="index window lo..hi")
    common.add_argument("--format", choices=("text", "machine"), default=settings.format,
                        help=f"report format (default: {settings.format})")
    common.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")
    common.add_argument("--object", default=None, help="name of the object to use when a file holds several")
    common.add_argument("--log-level", default=settings.log_level, help=f"(default: {settings.log_level})")

    parser = argparse.ArgumentParser(prog="zalg", description="Graded algebras, G-algebras and Zhang twists.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, text, takes_files) in COMMANDS.items():
        p = sub.add_parser(name, help=text, parents=[common])
        if takes_files:
            p.add_argument("files", nargs="+", type=Path, help="fixture files, later ones may refer to earlier names")
        elif name == "fixture":
            p.add_argument("name", help="fixture name (see 'list')")
    return parser


def configure_logging(level: str, settings: Settings) -> None:
    if settings.log_config.exists():
        logging.config.fileConfig(settings.log_config, disable_existing_loggers=False)
    else:
        logging.basicConfig(format="%(levelname)-5.5s [%(name)s] %(message)s")
    logging.getLogger().setLevel(level.upper())


def run(argv: Sequence[str] | None = None) -> int:
    settings = get_settings()
    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    handler = COMMANDS[args.command][0]
    try:
        configure_logging(args.log_level, settings)
        outcome = handler(args)
        if args.out is not None:
            args.out.write_text(outcome.text, encoding="utf-8")
        elif outcome.text:
            sys.stdout.write(outcome.text)
    except VERIFIED_FALSE as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 1
    except (ZalgError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    logger.debug("%s finished with status %d", args.command, outcome.status)
    return outcome.status


def main() -> None:
    sys.exit(run())
