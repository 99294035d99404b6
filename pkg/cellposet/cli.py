"""The ``cellposet`` command line.

=============  ===================================================================  =====================
Command        Output                                                               Exit status
=============  ===================================================================  =====================
resolve        minimal resolution JSON, Betti table text                           0, 2 on a parse error
check-support  support report                                                       0, or 4 if unsupported
face-poset     face poset JSON                                                      0
find-basis     minimal-support basis JSON                                           0, or 6
transform      certificate JSON                                                     0, 4, 5, 6 or 7
corpus         one JSON file per bundled entry, or a diff against golden files      0, or 1 on a diff
=============  ===================================================================  =====================

Library errors end the run with the ``exit_code`` of their exception class; anything else exits with 3.
"""

import argparse
import io
import json
import logging
import os
import sys

from . import schemas
from .corpus import ENTRIES, run_entry
from .cwposet import (
    DEFAULT_SEARCH_BOUND,
    check_supports_cw,
    face_poset,
    find_minimal_support_basis,
    homogenize,
)
from .exceptions import CellPosetException, InvalidConfig, NotSupported, ValidationError
from .monoid import parse_ideal
from .pipeline import run_main_theorem
from .rescomplex import betti_table, minimal_resolution
from .signals import run_aborted, stage_finished

log = logging.getLogger(__name__)

INTERNAL_ERROR = 3
GOLDEN_MISMATCH = 1


class RunConfig(object):
    """Options shared by every subcommand

    Class attributes are the defaults; keyword arguments override them and the result is validated with
    :class:`cellposet.schemas.RunConfigSchema`.

    :raises InvalidConfig: on an unknown option or an invalid value
    """

    p = 2
    inputs = ()
    stage2 = False
    bound = DEFAULT_SEARCH_BOUND
    out = None
    format = "json"
    verbosity = 0

    FIELDS = ("p", "inputs", "stage2", "bound", "out", "format", "verbosity")

    def __init__(self, **kwargs):
        for name, value in kwargs.items():
            if name not in self.FIELDS:
                raise InvalidConfig("Unknown option {0!r}".format(name))
            if value is not None:
                setattr(self, name, value)
        self.inputs = list(self.inputs)

        errors = schemas.RunConfigSchema().validate(self.as_dict())
        if errors:
            raise InvalidConfig("Invalid options: {0}".format(errors))

    def as_dict(self):
        return dict((name, getattr(self, name)) for name in self.FIELDS)


def read_ideal(path, variables=None):
    """Read an ideal file, either JSON or the text grammar"""
    text = _read(path)
    if text.lstrip().startswith("{"):
        return schemas.load(schemas.IdealSchema, _json(text, path))
    return parse_ideal(text.strip(), variables)


def read_cw(path):
    return schemas.load(schemas.CWSchema, _json(_read(path), path))


def _read(path):
    with io.open(path, "r", encoding="utf-8") as fd:
        return fd.read()


def _json(text, path):
    try:
        return json.loads(text)
    except ValueError as e:
        raise ValidationError(text, path, str(e))


def emit(config, text):
    """Write output to ``config.out`` when set, stdout otherwise"""
    if config.out:
        with io.open(config.out, "w", encoding="utf-8") as fd:
            fd.write(text + "\n")
        log.info("Wrote %s", config.out)
    else:
        print(text)


def cmd_resolve(config, args):
    ideal = read_ideal(args.ideal, args.vars)
    resolution = minimal_resolution(ideal, config.p)
    table = betti_table(resolution)
    if config.format == "text" and not config.out:
        print(table.render())
        return 0

    emit(config, schemas.dumps(schemas.ComplexSchema, resolution))
    # stdout carries the JSON unless it went to a file
    stream = sys.stdout if config.out else sys.stderr
    stream.write(table.render() + "\n")
    return 0


def cmd_check_support(config, args):
    data = read_cw(args.cw)
    ideal = read_ideal(args.ideal, args.vars)
    report = check_supports_cw(data, minimal_resolution(ideal, config.p))
    if config.format == "text":
        if report.supported:
            emit(config, "supported")
        else:
            emit(config, "not supported: {0} ({1})".format(report.reason, report.detail))
    else:
        emit(config, schemas.dumps(schemas.SupportReportSchema, report))
    return 0 if report.supported else NotSupported.exit_code


def cmd_face_poset(config, args):
    poset = face_poset(read_cw(args.cw), config.p)
    emit(config, schemas.dumps(schemas.PosetSchema, poset))
    return 0


def cmd_find_basis(config, args):
    graded = homogenize(read_cw(args.cw), config.p)
    basis = find_minimal_support_basis(graded, stage2=config.stage2, bound=config.bound)
    emit(config, schemas.dumps(schemas.BasisSchema, basis))
    return 0


def cmd_transform(config, args):
    data = read_cw(args.cw)
    ideal = read_ideal(args.ideal, args.vars)
    certificate = run_main_theorem(ideal, data, config.p, stage2=config.stage2, bound=config.bound)
    if config.format == "text":
        lines = ["{0}: {1}".format(s.name, "ok" if s.passed else "FAILED") for s in certificate.stages]
        if certificate.error is not None:
            lines.append("error: {0}".format(certificate.error))
        emit(config, "\n".join(lines))
    else:
        emit(config, schemas.dumps(schemas.CertificateSchema, certificate))
    return certificate.exit_code


def cmd_corpus(config, args):
    status = 0
    for entry in ENTRIES:
        result = run_entry(entry, stage2=config.stage2, bound=config.bound)
        text = schemas.dumps(schemas.CorpusResultSchema, result) + "\n"
        filename = "{0}.json".format(entry.name)
        if args.golden:
            with io.open(os.path.join(args.golden, filename), "r", encoding="utf-8") as fd:
                golden = fd.read()
            if golden != text:
                log.error("Output of %s differs from the golden file", entry.name)
                status = GOLDEN_MISMATCH
        if config.out:
            if not os.path.isdir(config.out):
                os.makedirs(config.out)
            with io.open(os.path.join(config.out, filename), "w", encoding="utf-8") as fd:
                fd.write(text)
            log.info("Wrote %s", filename)
        summary = "{0}: oracle={1} exact={2} minimal={3}".format(
            entry.name, result.oracle_agrees, result.exact, result.minimal
        )
        if result.certificate is not None:
            summary += " exit={0}".format(result.certificate.exit_code)
        print(summary)
    return status


def _log_stage(sender, certificate=None, passed=None, error=None):
    if error is not None:
        log.warning("Stage %s aborted: %s", sender, error)
    else:
        log.info("Stage %s finished", sender)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cellposet",
        description="Cellular resolutions of monomial ideals and their face posets over GF(p).",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging"
    )
    parser.add_argument("--p", type=int, default=None, help="prime characteristic (default 2)")
    parser.add_argument(
        "--stage2",
        action="store_true",
        default=None,
        help="allow lower-degree coordinates in the basis search",
    )
    parser.add_argument(
        "--bound", type=int, default=None, help="candidates examined per degree in the basis search"
    )
    parser.add_argument("--format", choices=["json", "text"], default=None)
    parser.add_argument("--out", default=None, help="output file (directory for corpus)")

    commands = parser.add_subparsers(dest="command")
    commands.required = True

    resolve = commands.add_parser("resolve", help="minimal free resolution and Betti numbers")
    resolve.add_argument("ideal")
    resolve.add_argument("--vars", type=_names, default=None, help="comma separated variable order")
    resolve.set_defaults(handler=cmd_resolve)

    check = commands.add_parser("check-support", help="does the CW data support the resolution")
    check.add_argument("cw")
    check.add_argument("ideal")
    check.add_argument("--vars", type=_names, default=None)
    check.set_defaults(handler=cmd_check_support)

    poset = commands.add_parser("face-poset", help="face poset of CW data over GF(p)")
    poset.add_argument("cw")
    poset.set_defaults(handler=cmd_face_poset)

    basis = commands.add_parser("find-basis", help="homogeneous basis with minimal support")
    basis.add_argument("cw")
    basis.set_defaults(handler=cmd_find_basis)

    transform = commands.add_parser("transform", help="run every stage and print the certificate")
    transform.add_argument("cw")
    transform.add_argument("ideal")
    transform.add_argument("--vars", type=_names, default=None)
    transform.set_defaults(handler=cmd_transform)

    corpus = commands.add_parser("corpus", help="run the bundled examples")
    corpus.add_argument("--golden", default=None, help="directory of stored outputs to compare against")
    corpus.set_defaults(handler=cmd_corpus)

    return parser


def _names(value):
    return [name.strip() for name in value.split(",") if name.strip()]


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level={0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG))
    stage_finished.connect(_log_stage)
    run_aborted.connect(_log_stage)

    try:
        config = RunConfig(
            p=args.p,
            inputs=[getattr(args, name) for name in ("ideal", "cw") if getattr(args, name, None)],
            stage2=args.stage2,
            bound=args.bound,
            out=args.out,
            format=args.format,
            verbosity=args.verbose,
        )
        return args.handler(config, args)
    except CellPosetException as e:
        sys.stderr.write("cellposet: {0}\n".format(e))
        return e.exit_code
    except (IOError, OSError) as e:
        sys.stderr.write("cellposet: {0}\n".format(e))
        return ValidationError.exit_code
    except Exception:
        log.exception("Internal error")
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
