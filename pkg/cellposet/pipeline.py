"""Turn a CW-complex supporting a minimal resolution into one whose face poset supports it.

:func:`run_main_theorem` runs these stages in order and stops at the first one that fails:

===============  ===============================================================================
Stage            What it does
===============  ===============================================================================
resolve          minimal free resolution ``F`` of the ideal, minimized from the Taylor complex
regularity       ``X`` passes the regular 2-skeleton test
support          the CW data ``X`` supports ``F`` (bijection ``eta`` matching degrees and scalars)
basis            homogeneous basis ``A`` with minimal support, standard in degrees 0 to 2
poset_support    ``A`` has minimal support in ``F`` and degrees increase along its covers
normalize        ``E``: ``A`` rescaled so every change of basis has determinant 1
lift             integer lifts ``T_i`` of determinant 1, identity in degrees 0 to 2
conjugate        ``Y`` with boundaries ``T_(d-1) B_d T_d^-1``
verify           ``Y`` is valid chain data, supports ``F`` written in ``A`` and has face poset ``P(F, A)``
===============  ===============================================================================

Every stage reports into a :class:`Certificate`.  Failures are recorded there instead of raised; call
:meth:`Certificate.raise_for_status` to turn a failed run into its exception.
"""

import hashlib
import logging
from collections import namedtuple
from contextlib import contextmanager

from . import schemas
from .cwposet import (
    DEFAULT_SEARCH_BOUND,
    BasedBasis,
    BasisElement,
    Cell,
    CWChainData,
    check_poset_support,
    check_supports_cw,
    face_poset,
    find_minimal_support_basis,
    homogenize,
    incidence_poset_of_based_complex,
    rebase,
    regularity_failures,
    transport_basis,
    validate_cw,
)
from .exactlin import (
    FpMatrix,
    IntMatrix,
    determinant,
    int_determinant,
    int_inverse_unimodular,
    inverse,
    inverse_mod,
    lift_sl,
)
from .exceptions import (
    CellPosetException,
    LowDegreeChange,
    NotRegular,
    NotSupported,
    PipelineException,
    PosetMismatch,
    SizeMismatch,
)
from .rescomplex import minimal_resolution
from .signals import run_aborted, stage_finished, stage_started

log = logging.getLogger(__name__)

STAGES = (
    "resolve",
    "regularity",
    "support",
    "basis",
    "poset_support",
    "normalize",
    "lift",
    "conjugate",
    "verify",
)

NOTES = (
    "Changes of basis are rescaled to determinant 1 before lifting to integer matrices; rescaling one "
    "basis element by a unit changes neither supports nor covers.",
    "Regularity is the combinatorial 2-skeleton test: edges with two distinct endpoints and 2-cells "
    "bounded by simple closed edge cycles with unit coefficients.",
    "Poset support is certified through minimal support of a homogeneous basis and a degree-increasing "
    "incidence poset; the general notion of a poset supporting a resolution is not checked directly.",
)

StageRecord = namedtuple("StageRecord", ["name", "passed", "details"])


class BasisChange(object):
    """Per homological degree, a change of coordinates over GF(p) and its integer lift

    ``fp[i]`` takes standard coordinates to coordinates in the new basis, ``integral[i]`` reduces to it
    modulo ``p`` and has determinant 1.  ``ids`` and ``mdegs`` name the new basis elements when known.
    """

    def __init__(self, fp, integral, ids=None, mdegs=None):
        if len(fp) != len(integral):
            raise SizeMismatch("{0} matrices over GF(p) but {1} lifts".format(len(fp), len(integral)))
        self.fp = list(fp)
        self.integral = list(integral)
        self.ids = ids
        self.mdegs = mdegs

    @classmethod
    def identity(cls, sizes, p):
        return cls(
            [FpMatrix.identity(n, p) for n in sizes],
            [IntMatrix.identity(n) for n in sizes],
        )

    @classmethod
    def from_basis(cls, basis):
        """Build the change of basis carrying the standard basis onto ``basis``

        :raises LowDegreeChange: if the basis differs from the standard one in degrees 0 to 2
        :raises NotSL: if a change of basis does not have determinant 1
        """
        fp, integral = [], []
        for i in range(basis.degrees):
            size = len(basis.level(i))
            if i <= 2:
                if not basis.is_standard(i):
                    raise LowDegreeChange("Degree {0} basis is not standard".format(i))
                fp.append(FpMatrix.identity(size, basis.p))
                integral.append(IntMatrix.identity(size))
                continue
            m = inverse(basis.matrix(i))
            fp.append(m)
            integral.append(lift_sl(m))
        return cls(
            fp,
            integral,
            ids=[basis.ids(i) for i in range(basis.degrees)],
            mdegs=[[e.mdeg for e in basis.level(i)] for i in range(basis.degrees)],
        )

    @property
    def degrees(self):
        return len(self.fp)

    def check(self):
        """Return the names of the failed consistency checks, empty when the change is sound"""
        failures = []
        for i, (m, t) in enumerate(zip(self.fp, self.integral)):
            if t.reduce(m.p) != m:
                failures.append("reduction:{0}".format(i))
            if int_determinant(t) != 1:
                failures.append("determinant:{0}".format(i))
            if i <= 2 and not t.is_identity():
                failures.append("low_degree:{0}".format(i))
        return failures


def conjugate_boundaries(x, t):
    """Return the chain data with boundaries ``T_(d-1) B_d T_d^-1``

    Cell ids are kept.  When the change of basis carries multidegrees, cell ``k`` of degree ``i`` takes the
    multidegree of basis element ``k``.

    :raises SizeMismatch: if a matrix does not fit the cells
    :raises LowDegreeChange: if ``T_i`` is not the identity for some ``i <= 2``
    :raises NotUnimodular: if some ``T_i`` has no integer inverse
    """
    if t.degrees != len(x.cells):
        raise SizeMismatch(
            "Change of basis has {0} degrees, the data has {1}".format(t.degrees, len(x.cells))
        )
    for i, m in enumerate(t.integral):
        if m.shape != (len(x.cells[i]), len(x.cells[i])):
            raise SizeMismatch("T_{0} has shape {1} for {2} cells".format(i, m.shape, len(x.cells[i])))
        if i <= 2 and not m.is_identity():
            raise LowDegreeChange("T_{0} must be the identity".format(i))

    inverses = [int_inverse_unimodular(m) for m in t.integral]
    boundaries = [
        t.integral[d - 1] * x.boundary(d) * inverses[d] for d in range(1, x.dimension + 1)
    ]
    cells = []
    for i, level in enumerate(x.cells):
        if t.mdegs is not None:
            cells.append([Cell(c.id, t.mdegs[i][k]) for k, c in enumerate(level)])
        else:
            cells.append(list(level))
    return CWChainData(cells, boundaries)


def normalize_det(e, p=None):
    """Rescale the last basis element of every degree ``>= 3`` so the change of basis has determinant 1"""
    p = p or e.p
    levels = []
    for i in range(e.degrees):
        level = list(e.level(i))
        if i >= 3 and level:
            det = determinant(e.matrix(i))
            if det != 1:
                last = level[-1]
                scale = inverse_mod(det, p)
                level[-1] = BasisElement(
                    last.id, tuple((v * scale) % p for v in last.vector), last.mdeg, last.stage
                )
                log.debug("Scaled %s by %d to fix the degree %d determinant", last.id, scale, i)
        levels.append(level)
    return BasedBasis(e.p, levels)


def inputs_digest(ideal, x, p):
    """sha256 over the canonical JSON of the run inputs"""
    digest = hashlib.sha256()
    digest.update(schemas.dumps(schemas.IdealSchema, ideal).encode("utf-8"))
    digest.update(schemas.dumps(schemas.CWSchema, x).encode("utf-8"))
    digest.update(str(p).encode("utf-8"))
    return digest.hexdigest()


class Certificate(object):
    """The record of a :func:`run_main_theorem` run

    Every verdict is backed by one of the named stages, each of which can be rerun on its own from the
    functions of :mod:`cellposet.cwposet` and :mod:`cellposet.rescomplex`.
    """

    def __init__(self, digest, p):
        self.digest = digest
        self.p = p
        self.stages = []
        self.stage_reached = None
        self.error = None
        self.support = None
        self.regular = None
        self.regularity_failures = []
        self.provenance = []
        self.verdict = None
        self.poset = None
        self.y = None
        self.poset_equal = None
        self.differences = []
        self.checks = {}
        self.notes = list(NOTES)

    @property
    def succeeded(self):
        return self.error is None and self.stage_reached == STAGES[-1] and all(self.checks.values())

    @property
    def exit_code(self):
        if self.succeeded:
            return 0
        if self.error is not None:
            return self.error.exit_code
        return CellPosetException.exit_code

    def raise_for_status(self):
        """Raise the exception that stopped the run, if any"""
        if self.error is not None:
            raise self.error
        if not self.succeeded:
            raise PipelineException("Run stopped after stage {0}".format(self.stage_reached))

    def __repr__(self):
        return "Certificate(stage_reached={0!r}, succeeded={1})".format(
            self.stage_reached, self.succeeded
        )


@contextmanager
def _stage(certificate, name):
    details = {}
    stage_started.send(name, certificate=certificate)
    log.info("Stage %s started", name)
    try:
        yield details
    except CellPosetException as e:
        certificate.stages.append(StageRecord(name, False, details))
        certificate.error = e
        log.info("Stage %s aborted the run: %s", name, e)
        run_aborted.send(name, certificate=certificate, error=e)
        raise
    certificate.stages.append(StageRecord(name, True, details))
    certificate.stage_reached = name
    stage_finished.send(name, certificate=certificate, passed=True)
    log.info("Stage %s finished", name)


def run_main_theorem(ideal, x, p, stage2=False, bound=DEFAULT_SEARCH_BOUND):
    """Run every stage on ``(ideal, x, p)`` and return the :class:`Certificate`

    No stage runs unless every earlier one passed.  Library exceptions raised by a stage end the run and
    are kept on the certificate.
    """
    certificate = Certificate(inputs_digest(ideal, x, p), p)
    try:
        _run(certificate, ideal, x, p, stage2, bound)
    except CellPosetException:
        pass
    return certificate


def _run(certificate, ideal, x, p, stage2, bound):
    with _stage(certificate, "resolve") as details:
        f = minimal_resolution(ideal, p)
        details["ranks"] = f.ranks()

    with _stage(certificate, "regularity") as details:
        failures = regularity_failures(x)
        certificate.regular = not failures
        certificate.regularity_failures = failures
        details["failures"] = len(failures)
        if failures:
            raise NotRegular(failures)

    with _stage(certificate, "support") as details:
        report = check_supports_cw(x, f)
        certificate.support = report
        if not report.supported:
            raise NotSupported(report)
        details["eta"] = report.eta

    with _stage(certificate, "basis") as details:
        basis = find_minimal_support_basis(homogenize(x, p), stage2=stage2, bound=bound)
        certificate.provenance = basis.provenance()
        details["stages"] = sorted(set(stage for _, _, stage in certificate.provenance))

    with _stage(certificate, "poset_support") as details:
        verdict = check_poset_support(f, transport_basis(basis, report, f))
        certificate.verdict = verdict
        certificate.poset = verdict.poset
        details["covers"] = len(verdict.poset.covers)
        if not verdict.poset_supports:
            raise PipelineException(
                "Basis fails the poset test: minimal_support={0}, deg_morphism={1}".format(
                    verdict.minimal_support, verdict.deg_morphism
                )
            )

    with _stage(certificate, "normalize") as details:
        normalized = normalize_det(basis, p)
        details["determinants"] = [determinant(basis.matrix(i)) for i in range(basis.degrees)]
        moved = transport_basis(normalized, report, f)
        certificate.checks["normalize_keeps_poset"] = (
            incidence_poset_of_based_complex(f, moved, p) == verdict.poset
        )

    with _stage(certificate, "lift") as details:
        change = BasisChange.from_basis(normalized)
        failures = change.check()
        certificate.checks["lift_consistent"] = not failures
        details["failures"] = failures
        if failures:
            raise PipelineException("Inconsistent integer lifts: {0}".format(", ".join(failures)))

    with _stage(certificate, "conjugate") as details:
        y = conjugate_boundaries(x, change)
        certificate.y = y
        details["changed_degrees"] = [
            d for d in range(1, y.dimension + 1) if y.boundary(d) != x.boundary(d)
        ]

    with _stage(certificate, "verify") as details:
        certificate.checks["y_valid"] = validate_cw(y).valid
        if not certificate.checks["y_valid"]:
            raise PipelineException("Transformed chain data fails validation")

        rebased = rebase(f, moved)
        y_report = check_supports_cw(y, rebased)
        certificate.checks["y_supports_f"] = y_report.supported
        if not y_report.supported:
            raise NotSupported(y_report)

        if x.dimension <= 2:
            certificate.checks["y_equals_x"] = y == x

        differences = face_poset(y, p).differences(verdict.poset)
        certificate.differences = differences
        certificate.poset_equal = not differences
        details["differences"] = len(differences)
        if differences:
            raise PosetMismatch(differences)
