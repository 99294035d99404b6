"""Marshmallow schemas for every JSON document cellposet reads or writes.

Loading goes through :func:`load`, which returns domain objects and turns marshmallow errors into
:class:`cellposet.exceptions.ValidationError`.  Dumping goes through :func:`dumps`, which sorts keys and uses
a fixed indent so that identical inputs give byte-identical files.

==================  ===========================================================================
Schema              Document
==================  ===========================================================================
IdealSchema         ``{"variables": [...], "generators": [[e1, .., en], ..]}``
ComplexSchema       ``{"p", "variables", "frames": [[{"id", "mdeg"}, ..], ..], "differentials"}``
CWSchema            ``{"cells": [[{"id", "mdeg"?}, ..], ..], "boundaries": [...]}``
PosetSchema         ``{"elements": [{"id", "rank", "mdeg"}, ..], "covers": [[lower, upper], ..]}``
BasisSchema         ``{"p", "elements": [[{"id", "vector", "mdeg", "stage"}, ..], ..]}``
==================  ===========================================================================

Matrices are written sparsely as ``{"rows", "cols", "entries": [[row, col, value], ..]}``.
"""

import logging

from marshmallow import EXCLUDE, Schema, fields, post_dump, post_load, validate, validates_schema
from marshmallow import ValidationError as MarshmallowValidationError
from marshmallow.exceptions import MarshmallowError

from .cwposet import BasedBasis, BasisElement, Cell, CWChainData, LabeledPoset, PosetElement
from .exactlin import FpMatrix, IntMatrix, is_prime
from .exceptions import DimensionMismatch, ValidationError
from .monoid import MonomialIdeal, Multidegree
from .rescomplex import GradedFreeComplex, Generator

log = logging.getLogger(__name__)


def load(schema_cls, raw, **kwargs):
    """Validate ``raw`` with ``schema_cls`` and return the object it describes

    :raises ValidationError: if the data does not match the schema
    """
    try:
        return schema_cls(unknown=EXCLUDE, **kwargs).load(raw)
    except MarshmallowError as e:
        raise ValidationError(raw, schema_cls.__name__, getattr(e, "messages", e))
    except (DimensionMismatch, ValueError) as e:
        raise ValidationError(raw, schema_cls.__name__, str(e))


def dump(schema_cls, obj, **kwargs):
    return schema_cls(**kwargs).dump(obj)


def dumps(schema_cls, obj, **kwargs):
    """Render ``obj`` as deterministic JSON text"""
    return schema_cls(**kwargs).dumps(obj, sort_keys=True, indent=2)


def _prime(value):
    if not is_prime(value):
        raise MarshmallowValidationError("{0} is not a prime".format(value))


def _triple(value):
    if len(value) != 3:
        raise MarshmallowValidationError("Matrix entries are [row, col, value] triples")


class IdealSchema(Schema):
    variables = fields.List(fields.String(), required=True)
    generators = fields.List(
        fields.List(fields.Integer(validate=validate.Range(min=0))),
        required=True,
        validate=validate.Length(min=1),
    )

    @validates_schema
    def validate_lengths(self, data, **kwargs):
        for g in data.get("generators", []):
            if len(g) != len(data.get("variables", [])):
                raise MarshmallowValidationError(
                    "Every generator needs one exponent per variable", "generators"
                )

    @post_load
    def make_ideal(self, data, **kwargs):
        return MonomialIdeal(data["generators"], data["variables"])


class MatrixSchema(Schema):
    rows = fields.Integer(required=True, validate=validate.Range(min=0))
    cols = fields.Integer(required=True, validate=validate.Range(min=0))
    entries = fields.Method("dump_entries", deserialize="load_entries", required=True)

    def get_attribute(self, obj, attr, default):
        # matrices index by (row, col), so obj["rows"] is not the attribute
        return getattr(obj, attr, default)

    def dump_entries(self, obj):
        return [list(t) for t in obj.items()]

    def load_entries(self, value):
        entries = fields.List(fields.List(fields.Integer(), validate=_triple)).deserialize(value)
        return [tuple(t) for t in entries]


def _fp_matrix(data, p):
    return FpMatrix(data["rows"], data["cols"], p, dict(((r, c), v) for r, c, v in data["entries"]))


def _int_matrix(data):
    return IntMatrix.from_items(data["rows"], data["cols"], data["entries"])


def _mdeg(value):
    return Multidegree(value) if value is not None else None


class GeneratorSchema(Schema):
    id = fields.String(required=True)
    mdeg = fields.List(fields.Integer(validate=validate.Range(min=0)), required=True)


class ComplexSchema(Schema):
    p = fields.Integer(required=True, validate=_prime)
    variables = fields.List(fields.String(), required=True)
    frames = fields.List(fields.List(fields.Nested(GeneratorSchema)), required=True)
    differentials = fields.List(fields.Nested(MatrixSchema), required=True)

    @post_load
    def make_complex(self, data, **kwargs):
        return GradedFreeComplex(
            data["p"],
            len(data["variables"]),
            [[Generator(g["id"], g["mdeg"]) for g in frame] for frame in data["frames"]],
            [_fp_matrix(d, data["p"]) for d in data["differentials"]],
            data["variables"],
        )


class CellSchema(Schema):
    id = fields.String(required=True)
    mdeg = fields.List(fields.Integer(validate=validate.Range(min=0)), allow_none=True)

    @post_dump
    def drop_missing_mdeg(self, data, **kwargs):
        if data.get("mdeg") is None:
            data.pop("mdeg", None)
        return data


class CWSchema(Schema):
    cells = fields.List(fields.List(fields.Nested(CellSchema)), required=True)
    boundaries = fields.List(fields.Nested(MatrixSchema), required=True)

    @post_load
    def make_data(self, data, **kwargs):
        return CWChainData(
            [[Cell(c["id"], c.get("mdeg")) for c in level] for level in data["cells"]],
            [_int_matrix(b) for b in data["boundaries"]],
        )


class PosetElementSchema(Schema):
    id = fields.String(required=True)
    rank = fields.Integer(required=True, validate=validate.Range(min=0))
    mdeg = fields.List(fields.Integer(), allow_none=True)


class PosetSchema(Schema):
    elements = fields.List(fields.Nested(PosetElementSchema), required=True)
    covers = fields.Method("dump_covers", deserialize="load_covers", required=True)

    def dump_covers(self, obj):
        return [list(cover) for cover in obj.sorted_covers()]

    def load_covers(self, value):
        return fields.List(
            fields.List(fields.String(), validate=validate.Length(equal=2))
        ).deserialize(value)

    @post_load
    def make_poset(self, data, **kwargs):
        return LabeledPoset(
            [PosetElement(e["id"], e["rank"], e.get("mdeg")) for e in data["elements"]],
            [tuple(c) for c in data["covers"]],
        )


class BasisElementSchema(Schema):
    id = fields.String(required=True)
    vector = fields.List(fields.Integer(), required=True)
    mdeg = fields.List(fields.Integer(), allow_none=True)
    stage = fields.String(
        required=True, validate=validate.OneOf(["standard", "stage1", "stage2"])
    )


class BasisSchema(Schema):
    p = fields.Integer(required=True, validate=_prime)
    elements = fields.List(fields.List(fields.Nested(BasisElementSchema)), required=True)

    @post_load
    def make_basis(self, data, **kwargs):
        return BasedBasis(
            data["p"],
            [
                [
                    BasisElement(e["id"], tuple(e["vector"]), _mdeg(e.get("mdeg")), e["stage"])
                    for e in level
                ]
                for level in data["elements"]
            ],
        )


class BettiSchema(Schema):
    entries = fields.Method("dump_entries")
    totals = fields.Method("dump_totals")

    def dump_entries(self, obj):
        return [{"i": i, "mdeg": list(alpha), "beta": beta} for (i, alpha), beta in obj.items()]

    def dump_totals(self, obj):
        return obj.totals()


class SupportReportSchema(Schema):
    supported = fields.Boolean()
    reason = fields.String(allow_none=True)
    detail = fields.String(allow_none=True)
    eta = fields.List(fields.Dict(keys=fields.String(), values=fields.String()))


class RunConfigSchema(Schema):
    p = fields.Integer(required=True, validate=_prime)
    inputs = fields.List(fields.String())
    stage2 = fields.Boolean()
    bound = fields.Integer(validate=validate.Range(min=1))
    out = fields.String(allow_none=True)
    format = fields.String(validate=validate.OneOf(["json", "text"]))
    verbosity = fields.Integer(validate=validate.Range(min=0))


class VerdictSchema(Schema):
    poset_supports = fields.Boolean()
    deg_morphism = fields.Boolean()
    minimal_support = fields.Boolean()


class StageSchema(Schema):
    name = fields.String()
    passed = fields.Boolean()
    details = fields.Dict()


class CertificateSchema(Schema):
    digest = fields.String()
    p = fields.Integer()
    stage_reached = fields.String(allow_none=True)
    succeeded = fields.Boolean()
    exit_code = fields.Integer()
    error = fields.Method("dump_error")
    stages = fields.List(fields.Nested(StageSchema))
    support = fields.Nested(SupportReportSchema, allow_none=True)
    regular = fields.Boolean(allow_none=True)
    regularity_failures = fields.Method("dump_failures")
    provenance = fields.Method("dump_provenance")
    verdict = fields.Nested(VerdictSchema, allow_none=True)
    poset = fields.Nested(PosetSchema, allow_none=True)
    y = fields.Nested(CWSchema, allow_none=True)
    poset_equal = fields.Boolean(allow_none=True)
    differences = fields.List(fields.String())
    checks = fields.Dict(keys=fields.String(), values=fields.Boolean())
    notes = fields.List(fields.String())

    def dump_error(self, obj):
        if obj.error is None:
            return None
        return {"type": type(obj.error).__name__, "message": str(obj.error)}

    def dump_failures(self, obj):
        return [
            {"check": f.check, "location": list(f.location), "detail": str(f.detail)}
            for f in obj.regularity_failures
        ]

    def dump_provenance(self, obj):
        return [
            {"degree": i, "mdeg": list(mdeg) if mdeg is not None else None, "stage": stage}
            for i, mdeg, stage in obj.provenance
        ]


class CorpusResultSchema(Schema):
    name = fields.String()
    ideal = fields.String()
    p = fields.Integer()
    resolution = fields.Nested(ComplexSchema)
    betti = fields.Nested(BettiSchema)
    oracle_agrees = fields.Boolean()
    exact = fields.Boolean()
    minimal = fields.Boolean()
    certificate = fields.Nested(CertificateSchema, allow_none=True)
