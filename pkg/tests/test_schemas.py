import json

import pytest

from cellposet import schemas
from cellposet.corpus import doubled_edge_cw
from cellposet.cwposet import face_poset, find_minimal_support_basis, homogenize
from cellposet.exactlin import FpMatrix, IntMatrix
from cellposet.exceptions import ValidationError
from cellposet.monoid import MonomialIdeal
from cellposet.pipeline import run_main_theorem
from cellposet.rescomplex import minimal_resolution


def test_load_ideal():
    ideal = schemas.load(schemas.IdealSchema, {"variables": ["x", "y"], "generators": [[1, 0], [0, 1]]})
    assert isinstance(ideal, MonomialIdeal)
    assert ideal.variables == ("x", "y")


def test_load_ideal_errors():
    with pytest.raises(ValidationError) as exc:
        schemas.load(schemas.IdealSchema, {"variables": ["x", "y"], "generators": [[1, 0, 0]]})
    assert exc.value.schema_name == "IdealSchema"

    with pytest.raises(ValidationError):
        schemas.load(schemas.IdealSchema, {"variables": ["x"], "generators": []})
    with pytest.raises(ValidationError):
        schemas.load(schemas.IdealSchema, {"variables": ["x"], "generators": [[-1]]})
    with pytest.raises(ValidationError):
        schemas.load(schemas.IdealSchema, {"variables": ["x"]})


def test_unknown_keys_are_ignored():
    ideal = schemas.load(
        schemas.IdealSchema, {"variables": ["x"], "generators": [[2]], "comment": "a principal ideal"}
    )
    assert ideal.generators == [(2,)]


def test_cw_document(triangle):
    document = json.loads(schemas.dumps(schemas.CWSchema, triangle))
    assert [len(level) for level in document["cells"]] == [3, 3, 1]
    assert document["boundaries"][1] == {"rows": 3, "cols": 1, "entries": [[0, 0, 1], [1, 0, -1], [2, 0, 1]]}
    assert schemas.load(schemas.CWSchema, document) == triangle


def test_cw_document_without_multidegrees():
    document = {
        "cells": [[{"id": "a"}, {"id": "b"}], [{"id": "e"}]],
        "boundaries": [{"rows": 2, "cols": 1, "entries": [[0, 0, -1], [1, 0, 1]]}],
    }
    data = schemas.load(schemas.CWSchema, document)
    assert not data.graded
    assert "mdeg" not in json.loads(schemas.dumps(schemas.CWSchema, data))["cells"][0][0]


def test_cw_document_errors():
    with pytest.raises(ValidationError):
        schemas.load(
            schemas.CWSchema,
            {
                "cells": [[{"id": "a"}], [{"id": "e"}]],
                "boundaries": [{"rows": 1, "cols": 1, "entries": [[0, 0]]}],
            },
        )
    with pytest.raises(ValidationError):
        schemas.load(
            schemas.CWSchema,
            {"cells": [[{"id": "a"}], [{"id": "e"}]], "boundaries": [{"rows": 2, "cols": 1, "entries": []}]},
        )


def test_complex_document(edges):
    res = minimal_resolution(edges, 3)
    document = json.loads(schemas.dumps(schemas.ComplexSchema, res))
    assert document["p"] == 3
    assert [len(frame) for frame in document["frames"]] == [3, 2, 0]
    assert schemas.load(schemas.ComplexSchema, document) == res

    document["p"] = 4
    with pytest.raises(ValidationError):
        schemas.load(schemas.ComplexSchema, document)


def test_poset_and_basis_documents(triangle):
    poset = face_poset(triangle, 2)
    assert schemas.load(schemas.PosetSchema, schemas.dump(schemas.PosetSchema, poset)) == poset

    basis = find_minimal_support_basis(homogenize(triangle, 2))
    assert schemas.load(schemas.BasisSchema, schemas.dump(schemas.BasisSchema, basis)) == basis


def test_dumps_is_deterministic(triangle):
    assert schemas.dumps(schemas.CWSchema, triangle) == schemas.dumps(schemas.CWSchema, triangle)


def test_certificate_document(koszul2):
    certificate = run_main_theorem(koszul2, doubled_edge_cw(koszul2), 3)
    document = json.loads(schemas.dumps(schemas.CertificateSchema, certificate))
    assert document["exit_code"] == 5
    assert document["succeeded"] is False
    assert document["error"]["type"] == "NotRegular"
    assert document["regularity_failures"][0]["check"] == "edge"
    assert document["y"] is None
    assert [stage["name"] for stage in document["stages"]] == ["resolve", "regularity"]


def test_run_config_schema():
    assert schemas.RunConfigSchema().validate({"p": 3, "bound": 10, "format": "text"}) == {}
    errors = schemas.RunConfigSchema().validate({"p": 6, "bound": 0, "format": "yaml"})
    assert set(errors) == set(["p", "bound", "format"])


def test_matrix_document():
    m = FpMatrix.from_rows([[1, 1], [0, 1], [2, 0]], 3)
    document = schemas.dump(schemas.MatrixSchema, m)
    assert document == {"rows": 3, "cols": 2, "entries": [[0, 0, 1], [0, 1, 1], [1, 1, 1], [2, 0, 2]]}
    assert schemas._fp_matrix(schemas.load(schemas.MatrixSchema, document), 3) == m

    b = IntMatrix([[1, -1]])
    document = schemas.dump(schemas.MatrixSchema, b)
    assert document == {"rows": 1, "cols": 2, "entries": [[0, 0, 1], [0, 1, -1]]}
    assert schemas._int_matrix(schemas.load(schemas.MatrixSchema, document)) == b
