import json

import pytest

from cellposet import schemas
from cellposet.cli import RunConfig, main
from cellposet.corpus import ENTRIES, doubled_edge_cw
from cellposet.cwposet import taylor_cw
from cellposet.exceptions import InvalidConfig


@pytest.fixture
def write(tmpdir):
    def write(name, text):
        path = tmpdir.join(name)
        path.write(text)
        return str(path)

    return write


def test_run_config_defaults():
    config = RunConfig()
    assert config.p == 2
    assert config.format == "json"
    assert config.inputs == []

    assert RunConfig(p=5, bound=None).p == 5
    with pytest.raises(InvalidConfig):
        RunConfig(p=4)
    with pytest.raises(InvalidConfig):
        RunConfig(colour="blue")


def test_resolve(write, capsys):
    path = write("ideal.txt", "x*y, y*z, x*z\n")
    assert main(["resolve", path]) == 0
    captured = capsys.readouterr()
    document = json.loads(captured.out)
    assert [len(frame) for frame in document["frames"]] == [3, 2, 0]
    assert "i  mdeg" in captured.err
    assert "(1, 1, 0)" in captured.err

    assert main(["--format", "text", "resolve", path]) == 0
    assert capsys.readouterr().out.split()[:3] == ["i", "mdeg", "beta"]


def test_resolve_json_ideal(write, capsys):
    path = write("ideal.json", json.dumps({"variables": ["x", "y"], "generators": [[1, 0], [0, 1]]}))
    assert main(["--p", "3", "resolve", path]) == 0
    assert json.loads(capsys.readouterr().out)["p"] == 3


def test_resolve_to_file(write, tmpdir, capsys):
    path = write("ideal.txt", "x, y")
    out = str(tmpdir.join("resolution.json"))
    assert main(["--out", out, "resolve", path]) == 0
    with open(out) as fd:
        assert json.load(fd)["variables"] == ["x", "y"]
    assert capsys.readouterr().out.split()[:3] == ["i", "mdeg", "beta"]


def test_input_errors(write, capsys):
    assert main(["resolve", write("bad.txt", "x**y")]) == 2
    assert "offset 2" in capsys.readouterr().err

    assert main(["resolve", write("bad.json", '{"variables": ["x"]}')]) == 2
    assert main(["resolve", write("unknown.txt", "x*q"), "--vars", "x,y"]) == 2
    assert main(["--p", "4", "resolve", write("ideal.txt", "x")]) == 2
    assert main(["resolve", "/nonexistent/ideal.txt"]) == 2

    with pytest.raises(SystemExit):
        main([])


def test_check_support(write, capsys, edges):
    ideal = write("ideal.txt", "x*y, y*z, x*z")
    cw = write("cw.json", schemas.dumps(schemas.CWSchema, taylor_cw(edges)))
    assert main(["check-support", cw, ideal]) == 4
    assert json.loads(capsys.readouterr().out)["reason"] == "cardinality"


def test_transform(write, capsys, koszul2, koszul3):
    ideal = write("ideal.txt", "x, y, z")
    cw = write("cw.json", schemas.dumps(schemas.CWSchema, taylor_cw(koszul3)))
    assert main(["transform", cw, ideal]) == 0
    assert json.loads(capsys.readouterr().out)["succeeded"] is True

    ideal = write("pair.txt", "x, y")
    cw = write("doubled.json", schemas.dumps(schemas.CWSchema, doubled_edge_cw(koszul2)))
    assert main(["--p", "3", "transform", cw, ideal]) == 5
    assert json.loads(capsys.readouterr().out)["exit_code"] == 5

    assert main(["--p", "3", "--format", "text", "transform", cw, ideal]) == 5
    out = capsys.readouterr().out
    assert "regularity: FAILED" in out
    assert "error:" in out


def test_face_poset_and_basis(write, capsys, koszul2):
    cw = write("doubled.json", schemas.dumps(schemas.CWSchema, doubled_edge_cw(koszul2)))
    assert main(["--p", "2", "face-poset", cw]) == 0
    assert json.loads(capsys.readouterr().out)["covers"] == []
    assert main(["--p", "3", "face-poset", cw]) == 0
    assert json.loads(capsys.readouterr().out)["covers"] == [["0", "0,1"], ["1", "0,1"]]

    assert main(["--p", "3", "find-basis", cw]) == 0
    document = json.loads(capsys.readouterr().out)
    assert [len(level) for level in document["elements"]] == [2, 1]


def test_corpus_is_reproducible(mocker, tmpdir, capsys):
    mocker.patch("cellposet.cli.ENTRIES", ENTRIES[:4])
    out = tmpdir.mkdir("out")

    assert main(["--out", str(out), "corpus"]) == 0
    assert sorted(f.basename for f in out.listdir()) == sorted(e.name + ".json" for e in ENTRIES[:4])
    assert main(["corpus", "--golden", str(out)]) == 0

    golden = out.join(ENTRIES[0].name + ".json")
    golden.write(golden.read().replace('"p": 2', '"p": 7'))
    assert main(["corpus", "--golden", str(out)]) == 1
    assert ENTRIES[0].name in capsys.readouterr().out
