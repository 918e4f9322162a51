import json

import pytest

from ellreg.cli import main, run
from ellreg.specfile import FieldSpecError, bundled_text, parse_field, serialize_field
from conftest import FIELDS


@pytest.mark.parametrize("name", FIELDS)
def test_round_trip_is_byte_exact(name):
    text = bundled_text(name)
    spec = parse_field(text)
    assert serialize_field(spec) == text
    assert serialize_field(parse_field(serialize_field(spec))) == text


def _corrupt(name, old, new):
    text = bundled_text(name)
    assert old in text
    return text.replace(old, new, 1)


@pytest.mark.parametrize("old,new,path", [
    ('"ell": 5', '"ell": 7', "$.ell"),                       # 7 is inert in Q(i)
    ('"ell": 5', '"ell": 2', "$.ell"),                       # ramified
    ('"ell": 5', '"ell": 6', "$.ell"),
    ('[2, 1], "den": 1}', '[3, 1], "den": 1}', "$.sunits"),   # norm 10
    ('"image": [0, -1]', '"image": [1, -1]', "$.group.elements"),
    ('"tau": "c"', '"tau": "z"', "$.group.tau"),
    ('"alpha": 0', '"alpha": 5', "$.alpha"),
    ('[[1, -1, -1]]', '[[1, -1]]', "$.relations"),
    ('"r2": 1', '"r2": 1, "colour": 3', "$.colour"),
    ('"polynomial": [1, 0, 1]', '"polynomial": "x^2+1"', "$.polynomial"),
])
def test_corrupted_files_name_the_violation(old, new, path):
    with pytest.raises(FieldSpecError) as info:
        parse_field(_corrupt("qi", old, new), "bad.json")
    assert info.value.path == path
    assert "bad.json" in str(info.value)


def test_line_numbers_and_invalid_json():
    with pytest.raises(FieldSpecError) as info:
        parse_field(_corrupt("qi", '"ell": 5', '"ell": 6'), "bad.json")
    assert info.value.line == 3
    with pytest.raises(FieldSpecError) as info:
        parse_field("{\n  \"r1\": 0,\n  oops\n}", "bad.json")
    assert info.value.line == 3


def test_fake_unit_rejected():
    text = bundled_text("qsqrt2").replace('"units": [{"num": [1, 1]', '"units": [{"num": [2, 1]')
    with pytest.raises(FieldSpecError, match="not a unit"):
        parse_field(text)


def _cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_examples(capsys):
    code, out, _ = _cli(capsys, "criterion", "--ell", "5", "--m", "42", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["answer"] is True and doc["witness_r"] == 3
    code, out, _ = _cli(capsys, "regulator", "new", "--field", "qi", "--ell", "5",
                        "--precision", "12", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "nonzero" and doc["valuation"] == 0
    code, out, _ = _cli(capsys, "embed", "--field", "qi", "--ell", "5", "--precision", "3", "--json")
    assert code == 0 and json.loads(out)["roots"] == [57, 68]


@pytest.mark.parametrize("argv", [
    ["logvec", "--field", "qsqrt2"],
    ["divisor", "--field", "qi"],
    ["us2", "--field", "cubic49"],
    ["eta", "--field", "qzeta8"],
    ["artin-matrix", "--field", "qzeta8"],
    ["regulator", "classical", "--field", "qsqrt2"],
    ["regulator", "relative", "--field", "qzeta8"],
    ["survey", "--m", "3", "--bound", "30"],
    ["selfcheck", "--precision", "8"],
])
def test_reports_carry_schema_and_are_deterministic(capsys, argv):
    code, out1, _ = _cli(capsys, *argv, "--json")
    _, out2, _ = _cli(capsys, *argv, "--json")
    assert code == 0 and out1 == out2
    doc = json.loads(out1)
    for key in ("kind", "ell", "N", "slack", "basis"):
        assert key in doc
    code, text, _ = _cli(capsys, *argv)
    assert code == 0 and text.strip()


def test_exit_codes(capsys, tmp_path):
    assert _cli(capsys, "frobnicate")[0] == 1
    assert _cli(capsys, "embed", "--bogus")[0] == 1
    assert _cli(capsys, "embed")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text(_corrupt("qi", '"ell": 5', '"ell": 7'))
    code, _, err = _cli(capsys, "selfcheck", "--field", str(bad))
    assert code == 2 and "$.ell" in err and "bad.json" in err
    assert _cli(capsys, "embed", "--field", "nosuchfield")[0] == 2
    assert _cli(capsys, "regulator", "new", "--field", "qi", "--precision", "3")[0] == 3
    assert _cli(capsys, "selfcheck", "--precision", "3")[0] == 0


def test_run_returns_document():
    code, doc = run(["criterion", "--ell", "11", "--m", "5"])
    assert code == 0 and doc["answer"] is False
