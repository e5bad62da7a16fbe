import json

import pytest

from repcheck.cli import EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, RunConfig, cmd_run, main, parse_params, render


def _run(tmp_path, *args):
    out = tmp_path / "r.json"
    code = main([*args, "--out", str(out)])
    return code, json.loads(out.read_text())


def test_adequacy_run(tmp_path):
    code, rep = _run(tmp_path, "--group", "sl2", "--param", "q=5", "--module", "sym(1,natural)", "--check", "adequacy", "--check", "weak", "--check", "ext1")
    assert code == EXIT_OK
    assert rep["meta"]["order"] == 120 and rep["meta"]["dim"] == 2
    assert rep["adequacy"]["adequate"] is False
    assert rep["ext1"]["self"] == 1 and rep["ext1"]["dual"] == 1
    assert rep["weak"] == {"span_dim": 4, "weak_ok": True}
    assert "timings" not in rep


def test_structure_forms_projective(tmp_path):
    code, rep = _run(tmp_path, "--group", "sl2", "--param", "q=5", "--module", "St", "--check", "structure", "--check", "forms", "--check", "projective")
    assert code == EXIT_OK
    assert rep["projective"] == {"projective": True}
    assert rep["structure"]["uniserial"] and rep["structure"]["indecomposable"] == "indecomposable"
    assert rep["forms"]["type"] == "symmetric"


def test_exit_codes(tmp_path):
    assert _run(tmp_path, "--group", "sl2", "--param", "q=5", "--module", "tensor(")[0] == EXIT_INPUT
    assert _run(tmp_path, "--group", "nope")[0] == EXIT_INPUT
    assert _run(tmp_path, "--group", "sl2", "--param", "q=5", "--cap-elems", "100")[0] == EXIT_RESOURCE
    assert _run(tmp_path, "--group", "omega4plus5", "--check", "projective")[0] == EXIT_INPUT
    code, rep = _run(tmp_path, "--group", "sl2", "--param", "q=4", "--check", "forms")
    assert code == EXIT_INPUT and rep["error"]["stage"] == "forms"
    spec = tmp_path / "g.json"
    spec.write_text(json.dumps({"field": {"p": 5}, "generators": [[[1, 1], [1, 1]]]}))
    assert _run(tmp_path, "--group", str(spec))[0] == EXIT_INPUT
    assert main(["--param", "q=5"]) == EXIT_INPUT
    assert main(["--group", "sl2", "--param", "q"]) == EXIT_INPUT
    with pytest.raises(SystemExit):
        main(["--group", "sl2", "--check", "bogus"])


def test_spec_file_group(tmp_path):
    spec = tmp_path / "g.json"
    spec.write_text(json.dumps({"name": "sl2_3", "field": {"p": 3}, "generators": [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]}))
    code, rep = _run(tmp_path, "--group", str(spec), "--check", "weak")
    assert code == EXIT_OK and rep["meta"]["order"] == 24 and rep["weak"]["span_dim"] == 4


def test_byte_determinism():
    cfg = RunConfig(group="sl2", params={"q": 5}, module="L2", checks=["adequacy", "structure", "forms"])
    a = render(cmd_run(cfg)[1])
    b = render(cmd_run(cfg)[1])
    assert a == b


def test_timings_flag():
    code, rep = cmd_run(RunConfig(group="sl2", params={"q": 3}, timings=True))
    assert code == EXIT_OK and "timings" in rep and "timings_ms" in rep["adequacy"]


def test_field_ext_run():
    code, rep = cmd_run(RunConfig(group="sl2", params={"q": 3}, checks=["weak"], field_ext=2))
    assert code == EXIT_OK and rep["meta"]["field"] == "GF(3^2)" and rep["weak"]["span_dim"] == 4


def test_batch(tmp_path):
    manifest = tmp_path / "m.json"
    runs = [
        {"group": "sl2", "params": {"q": 5}, "module": "L3", "checks": ["adequacy"], "out": str(tmp_path / "a.json")},
        {"group": "sl2", "params": {"q": 4}, "module": "L1", "checks": "weak", "out": str(tmp_path / "b.json")},
    ]
    manifest.write_text(json.dumps({"runs": runs}))
    assert main(["--batch", str(manifest), "--workers", "2"]) == EXIT_OK
    assert json.loads((tmp_path / "a.json").read_text())["adequacy"]["adequate"] is True
    assert json.loads((tmp_path / "b.json").read_text())["weak"]["weak_ok"] is True
    runs.append({"group": "sl2", "params": {"q": 5}, "cap_elems": 10})
    manifest.write_text(json.dumps(runs))
    assert main(["--batch", str(manifest)]) == EXIT_RESOURCE
    manifest.write_text("not json")
    assert main(["--batch", str(manifest)]) == EXIT_INPUT


def test_parse_params():
    assert parse_params(["q=5", "top=F20"]) == {"q": 5, "top": "F20"}
    with pytest.raises(ValueError):
        parse_params(["q"])
