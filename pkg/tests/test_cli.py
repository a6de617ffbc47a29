"""Command line interface: output conventions, exit codes, interchange."""

import json

from dividedops.autgroup import MonomialAut, ShiftVector, monomial_generator_images, shift_generator_images
from dividedops.cli import main
from dividedops.expr import eval_operator
from dividedops.interchange import (
    dumps,
    images_from_dict,
    images_to_dict,
    op_from_dict,
    op_to_dict,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_normalize_example(capsys):
    code, out, _ = run(capsys, "normalize", "d1[2]*x1", "--p", "3", "--n", "1")
    assert code == 0
    assert out.strip() == "x1*d1[2] + d1[1]"


def test_normalize_corollary_instance(capsys):
    code, out, _ = run(capsys, "normalize", "(d1[1]+x1^-1)^2", "--p", "2")
    assert code == 0
    assert out.strip() == "0"


def test_normalize_machine_round_trip(capsys):
    code, out, _ = run(capsys, "normalize", "d1[2]*x1 + x2^-3", "--p", "5", "--n", "2",
                       "--format", "machine")
    assert code == 0
    data = json.loads(out)
    assert op_from_dict(data) == eval_operator("d1[2]*x1 + x2^-3", 5, 2)


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "normalize", "d1[2]*", "--p", "3")
    assert code == 1
    assert "offset 6" in err


def test_usage_error_exit_code(capsys):
    code, _, err = run(capsys, "normalize", "x1", "--p", "6")
    assert code == 1


def test_out_of_range_variable_is_usage_error(capsys):
    code, _, err = run(capsys, "normalize", "x2", "--p", "3", "--n", "1")
    assert code == 1


def test_act(capsys):
    code, out, _ = run(capsys, "act", "d1[2]", "x1^5", "--p", "3")
    assert code == 0
    assert out.strip() == "x1^3"


def test_act_rejects_operator_operand(capsys):
    code, _, _ = run(capsys, "act", "d1[1]", "d1[1]", "--p", "3")
    assert code == 1


def test_sigma_apply(capsys):
    code, out, _ = run(capsys, "sigma", "--digits", "1", "apply", "d1[1]", "--p", "2")
    assert code == 0
    assert out.strip() == "d1[1] + x1^-1"


def test_sigma_apply_insufficient_precision(capsys):
    code, _, err = run(capsys, "sigma", "--digits", "1", "apply", "d1[2]",
                       "--p", "2", "--precision", "1")
    assert code == 3


def test_build_sigma_extract_round_trip(tmp_path, capsys):
    path = tmp_path / "sigma.json"
    code, _, _ = run(capsys, "build-sigma", "--digits", "1,1", "--p", "2",
                     "--precision", "2", "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "extract", str(path), "--p", "2", "--precision", "2")
    assert code == 0
    assert out.strip() == "s[1] = 1 + 1*2"


def test_extract_rejects_malformed_images(tmp_path, capsys):
    g = shift_generator_images(ShiftVector.from_digits([[1, 0]], 2))
    data = images_to_dict(g)
    # corrupt the level-0 image: perturbation on x^{+1} instead of x^{-1}
    data["d_images"][0][0]["terms"][-1]["x_exp"] = [1]
    path = tmp_path / "bad.json"
    path.write_text(dumps(data))
    code, _, err = run(capsys, "extract", str(path))
    assert code == 4


def test_extract_bad_json_is_parse_error(tmp_path, capsys):
    path = tmp_path / "garbage.json"
    path.write_text("{not json")
    code, _, _ = run(capsys, "extract", str(path))
    assert code == 1


def test_extract_missing_file(capsys):
    code, _, _ = run(capsys, "extract", "/nonexistent/sigma.json")
    assert code == 1


def test_factor_command(tmp_path, capsys):
    from dividedops.autgroup import compose_images

    s = ShiftVector.from_digits([[1, 0], [0, 1]], 2)
    tau = MonomialAut.create(((0, 1), (1, 0)), (1, 1), 2)
    g = compose_images(shift_generator_images(s), monomial_generator_images(tau, 2))
    path = tmp_path / "aut.json"
    path.write_text(dumps(images_to_dict(g)))
    code, out, _ = run(capsys, "factor", str(path))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "s[1] = 1"
    assert lines[1] == "s[2] = 1*2"
    assert lines[2] == "matrix = [[0, 1], [1, 0]]"
    assert lines[3] == "scalars = [1, 1]"


def test_verify_relations(capsys):
    code, out, _ = run(capsys, "verify", "relations", "--p", "2", "--n", "1")
    assert code == 0
    assert "OK" in out


def test_verify_all_small(capsys):
    code, out, _ = run(capsys, "verify", "all", "--p", "2", "--n", "1", "--seed", "3")
    assert code == 0
    assert "OK" in out


def test_verify_failure_exit_code(capsys):
    # a window that misses x^-1 makes the kernel check legitimately fail
    code, out, _ = run(capsys, "verify", "kernel", "--p", "3", "--n", "1",
                       "--window", "0:4")
    assert code == 2
    assert "FAILED" in out


def test_verify_machine_format(capsys):
    code, out, _ = run(capsys, "verify", "kernel", "--p", "3", "--n", "1",
                       "--format", "machine")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert data["suites"]


def test_images_file_round_trip(tmp_path):
    s = ShiftVector.from_digits([[1, 2, 0], [2, 0, 1]], 3)
    g = shift_generator_images(s)
    text = dumps(images_to_dict(g))
    assert images_from_dict(json.loads(text)) == g
    # serialization is stable byte for byte
    assert dumps(images_to_dict(images_from_dict(json.loads(text)))) == text


def test_operator_dict_round_trip():
    op = eval_operator("d1[3]*x1^-2 + 2*x2*d2[1] + 1", 5, 2)
    assert op_from_dict(op_to_dict(op)) == op
