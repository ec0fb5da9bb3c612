import json

import pytest

from kernelforge import cli


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sigma_json(capsys):
    code, out, _ = run(capsys, [
        "sigma", "--space", "bidisk", "--alpha", "0", "--beta", "0",
        "--theta", "1"])
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "sigma"
    assert report["passed"] is True
    sigma = {i["item"]: i["value"][0] for i in report["items"]}
    assert sigma["sigma"] == pytest.approx(1.0, rel=1e-10)
    assert sigma["sigma"] == pytest.approx(sigma["sigma_gamma_form"], rel=1e-10)
    assert "wall_time" in report


def test_kernel_with_oracle(capsys):
    code, out, _ = run(capsys, [
        "kernel", "--space", "bidisk", "--alpha", "0", "--beta", "0",
        "--theta", "1", "--pair", "0.3,0.2,0.25,-0.1", "--oracle"])
    assert code == 0
    report = json.loads(out)
    item = report["items"][0]
    assert item["passed"] and item["rel_err"] < 1e-6


def test_kernel_pair_complex_form(capsys):
    # 8-value form with zero imaginary parts matches the 4-value form
    base = ["kernel", "--space", "fock", "--alpha", "1", "--beta", "1",
            "--theta", "1"]
    _, out4, _ = run(capsys, base + ["--pair", "0.5,-0.5,1.0,0.0"])
    _, out8, _ = run(capsys, base + ["--pair", "0.5,0,-0.5,0,1.0,0,0.0,0"])
    v4 = json.loads(out4)["items"][0]["value"]
    v8 = json.loads(out8)["items"][0]["value"]
    assert v4 == pytest.approx(v8)


def test_kernel_points_file(capsys, tmp_path):
    pts = tmp_path / "points.txt"
    pts.write_text("# comment line\n0.2,0.1,0.4,-0.1\n0.1,0.1,0.1,0.1\n")
    code, out, _ = run(capsys, [
        "kernel", "--space", "bidisk", "--alpha", "0", "--beta", "0",
        "--points-file", str(pts)])
    assert code == 0
    assert len(json.loads(out)["items"]) == 2


def test_kernel_bad_pair_is_domain_error(capsys):
    code, _, err = run(capsys, [
        "kernel", "--space", "bidisk", "--alpha", "0", "--beta", "0",
        "--pair", "0.1,0.2,0.3"])
    assert code == cli.EXIT_DOMAIN
    assert "domain error" in err


def test_kernel_outside_domain(capsys):
    code, _, err = run(capsys, [
        "kernel", "--space", "bidisk", "--alpha", "0", "--beta", "0",
        "--pair", "1.2,0.0,0.0,0.0"])
    assert code == cli.EXIT_DOMAIN


def test_kernel_no_points(capsys):
    code, _, _ = run(capsys, [
        "kernel", "--space", "bidisk", "--alpha", "0", "--beta", "0"])
    assert code == cli.EXIT_DOMAIN


def test_norm_expand_with_oracle(capsys):
    code, out, _ = run(capsys, [
        "norm-expand", "--space", "bidisk", "--alpha", "0", "--beta", "0",
        "--theta", "1", "--poly", "z1^2*z2 - z1", "--oracle"])
    assert code == 0
    report = json.loads(out)
    assert report["passed"]
    assert report["items"][-1]["item"] == "total"
    assert all(i["passed"] for i in report["items"])


def test_norm_expand_poly_file(capsys, tmp_path):
    pf = tmp_path / "f.txt"
    pf.write_text("z1 - z2\n")
    code, out, _ = run(capsys, [
        "norm-expand", "--space", "fock", "--alpha", "1", "--beta", "1",
        "--poly-file", str(pf)])
    assert code == 0
    assert json.loads(out)["items"][-1]["value"][0] == pytest.approx(2.0)


def test_verify_suite(capsys):
    code, out, _ = run(capsys, ["verify", "delta-identities"])
    assert code == 0
    report = json.loads(out)
    assert report["passed"] and report["command"] == "verify"


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, ["verify", "no-such-suite"])
    assert code == cli.EXIT_DOMAIN
    assert "unknown suite" in err


def test_csv_format(capsys):
    code, out, _ = run(capsys, [
        "sigma", "--space", "fock", "--alpha", "1", "--beta", "1",
        "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("item,")
    assert len(lines) == 3


def test_determinism_same_seed(capsys):
    argv = ["verify", "delta-identities", "--seed", "7"]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    r1, r2 = json.loads(out1), json.loads(out2)
    r1.pop("wall_time"), r2.pop("wall_time")
    assert r1 == r2


def test_max_terms_env_var(capsys, monkeypatch):
    monkeypatch.setenv("KERNELFORGE_MAX_TERMS", "3")
    code, _, err = run(capsys, [
        "kernel", "--space", "bidisk", "--alpha", "0", "--beta", "0",
        "--theta", "1", "--pair", "0.6,0.5,0.6,0.5"])
    assert code == cli.EXIT_CONVERGENCE
    assert "convergence" in err
