import csv
import io
import json

from drinfeld.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_orders(capsys):
    code, out, _ = run(capsys, "orders", "--p", "5")
    assert code == 0
    assert "matches closed form: True" in out
    code, out, _ = run(capsys, "orders", "--p", "3", "--f", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["q"] == 9 and data["matches_closed_form"]


def test_orders_rejects_two(capsys):
    code, _, err = run(capsys, "orders", "--p", "2")
    assert code == 2 and "not supported" in err


def test_bundle_info(capsys):
    code, out, _ = run(capsys, "bundle", "info", "--p", "3",
                       "--k0", "-2", "--k1", "4")
    assert code == 0
    data = json.loads(out)
    assert data["weight"] == -1 and data["positivity"] == "mixed"
    code, _, err = run(capsys, "bundle", "info", "--p", "3",
                       "--k0", "1", "--k1", "2")
    assert code == 2 and "divisible" in err


def test_cohomology_text_json_csv(capsys):
    code, out, _ = run(capsys, "cohomology", "--p", "3", "--k0", "1",
                       "--k1", "1", "--radius", "1")
    assert code == 0 and "h0 = 6" in out
    code, out, _ = run(capsys, "cohomology", "--p", "3", "--k0", "1",
                       "--k1", "1", "--radius", "1", "--json")
    data = json.loads(out)
    assert (data["h0"], data["h1"]) == (6, 0) and data["gauge_seed"] == 0
    code, out, _ = run(capsys, "cohomology", "--p", "3", "--k0", "1",
                       "--k1", "1", "--radius", "1", "--csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["p", "f", "k0", "k1", "r", "radius", "h0", "h1",
                       "euler", "seed"]
    assert rows[1] == ["3", "1", "1", "1", "0", "1", "6", "0", "6", "0"]


def test_cohomology_resource_cap(capsys):
    code, _, err = run(capsys, "cohomology", "--p", "3", "--k0", "0",
                       "--k1", "0", "--radius", "14")
    assert code == 3 and "resource cap" in err


def test_cohomology_rejects_extension(capsys):
    code, _, err = run(capsys, "cohomology", "--p", "3", "--f", "2",
                       "--k0", "0", "--k1", "0", "--radius", "1")
    assert code == 2 and "f = 1" in err


def test_cartier_scan(capsys):
    code, out, _ = run(capsys, "cartier", "scan", "--p", "3", "--ext", "4",
                       "--json")
    assert code == 0
    data = json.loads(out)
    assert data["pi_zero_count"] == 3 and data["f_zero_count"] == 9


def test_hecke_verify(capsys):
    code, out, _ = run(capsys, "hecke", "verify", "--p", "3", "--k", "1",
                       "--window", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["recurrence_ok"] and data["support_ok"]
    assert data["equivariance_trials"] == 20


def test_supersingular(capsys):
    code, out, _ = run(capsys, "supersingular", "--p", "3", "--ext", "1",
                       "--radius", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["bundle_count"] == 12 and data["bijective"]
    assert all(data["lambda_nonzero"])


def test_sweep_deterministic(capsys):
    code, out, _ = run(capsys, "sweep", "--p", "3", "--weight", "-1",
                       "--radius", "3")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 1 + 9              # header + 3 bundles x 3 radii
    code, out2, _ = run(capsys, "sweep", "--p", "3", "--weight", "-1",
                        "--radius", "3")
    assert out == out2
    # seed changes leave the dimensions alone
    code, out3, _ = run(capsys, "sweep", "--p", "3", "--weight", "-1",
                        "--radius", "3", "--seed", "7")
    dims = lambda s: [r[6:9] for r in list(csv.reader(io.StringIO(s)))[1:]]
    assert dims(out) == dims(out3)


def test_sweep_empty_range(capsys):
    code, out, _ = run(capsys, "sweep", "--p", "3", "--weight", "-1",
                       "--radius", "2", "--k0-min", "5", "--k0-max", "4")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 1


def test_selftest_force_fail(capsys):
    code, out, _ = run(capsys, "selftest", "--force-fail")
    assert code == 4
