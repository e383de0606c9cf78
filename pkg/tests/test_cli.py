"""End-to-end CLI: specs, sweeps, set building, spectra, exit codes."""

import json

import pytest

from ffdelta.cli import main
from ffdelta.field import Field
from ffdelta.pointspace import PointSet, Space
from ffdelta.varieties import sphere


def _write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def _full_pair_spec(**extra):
    doc = {
        "field": "5^1",
        "d": 2,
        "setA": {"kind": "full"},
        "setB": {"kind": "full"},
        "checks": ["energy_bound"],
    }
    doc.update(extra)
    return doc


# ---------------------------------------------------------------------
# run
# ---------------------------------------------------------------------

def test_run_full_space_saturation(tmp_path, capsys):
    spec = _write(tmp_path / "spec.json", _full_pair_spec())
    assert main(["run", spec]) == 0
    line = capsys.readouterr().out.strip()
    doc = json.loads(line)
    assert doc["lhs"] == 25.0 and doc["rhs"] == 25.0
    assert doc["pass"] is True


def test_run_pipeline_with_constructions(tmp_path):
    out = tmp_path / "out.jsonl"
    spec = _write(
        tmp_path / "spec.json",
        {
            "field": "13^1",
            "d": 2,
            "setA": {"kind": "random", "size": 13, "seed": 1},
            "setB": {"kind": "sphere", "radius": 1},
            "checks": [{"name": "profile_diff_bound", "K": 4}, "falconer"],
            "output": str(out),
        },
    )
    assert main(["run", spec]) == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 2
    first, second = (json.loads(l) for l in lines)
    assert first["check"] == "profile_diff_bound"
    assert second["check"] == "falconer"
    assert first["seed"] == "A=1"
    assert first["constant"] > 0


def test_run_malformed_field(tmp_path, capsys):
    spec = _write(tmp_path / "bad.json", _full_pair_spec(field="6^1"))
    assert main(["run", spec]) == 2
    assert "not prime" in capsys.readouterr().err


def test_run_missing_keys(tmp_path, capsys):
    spec = _write(tmp_path / "bad.json", {"field": "5^1"})
    assert main(["run", spec]) == 2
    assert "missing required key" in capsys.readouterr().err


def test_run_random_without_seed_rejected(tmp_path, capsys):
    doc = _full_pair_spec()
    doc["setA"] = {"kind": "random", "size": 3}
    spec = _write(tmp_path / "bad.json", doc)
    assert main(["run", spec]) == 2
    assert "seed" in capsys.readouterr().err


def test_run_not_applicable_exits_zero(tmp_path):
    out = tmp_path / "out.jsonl"
    spec = _write(
        tmp_path / "spec.json",
        {
            "field": "7^1",
            "d": 2,
            "setA": {"kind": "random", "size": 7, "seed": 3},
            "setB": {"kind": "line", "slope": 1, "intercept": 0},
            "checks": [{"name": "profile_diff_bound", "K": 1}],
            "output": str(out),
        },
    )
    assert main(["run", spec]) == 0
    doc = json.loads(out.read_text().strip())
    assert doc["applicable"] is False


def test_run_csv_summary(tmp_path):
    out = tmp_path / "out.jsonl"
    csv_path = tmp_path / "out.csv"
    spec = _write(
        tmp_path / "spec.json",
        _full_pair_spec(output=str(out), csv=str(csv_path)),
    )
    assert main(["run", spec]) == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0].startswith("check,q,p,n,d,cardA,cardB,lhs,rhs,constant,threshold,pass")
    assert len(lines) == 2


# ---------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------

def _sweep_template(tmp_path):
    return _write(
        tmp_path / "tmpl.json",
        {
            "field": "3^1",
            "d": 2,
            "setA": {"kind": "random", "size": 4, "seed": 11},
            "setB": {"kind": "random", "size": 4, "seed": 22},
            "checks": ["energy_bound", "spectral_energy_identity"],
        },
    )


def test_sweep_rows_and_determinism(tmp_path):
    tmpl = _sweep_template(tmp_path)
    csv1, jl1 = tmp_path / "s1.csv", tmp_path / "s1.jsonl"
    csv2, jl2 = tmp_path / "s2.csv", tmp_path / "s2.jsonl"
    args = ["sweep", tmpl, "--q", "3,5,3^2", "--seeds", "1,2"]
    assert main(args + ["-o", str(csv1), "--jsonl", str(jl1)]) == 0
    assert main(args + ["-o", str(csv2), "--jsonl", str(jl2)]) == 0
    assert csv1.read_bytes() == csv2.read_bytes()
    assert jl1.read_bytes() == jl2.read_bytes()
    rows = csv1.read_text().strip().splitlines()
    assert len(rows) == 1 + 3 * 2 * 2  # header + q * seeds * checks
    # row order: q-major, then seed, then spec order of checks
    assert rows[1].startswith("energy_bound,3,")
    assert rows[2].startswith("spectral_energy_identity,3,")
    records = [json.loads(l) for l in jl1.read_text().strip().splitlines()]
    assert all(r["pass"] for r in records)
    assert {r["q"] for r in records} == {3, 5, 9}


def test_sweep_seed_derivation_matches_api(tmp_path):
    from ffdelta.cli import SWEEP_SEED_STRIDE
    from ffdelta.setops import energy_corr

    tmpl = _sweep_template(tmp_path)
    jl = tmp_path / "s.jsonl"
    assert main(["sweep", tmpl, "--q", "7", "--seeds", "1,2", "-o", str(tmp_path / "s.csv"), "--jsonl", str(jl)]) == 0
    records = [json.loads(l) for l in jl.read_text().strip().splitlines()]
    assert records[0]["seed"] == "1" and records[2]["seed"] == "2"
    sp = Space(Field(7), 2)
    for rec, cell_seed in ((records[0], 1), (records[2], 2)):
        A = sp.random_set(4, seed=11 + SWEEP_SEED_STRIDE * cell_seed)
        B = sp.random_set(4, seed=22 + SWEEP_SEED_STRIDE * cell_seed)
        assert rec["measured"]["energy"] == energy_corr(A, B)


def test_sweep_empty_q_list(tmp_path, capsys):
    tmpl = _sweep_template(tmp_path)
    assert main(["sweep", tmpl, "--q", "", "--seeds", "1"]) == 0
    out = capsys.readouterr().out
    assert out.strip() == "check,q,p,n,d,cardA,cardB,lhs,rhs,constant,threshold,pass,applicable,seed,witness,notes"


def test_sweep_cell_error_recorded(tmp_path, capsys):
    tmpl = _sweep_template(tmp_path)
    csv_path = tmp_path / "s.csv"
    assert main(["sweep", tmpl, "--q", "3,12", "--seeds", "1", "-o", str(csv_path)]) == 1
    rows = csv_path.read_text().strip().splitlines()
    assert len(rows) == 4  # header + 2 good rows + 1 error row
    assert rows[-1].startswith("error,")


# ---------------------------------------------------------------------
# build-set and spectrum
# ---------------------------------------------------------------------

def test_build_set_and_spectrum_roundtrip(tmp_path):
    desc = _write(
        tmp_path / "desc.json",
        {"field": "5^1", "d": 2, "set": {"kind": "sphere", "radius": 1}},
    )
    points_path = tmp_path / "pts.json"
    assert main(["build-set", desc, "-o", str(points_path)]) == 0
    doc = json.loads(points_path.read_text())
    sp = Space(Field(5), 2)
    assert PointSet.from_literal(doc) == sphere(sp, 1)

    csv_path = tmp_path / "spec.csv"
    assert main(["spectrum", str(points_path), "-o", str(csv_path)]) == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "m,re,im,modulus"
    assert len(lines) == 1 + 25
    # frequency zero carries |E| / q^d = 4/25
    m0 = lines[1].split(",")
    assert abs(float(m0[1]) - 4 / 25) < 1e-12


def test_build_set_literal_subset(tmp_path):
    desc = _write(
        tmp_path / "desc.json",
        {
            "field": "11^1",
            "d": 2,
            "set": {"kind": "subset", "of": {"kind": "sphere", "radius": 1}, "size": 5, "seed": 3},
        },
    )
    out = tmp_path / "pts.json"
    assert main(["build-set", desc, "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["points"]) == 5
    sp = Space(Field(11), 2)
    parent = sphere(sp, 1)
    assert all(tuple(p) in parent for p in doc["points"])


def test_literal_descriptor_file(tmp_path):
    sp = Space(Field(5), 2)
    ps = sp.random_set(6, seed=2)
    pts_file = tmp_path / "pts.json"
    pts_file.write_text(json.dumps(ps.to_literal()))
    out = tmp_path / "o.jsonl"
    spec = _write(
        tmp_path / "spec.json",
        {
            "field": "5^1",
            "d": 2,
            "setA": {"kind": "literal", "file": str(pts_file)},
            "setB": {"kind": "full"},
            "checks": ["energy_bound"],
            "output": str(out),
        },
    )
    assert main(["run", spec]) == 0
    doc = json.loads(out.read_text().strip())
    assert doc["cardA"] == 6


def test_unknown_check_rejected(tmp_path, capsys):
    spec = _write(tmp_path / "s.json", _full_pair_spec(checks=["mystery"]))
    assert main(["run", spec]) == 2
    assert "unknown check" in capsys.readouterr().err


def test_rerun_byte_identical(tmp_path):
    out1, out2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    spec_doc = {
        "field": "7^1",
        "d": 2,
        "setA": {"kind": "random", "size": 7, "seed": 9},
        "setB": {"kind": "paraboloid"},
        "checks": ["energy_bound", "salem_diff_bound", "falconer"],
    }
    spec = _write(tmp_path / "s.json", spec_doc)
    assert main(["run", spec, "-o", str(out1)]) == 0
    assert main(["run", spec, "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
