import csv
import io
import os
import subprocess
import sys

import numpy as np
import pytest
from scipy.integrate import simpson

from pseudoharmonic.cli import PUBLISHED_STATES, main
from pseudoharmonic.moldb import builtin_text


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.reader(io.StringIO(text)))


def test_constants(capsys):
    code, out, _ = run(capsys, "constants")
    assert code == 0
    rows = rows_of(out)
    assert [r[0] for r in rows] == ["hbar", "amu_kg", "ev_J", "cm1_J", "angstrom_m"]
    assert all(len(r) == 3 and float(r[1]) > 0 for r in rows)
    assert dict((r[0], float(r[1])) for r in rows)["hbar"] == 1.054571817e-34


def test_spectrum_ground_state(capsys):
    code, out, _ = run(capsys, "spectrum", "--molecule", "N2", "--n-max", "0", "--l-max", "0")
    assert code == 0
    header, row = rows_of(out)
    assert header == ["n", "l", "energy_ev"]
    assert row[:2] == ["0", "0"]
    assert float(row[2]) == pytest.approx(0.1091559, abs=2e-4)


def test_spectrum_grid(capsys):
    code, out, _ = run(capsys, "spectrum", "--molecule", "NO", "--n-max", "5", "--l-max", "5")
    assert code == 0
    body = rows_of(out)[1:]
    assert len(body) == 36
    keys = [(int(n), int(l)) for n, l, _ in body]
    assert keys == sorted(keys)
    assert all(float(e) > 0 for _, _, e in body)


def test_spectrum_cm1_and_digits(capsys):
    _, out_ev, _ = run(capsys, "spectrum", "--molecule", "CO", "--n-max", "1", "--l-max", "0", "--digits", "12")
    _, out_cm, _ = run(capsys, "spectrum", "--molecule", "CO", "--n-max", "1", "--l-max", "0", "--units", "cm1", "--digits", "12")
    ev = float(rows_of(out_ev)[2][2])
    cm = float(rows_of(out_cm)[2][2])
    assert rows_of(out_cm)[0][2] == "energy_cm1"
    assert cm * 1.239841984e-4 == pytest.approx(ev, rel=1e-9)


def test_unknown_molecule(capsys):
    code, _, err = run(capsys, "spectrum", "--molecule", "QQ", "--n-max", "1", "--l-max", "1")
    assert code == 2
    assert "QQ" in err


def test_invalid_flags(capsys):
    with pytest.raises(SystemExit) as info:
        main(["spectrum", "--molecule", "N2", "--n-max", "-1", "--l-max", "0"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["spectrum", "--molecule", "N2", "--n-max", "1", "--l-max", "0", "--units", "hartree"])
    assert info.value.code == 2


def test_molecules_file(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text(builtin_text() + "XY 50000 1.5 5.0\n")
    code, out, _ = run(capsys, "spectrum", "--molecules", str(path), "--molecule", "XY", "--n-max", "1", "--l-max", "1")
    assert code == 0 and len(rows_of(out)) == 5
    bad = tmp_path / "bad.txt"
    bad.write_text("XY 1 2\n")
    code, _, err = run(capsys, "spectrum", "--molecules", str(bad), "--molecule", "XY", "--n-max", "0", "--l-max", "0")
    assert code == 2 and "line 1" in err


def test_table2(capsys):
    code, out, _ = run(capsys, "table2")
    assert code == 0
    rows = rows_of(out)
    assert rows[0] == ["n", "l", "N2", "CO", "NO", "CH"]
    body = {(int(r[0]), int(r[1])): [float(x) for x in r[2:]] for r in rows[1:]}
    assert list(body) == list(PUBLISHED_STATES)
    assert len(body) == 17
    assert body[4, 3][2] == pytest.approx(0.7445070, abs=2e-4)
    assert body[2, 0][0] == pytest.approx(0.5455302, abs=2e-4)


def test_wavefunction_nodes_and_norm(capsys):
    for n in (0, 2):
        code, out, _ = run(capsys, "wavefunction", "--molecule", "CO", "--n", str(n), "--l", "1", "--digits", "10")
        assert code == 0
        rows = rows_of(out)
        assert rows[0] == ["r_angstrom", "u"]
        r, u = np.array(rows[1:], dtype=float).T
        signs = np.sign(u[u != 0])
        assert np.count_nonzero(signs[1:] != signs[:-1]) == n
        assert simpson(u**2, x=r) == pytest.approx(1.0, abs=1e-6)


def test_wavefunction_range(capsys):
    code, out, _ = run(capsys, "wavefunction", "--molecule", "N2", "--n", "1", "--l", "0", "--r-min", "1.0", "--r-max", "1.2", "--samples", "11")
    assert code == 0
    r = np.array(rows_of(out)[1:], dtype=float)[:, 0]
    np.testing.assert_allclose(r, np.linspace(1.0, 1.2, 11))
    code, _, _ = run(capsys, "wavefunction", "--molecule", "N2", "--n", "1", "--l", "0", "--r-min", "1.2", "--r-max", "1.0")
    assert code == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--molecule", "N2", "--n-max", "2", "--l-max", "2")
    assert code == 0
    rows = rows_of(out)
    assert rows[0] == ["n", "l", "e_closed_ev", "e_numeric_ev", "rel_err", "nodes"]
    assert len(rows) == 10
    assert all(r[0] == r[5] for r in rows[1:])


def test_verify_detects_perturbation(capsys):
    code, _, _ = run(capsys, "verify", "--molecule", "N2", "--n-max", "0", "--l-max", "1", "--perturb-d0", "0.01")
    assert code == 1


def test_verify_hook_hidden(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--help"])
    out, _ = capsys.readouterr()
    assert "perturb" not in out


def test_verify_numerical_failure(capsys, monkeypatch):
    from pseudoharmonic import oracle

    def fail(*args, **kwargs):
        raise oracle.SearchError("no bracket")

    monkeypatch.setattr(oracle, "verify", fail)
    code, _, err = run(capsys, "verify", "--molecule", "CH", "--n-max", "0", "--l-max", "0")
    assert code == 3
    assert "n=0, l=0" in err


def test_wavefunction_numerical_failure(capsys, monkeypatch):
    from pseudoharmonic import wavefunc

    def fail(*args, **kwargs):
        raise wavefunc.NormalizationError("grid too coarse")

    monkeypatch.setattr(wavefunc, "normalize", fail)
    code, _, _ = run(capsys, "wavefunction", "--molecule", "CH", "--n", "0", "--l", "0")
    assert code == 3


def test_deterministic_subprocess_output():
    cmd = [sys.executable, "-m", "pseudoharmonic", "table2"]
    env = dict(os.environ, LC_ALL="de_DE.UTF-8", LANG="de_DE.UTF-8")
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True, env=env).stdout
    assert first == second
    assert b"," in first and b";" not in first
