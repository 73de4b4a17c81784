import io
import json
import subprocess
import sys

import pytest

from forster_forge.cli import dispatch

Z6 = '{"type":"zmod","modulus":"6"}'


def run(*argv):
    buf = io.StringIO()
    code = dispatch(list(argv), stdout=buf)
    text = buf.getvalue()
    return code, (json.loads(text) if text.strip() else None), text


def test_hilbert_example():
    code, out, _ = run("hilbert", "--a", "-1", "--b", "-1", "--place", "2")
    assert code == 0 and out["symbol"] == -1


def test_factor_sl_identity():
    code, out, _ = run("factor-sl", "--ring", Z6, "--matrix", "[[1,0],[0,1]]")
    assert code == 0
    assert out["word"]["m"] == 2 and all(int(c) == 0 for c in out["word"]["coeffs"])


def test_exit_codes():
    assert run("factor-sl", "--ring", Z6, "--matrix", "[[5,0],[0,1]]")[0] == 2
    assert run("factor-sl", "--ring", '{"type":"zmod","n":6}', "--matrix", "[[1]]")[0] == 2
    assert run("hilbert", "--a", "0", "--b", "1", "--place", "3")[0] == 2
    with pytest.raises(SystemExit) as info:
        run("no-such-command")
    assert info.value.code == 64
    assert run("hilbert", "--b", "1", "--place", "3")[0] == 64


def test_breach_exit_code(tmp_path):
    # a tampered result must fail verification with status 3
    code, out, _ = run("hilbert", "--a", "2", "--b", "3", "--place", "3")
    out["symbol"] = -out["symbol"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(out))
    code, ver, _ = run("hilbert", "--verify", str(path))
    assert code == 3 and ver["verified"] is False


CASES = [
    ("factor-sl", "--ring", '{"type":"zmod","modulus":"720"}', "--matrix", "[[1,5,0],[0,1,0],[7,35,1]]"),
    ("min-gens", "--module", '{"ring":' + Z6 + ',"ambient":2,"relations":[[2],[0]]}'),
    ("lift-gens", "--module", '{"ring":' + Z6 + ',"ambient":1,"relations":[]}', "--ideal", "[2]", "--b", "[[3]]"),
    ("two-gen-ideal", "--d", "-5", "--ideal", '["2","0","1","1"]'),
    ("classify", "--idempotent", '{"ring":' + Z6 + ',"e":[[1,0],[0,0]]}', "--gens", "[[1,0],[5,0]]"),
    ("symbol", "--ring", '{"type":"gf","p":"5"}', "--a", "2", "--b", "3", "--n", "2"),
    ("hilbert", "--a", "2", "--b", "5", "--place", "5"),
    ("artin-schreier", "build", "--ring", '{"type":"gf","p":"2"}', "--a", "1"),
    ("selftest", "--seed", "7", "--count", "2"),
]


@pytest.mark.parametrize("argv", CASES, ids=[c[0] for c in CASES])
def test_verify_round_trip(argv, tmp_path):
    code, out, text = run(*argv)
    assert code == 0, text
    path = tmp_path / "out.json"
    path.write_text(text)
    code, ver, text = run(argv[0], *([argv[1]] if argv[0] == "artin-schreier" else []), "--verify", str(path))
    assert code == 0 and ver["verified"], text


@pytest.mark.parametrize("argv", CASES[:-1], ids=[c[0] for c in CASES[:-1]])
def test_output_is_byte_stable(argv):
    assert run(*argv)[2] == run(*argv)[2]


def test_selftest_reports_counts():
    code, out, _ = run("selftest", "--seed", "7", "--count", "3")
    assert code == 0 and out["failures"] == 0
    assert all(v["runs"] == v["passed"] == 3 for v in out["suites"].values())


def test_descend_from_build(tmp_path):
    code, built, text = run("artin-schreier", "build", "--ring", '{"type":"gf","p":"3"}', "--a", "2")
    assert code == 0
    path = tmp_path / "ext.json"
    path.write_text(json.dumps(built["extension"]))
    code, out, text = run("artin-schreier", "descend", "--extension", f"@{path}")
    assert code == 0, text


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "forster_forge", "hilbert", "--a", "-1", "--b", "-1", "--place", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["symbol"] == -1
