import json
import pathlib
import subprocess
import sys

import pytest

from hstab.cli import run

GOLDEN = pathlib.Path(__file__).parent / "golden"


def cli(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_lambda_n(capsys):
    assert cli(capsys, "forms", "lambda-n", 5)[:2] == (0, '{"epsilon":-1,"lambda":"2Z"}\n')
    assert cli(capsys, "forms", "lambda-n", 7)[1] == '{"epsilon":-1,"lambda":"Z"}\n'
    assert cli(capsys, "forms", "lambda-n", 4)[1] == '{"epsilon":1,"lambda":"0"}\n'


def test_mmm(capsys):
    assert cli(capsys, "mmm", "degrees", "--n", 3, "--max", 10)[1] == "2 2 4 6 6 6 8 8 10 10 10 10\n"
    assert cli(capsys, "mmm", "hilbert", "--n", 3, "--max", 6)[1] == "1 0 2 0 4 0 9\n"
    code, out, _ = cli(capsys, "mmm", "degrees", "--n", 2, "--max", 4)
    assert code == 1 and json.loads(out)["error"] == "MmmError"


def test_ka_build(capsys):
    code, out, _ = cli(capsys, "ka", "build", "--g", 1, "--epsilon", -1, "--lambda", "2Z", "--bound", 1)
    doc = json.loads(out)
    assert code == 0 and len(doc["vertices"]) == 4 and doc["f_vector"] == [4]
    assert all(len(s) == 1 for s in doc["maximal_simplices"])


def test_ka_build_rejects_illegal_parameter(capsys):
    code, out, _ = cli(capsys, "ka", "build", "--g", 1, "--epsilon", 1, "--lambda", "2Z", "--bound", 1)
    assert code == 1 and json.loads(out)["type"] == "error"


def test_ka_link(capsys):
    code, out, _ = cli(capsys, "ka", "link", "--g", 2, "--bound", 1, "--simplex", "[[[1,0,0,0],[0,1,0,0]]]")
    doc = json.loads(out)
    assert code == 0 and doc["complement"]["gram"] == [[0, 1], [-1, 0]]
    assert len(doc["link"]["vertices"]) == 4


def test_homology_golden(capsys):
    _, out, _ = cli(capsys, "homology", GOLDEN / "rp2.json")
    assert out == ('{"groups":[{"betti":1,"degree":0,"torsion":[]},{"betti":0,"degree":1,"torsion":[2]},'
                   '{"betti":0,"degree":2,"torsion":[]}],"type":"homology"}\n')
    _, out, _ = cli(capsys, "homology", GOLDEN / "octahedron.json", "--reduced")
    assert [g["betti"] for g in json.loads(out)["groups"]] == [0, 0, 0, 1]
    for name in ("circle_chains.json", "injective_words_2.json"):
        _, out, _ = cli(capsys, "homology", GOLDEN / name)
        assert [g["betti"] for g in json.loads(out)["groups"]] == [1, 1]


def test_homology_cache(capsys, tmp_path):
    a = cli(capsys, "--cache-dir", tmp_path, "homology", GOLDEN / "octahedron.json")
    b = cli(capsys, "--cache-dir", tmp_path, "homology", GOLDEN / "octahedron.json")
    assert a[1] == b[1] and "cache miss" in a[2] and "cache hit" in b[2]


def test_wcm_and_swi(capsys):
    doc = json.loads(cli(capsys, "wcm", GOLDEN / "octahedron.json", "--n", 2)[1])
    assert doc["verdict"] == "Yes"
    doc = json.loads(cli(capsys, "wcm", GOLDEN / "circle.json", "--n", 2)[1])
    assert doc["verdict"] == "No" and doc["certificate"] == []
    doc = json.loads(cli(capsys, "swi", GOLDEN / "fold_map.json")[1])
    assert doc["simplexwise_injective"] is False and set(doc["criteria"]) == {"i", "ii", "iii", "iv"}


def test_forms_check(capsys):
    doc = json.loads(cli(capsys, "forms", "check", GOLDEN / "hyperbolic2.json")[1])
    assert doc["valid"] and doc["nondegenerate"] and doc["rank"] == 4
    doc = json.loads(cli(capsys, "forms", "check", GOLDEN / "bad_alpha_morphism.json")[1])
    assert doc["valid"] is False
    code, out, _ = cli(capsys, "forms", "check", GOLDEN / "circle.json")
    assert code == 1


def test_repair_trace(capsys):
    code, out, _ = cli(capsys, "repair", GOLDEN / "repair_square.json", "--trace")
    doc = json.loads(out)
    assert code == 0 and doc["bad_remaining"] == 0 and doc["steps"] == 1
    assert doc["trace"] == ["step 0: removed [4, 5] -> [4]; fresh [6]; cost 3; measure [0, 1] -> [0, 0]"]
    assert [0, 0] in doc["map"] and [2, 1] in doc["map"]


def test_specseq_tables(capsys):
    _, out, _ = cli(capsys, "specseq", "e1", "--injective-words", 2)
    assert out.splitlines()[:3] == ["E1 (augmented)", "q=0   1  2  2", "p=   -1  0  1"]
    assert "d1 1,0 -> 0,0: [-1 1] [1 -1]" in out
    _, out, _ = cli(capsys, "specseq", "e2", "--injective-words", 2, "--no-augmentation", "--json")
    assert json.loads(out)["entries"] == [[0, 0, 1, []], [1, 0, 1, []]]
    _, out, _ = cli(capsys, "specseq", "e2", GOLDEN / "injective_words_2.json", "--json")
    assert json.loads(out)["entries"] == [[-1, 0, 0, []], [0, 0, 0, []], [1, 0, 1, []]]
    _, out, _ = cli(capsys, "specseq", "total", "--injective-words", 2)
    assert out.startswith("absolute: H_0 = Z, H_1 = Z\n")


def test_specseq_range(capsys):
    _, out, _ = cli(capsys, "specseq", "range", "--preset", "general")
    assert out.splitlines()[:2] == ["isomorphism for k <= (g - 4)/2  (equivalently g >= 2k + 4)",
                                    "surjective for k <= (g - 2)/2  (equivalently g >= 2k + 2)"]
    _, out, _ = cli(capsys, "specseq", "range", "--connectivity=-3/2", "--json")
    assert json.loads(out)["iso"] == [-4, 2]
    code, out, _ = cli(capsys, "specseq", "range")
    assert code == 1


@pytest.mark.parametrize("argv", [[], ["forms"], ["mmm", "degrees", "--n", "x", "--max", "1"], ["bogus"],
                                  ["specseq", "range", "--preset", "none"]])
def test_usage_errors_exit_2(capsys, argv):
    assert cli(capsys, *argv)[0] == 2


def test_domain_error_document(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, _ = cli(capsys, "homology", bad)
    assert code == 1 and json.loads(out)["error"] == "DocumentError"


def test_output_is_deterministic(capsys):
    runs = [cli(capsys, "ka", "build", "--g", 2, "--bound", 1)[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "hstab", "forms", "lambda-n", "5"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == '{"epsilon":-1,"lambda":"2Z"}\n'
