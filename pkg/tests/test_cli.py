import json
import subprocess
import sys

import pytest

from holocollapse import formats
from holocollapse.cli import BAD_INPUT, FAILED, OK, main
from holocollapse.constructions import cover_example, realizer_example, strip_example, symmetric_example
from holocollapse.gadgets import crossover_gadget
from holocollapse.graph import UnderlyingGraph
from holocollapse.sampling import rng_of, signature

TWO_UNARIES = {
    "domain_size": 2,
    "signatures": {"F": ["1", "1"], "H": ["2", "3"]},
    "left": [{"name": "u", "signature": "F", "edges": ["e"]}],
    "right": [{"name": "v", "signature": "H", "edges": ["e"]}],
}


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text if isinstance(text, str) else json.dumps(text))
        return str(path)

    return _write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval(write, capsys):
    code, out, _ = run(["eval", write("i.json", TWO_UNARIES)], capsys)
    assert code == OK and out.strip() == "5/1+0/1 i"


def test_pfaffian(write, capsys):
    code, out, _ = run(["pfaffian", write("g.txt", "2\n1 2 3/2 0\n")], capsys)
    assert code == OK and out.strip() == "3/2"


def test_signature_of_gadget(write, capsys):
    path = write("c.json", formats.write_instance(crossover_gadget()))
    code, out, _ = run(["signature", path], capsys)
    sig, _ = formats.read_signature(out)
    assert code == OK and sig.flat()[-1] == -1


def test_check_matchgate(write, capsys):
    code, out, _ = run(["check-matchgate", write("g.txt", "4\n1 2 1 0\n2 3 2 0\n1 4 5 0\n")], capsys)
    assert code == OK and out.startswith("matchgate") and "[graph]" in out


def test_check_non_matchgate(write, capsys):
    f = signature(rng_of(1), (2,) * 4)
    code, out, _ = run(["check-matchgate", write("f.json", formats.write_signature(f))], capsys)
    assert code == FAILED and "differs at input" in out


def test_canonicalize_then_verify(write, capsys, tmp_path):
    graph = write("g.txt", "4\nsplit 2\n1 4 2 0\n1 3 1 1\n2 3 -1 0\n")
    form = str(tmp_path / "form.txt")
    assert run(["canonicalize", graph, "-o", form], capsys)[0] == OK
    code, out, _ = run(["verify", form, "--original", graph], capsys)
    assert code == OK and out.startswith("ok")


def test_verify_detects_tampered_form(write, capsys, tmp_path):
    graph = write("g.txt", "4\nsplit 2\n1 4 2 0\n2 3 -1 0\n")
    form = str(tmp_path / "form.txt")
    run(["canonicalize", graph, "-o", form], capsys)
    text = open(form).read().replace("weight 2/1", "weight 3/1")
    code, out, _ = run(["verify", write("bad.txt", text), "--original", graph], capsys)
    assert code == FAILED and "mismatch" in out


def test_canonicalize_needs_split(write, capsys):
    code, _, err = run(["canonicalize", write("g.txt", "2\n1 2 1 0\n")], capsys)
    assert code == BAD_INPUT and "split" in err


def _problem_files(write, ex):
    p = ex.original
    args = ["--base", _matrix_file(write, "m.json", p.base)]
    for k, f in enumerate(p.left):
        args += ["--left", write(f"f{k}.json", formats.write_signature(f))]
    for k, h in enumerate(p.right):
        args += ["--right", write(f"h{k}.json", formats.write_signature(h))]
    return args


def _collapse_and_verify(argv, capsys, tmp_path):
    out_path = str(tmp_path / "out.json")
    code, _, err = run(argv + ["-o", out_path], capsys)
    assert code == OK, err
    code, out, _ = run(["verify", out_path, "--trials", "5"], capsys)
    return code, out, out_path


def test_collapse_strip(write, capsys, tmp_path):
    ex = strip_example(seed=1)
    code, out, _ = _collapse_and_verify(["collapse", "--mode", "strip", *_problem_files(write, ex)], capsys, tmp_path)
    assert code == OK and out.startswith("ok")


def _matrix_file(write, name, m):
    return write(name, formats.dump_json(formats.matrix_to_json(m)))


def test_collapse_realizer(write, capsys, tmp_path):
    ex = realizer_example(seed=1)
    argv = ["collapse", "--mode", "realizer", *_problem_files(write, ex),
            "--realizer", _matrix_file(write, "a.json", ex.collapsed.certificate.extra["A"])]
    assert _collapse_and_verify(argv, capsys, tmp_path)[0] == OK


def test_collapse_cover(write, capsys, tmp_path):
    ex = cover_example(seed=2)
    extra = ex.collapsed.certificate.extra
    argv = ["collapse", "--mode", "cover", *_problem_files(write, ex),
            "--cover", _matrix_file(write, "p.json", extra["P"]),
            "--coefficients", _matrix_file(write, "q.json", extra["Q"])]
    assert _collapse_and_verify(argv, capsys, tmp_path)[0] == OK


def test_collapse_symmetric(write, capsys, tmp_path):
    ex = symmetric_example(t=2, seed=3)
    argv = ["collapse", "--mode", "symmetric", *_problem_files(write, ex)]
    code, _, path = _collapse_and_verify(argv, capsys, tmp_path)
    assert code == OK
    assert json.loads(open(path).read())["r"] == 1


def test_tampered_collapse_fails(write, capsys, tmp_path):
    ex = strip_example(seed=4)
    out_path = str(tmp_path / "out.json")
    run(["collapse", "--mode", "strip", *_problem_files(write, ex), "-o", out_path], capsys)
    data = json.loads(open(out_path).read())
    data["collapsed"]["base"][0][0] = "12345"
    code, out, _ = run(["verify", write("bad.json", data), "--trials", "20"], capsys)
    assert code == FAILED and "counterexample" in out


def test_collapse_precondition_failure(write, capsys):
    m = write("m.json", '[["1", "1", "0", "0"], ["0", "0", "1", "1"]]')
    code, _, err = run(["collapse", "--mode", "strip", "--base", m, "--constants", "1"], capsys)
    assert code == FAILED and "column" in err


@pytest.mark.parametrize("text", ["", "{", '{"domain_size": 2}'])
def test_bad_instance_is_bad_input(write, capsys, text):
    code, _, err = run(["eval", write("bad.json", text)], capsys)
    assert code == BAD_INPUT and err.startswith("error:")


def test_bad_graph_line_reported(write, capsys):
    code, _, err = run(["pfaffian", write("g.txt", "3\n1 2 1 0\n1 9 1 0\n")], capsys)
    assert code == BAD_INPUT and "line 3" in err


def test_missing_file(capsys):
    code, _, err = run(["pfaffian", "/nonexistent/graph.txt"], capsys)
    assert code == BAD_INPUT


def test_unknown_command(capsys):
    assert run(["frobnicate"], capsys)[0] == BAD_INPUT


def test_module_entry_point(write):
    path = write("i.json", TWO_UNARIES)
    proc = subprocess.run([sys.executable, "-m", "holocollapse", "eval", path], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "5/1+0/1 i"


def test_stdin_verify(write, capsys, monkeypatch, tmp_path):
    import io

    graph = write("g.txt", "2\nsplit 1\n1 2 4 0\n")
    form = str(tmp_path / "form.txt")
    run(["canonicalize", graph, "-o", form], capsys)
    monkeypatch.setattr(sys, "stdin", io.StringIO(open(form).read()))
    assert run(["verify", "-", "--original", graph], capsys)[0] == OK


def test_graph_file_accepted_for_check(write, capsys):
    g = UnderlyingGraph(2, {(0, 1): 1})
    code, _, _ = run(["check-matchgate", write("g.txt", formats.write_graph(g))], capsys)
    assert code == OK
