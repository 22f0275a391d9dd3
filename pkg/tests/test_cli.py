import json

import pytest

from iaslsign.cli import main

P2 = "0 1\n"
P3 = "0 1\n1 2\n"
C4 = "0 1\n1 2\n2 3\n0 3\n"
K3 = "0 1\n1 2\n0 2\n"


@pytest.fixture
def run(tmp_path, capsys):
    def _run(*args, files=None):
        names = []
        for i, text in enumerate(files or []):
            p = tmp_path / f"in{i}.txt"
            p.write_text(text)
            names.append(str(p))
        code = main([args[0], *names, *args[1:]])
        out = capsys.readouterr().out
        return code, out
    return _run


def lines(out):
    return [json.loads(x) for x in out.splitlines()]


class TestClassify:
    def test_weak_uniform(self, run):
        code, out = run("classify", files=[P2, '{"0":[1],"1":[2,3]}'])
        doc = json.loads(out)
        assert code == 0
        assert doc["class"]["is_weak"] and doc["class"]["uniform_k"] == 2
        assert doc["mono_indexed"] == [0]
        assert doc["edges"] == [{"u": 0, "v": 1, "label": "{3,4}", "size": 2}]

    def test_not_injective(self, run):
        code, out = run("classify", files=[P2, '{"0":[0],"1":[0]}'])
        assert code == 2 and json.loads(out)["error"] == "NotInjective"

    def test_isoarithmetic(self, run):
        code, out = run("classify", files=[P3, '{"0":[0,2],"1":[1],"2":[3,5]}'])
        assert code == 0 and json.loads(out)["class"]["isoarithmetic_d"] == 2

    def test_outside_ground_set(self, run):
        code, out = run("classify", "--ground-set", "0..1", files=[P2, '{"0":[0],"1":[5]}'])
        assert code == 2 and json.loads(out)["error"] == "LabelOutsideGroundSet"

    def test_human(self, run):
        code, out = run("classify", "--human", files=[P2, '{"0":[1],"1":[2,3]}'])
        assert code == 0 and "0 1 {3,4} 2" in out


class TestSign:
    @pytest.mark.parametrize("labels, expected", [
        ('{"0":[1],"1":[2]}', "0 1 - 1"),
        ('{"0":[0,1],"1":[0,2]}', "0 1 + 4"),
        ('{"0":[0,2,4],"1":[1,3]}', "0 1 + 4"),
    ])
    def test_examples(self, run, labels, expected):
        code, out = run("sign", "--human", files=[P2, labels])
        assert code == 0 and out.strip() == expected
        code, out = run("sign", files=[P2, labels])
        u, v, sign, size = expected.split()
        assert json.loads(out) == {"edges": [{"u": 0, "v": 1, "sign": sign, "size": int(size)}]}

    def test_invalid(self, run):
        code, _ = run("sign", files=[P2, '{"0":[1]}'])
        assert code == 2


class TestBalance:
    def test_all_positive_c4(self, run):
        code, out = run("balance", files=["0 1 +\n1 2 +\n2 3 +\n0 3 +\n"])
        assert code == 0 and json.loads(out) == {"balanced": True, "partition": [[0, 1, 2, 3], []]}

    def test_negative_triangle(self, run):
        code, out = run("balance", files=["0 1 -\n1 2 -\n0 2 -\n"])
        assert code == 1 and json.loads(out) == {"balanced": False, "cycle": [0, 1, 2]}

    def test_c4_two_negatives(self, run):
        code, out = run("balance", "--oracle", files=["0 1 -\n1 2 -\n2 3 +\n0 3 +\n"])
        assert code == 0 and json.loads(out)["balanced"] is True

    def test_from_labeling(self, run):
        code, out = run("balance", files=[K3, '{"0":[0],"1":[1],"2":[2]}'])
        assert code == 1

    def test_budget(self, run):
        k5 = "".join(f"{i} {j} +\n" for i in range(5) for j in range(i + 1, 5))
        code, out = run("balance", "--oracle", "--cycle-budget", "3", files=[k5])
        assert code == 3 and json.loads(out)["error"] == "CycleBudgetExceeded"

    def test_bad_input(self, run):
        code, _ = run("balance", files=["0 1 ?\n"])
        assert code == 2

    def test_human(self, run):
        code, out = run("balance", "--human", files=["0 1 -\n1 2 -\n0 2 -\n"])
        assert out.strip() == "not balanced: negative cycle 0-1-2"


class TestCluster:
    def test_single_negative_edge(self, run):
        code, out = run("cluster", files=["0 1 -\n"])
        assert code == 0 and json.loads(out) == {"clusterable": True, "clusters": [[0], [1]]}

    def test_connected_all_positive(self, run):
        code, out = run("cluster", files=["0 1 +\n1 2 +\n"])
        assert code == 1 and json.loads(out) == {"clusterable": False}

    def test_negative_triangle(self, run):
        code, _ = run("cluster", "--oracle", files=["0 1 -\n1 2 -\n0 2 -\n"])
        assert code == 1

    def test_missing_file(self, run):
        assert main(["cluster", "/nonexistent/graph.txt"]) == 2


class TestSearch:
    def test_p2_any(self, run):
        code, out = run("search", "--ground-set", "0..1", "--filter", "any", "--max-label-size", "2", files=[P2])
        assert code == 0 and len(lines(out)) == 6
        assert lines(out)[0] == {"0": [0], "1": [0, 1]}

    def test_k3_weak_uniform(self, run):
        code, out = run("search", "--filter", "weak_uniform,k=2", files=[K3])
        assert code == 1 and json.loads(out) == {"found": 0}

    def test_c4_strong_uniform(self, run):
        code, out = run("search", "--filter", "strong_uniform,k=4", "--limit", "3", files=[C4])
        assert code == 0 and 1 <= len(lines(out)) <= 3

    def test_bad_filter(self, run):
        code, _ = run("search", "--filter", "nonsense", files=[P2])
        assert code == 2

    def test_bad_ground_set(self, run):
        code, _ = run("search", "--ground-set", "0-4", files=[P2])
        assert code == 2


class TestVerify:
    def test_w1(self, run):
        code, out = run("verify", "--theorem", "W1")
        doc = json.loads(out)
        assert code == 0 and doc["status"] == "confirmed" and doc["counterexamples"] == []

    def test_w5(self, run):
        code, out = run("verify", "--theorem", "W5")
        assert code == 0 and json.loads(out)["status"] == "confirmed"

    def test_all(self, run, tmp_path):
        target = tmp_path / "report.json"
        code, out = run("verify", "--max-n", "4", "--ground-set", "0..3", "--max-label-size", "2",
                        "--output", str(target))
        docs = json.loads(target.read_text())
        assert out == ""
        assert [d["theorem_id"] for d in docs][:3] == ["S1", "S2", "S3"]
        assert len(docs) == 19
        assert code == (0 if all(d["status"] == "confirmed" for d in docs) else 1)

    def test_refuted_exit_code(self, run):
        code, out = run("verify", "--theorem", "S4", "--max-n", "3")
        assert json.loads(out)["status"] != "confirmed" and code == 1

    def test_unknown_theorem(self, run):
        code, out = run("verify", "--theorem", "Q7")
        assert code == 2 and json.loads(out)["error"] == "InputError"

    def test_byte_identical(self, run):
        a = run("verify", "--theorem", "A2", "--max-n", "4")
        b = run("verify", "--theorem", "A2", "--max-n", "4")
        assert a == b
