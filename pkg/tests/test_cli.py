"""The command-line front end: commands, exit statuses, and JSON stability."""

import json

import pytest

from comono.cli import main

GH_DOC = """\
coalg-format 1
field Q

coalgebra GH
  basis g h
  delta g g g 1
  delta h h h 1
  counit g 1
  counit h 1
end

coalgebra K
  basis e
  delta e e e 1
  counit e 1
end

subspace J in GH
  span g 1 h -1
end

subspace BadJ in GH
  span g 1
end

morphism counit-map from GH to K
  map g e 1
  map h e 1
end
"""

BROKEN_DOC = """\
coalg-format 1
field Q

coalgebra Bad
  basis g
  delta g g g 1
  counit g 0
end
"""


@pytest.fixture
def gh_file(tmp_path):
    path = tmp_path / "gh.coalg"
    path.write_text(GH_DOC, encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestExitContract:
    def test_demo_paper_example_exit_zero(self, capsys):
        code, out, _ = run(capsys, "demo", "paper-example")
        assert code == 0
        assert "kernel dim: 1" in out
        assert "injective: false" in out
        assert "self-cotensor dim: 4" in out
        assert "counit-balance: holds" in out
        assert "unit-surjective: holds" in out
        assert "kernel-cotensor-zero: holds" in out
        assert "verdict: mono" in out

    def test_mono_check_failure_exit_one(self, capsys, gh_file):
        code, out, _ = run(capsys, "mono-check", gh_file, "counit-map")
        assert code == 1
        assert "g⊗h" in out

    def test_validate_builtin_exit_zero(self, capsys):
        code, _, _ = run(capsys, "validate", "--builtin", "comatrix-3")
        assert code == 0

    def test_validate_violations_exit_one(self, capsys, tmp_path):
        path = tmp_path / "bad.coalg"
        path.write_text(BROKEN_DOC, encoding="utf-8")
        code, out, _ = run(capsys, "validate", str(path))
        assert code == 1
        assert "counit" in out

    def test_usage_errors_exit_two(self, capsys, tmp_path):
        code, _, err = run(capsys, "mono-check", str(tmp_path / "missing.coalg"))
        assert code == 2
        code, _, err = run(capsys, "mono-check", "--builtin", "comatrix-2")
        assert code == 2  # no morphism in that document
        path = tmp_path / "broken.txt"
        path.write_text("not a document", encoding="utf-8")
        code, _, err = run(capsys, "validate", str(path))
        assert code == 2


class TestCommands:
    def test_mono_check_unique_morphism_inferred(self, capsys, gh_file):
        code, out, _ = run(capsys, "mono-check", gh_file)
        assert code == 1
        assert "verdict: not-mono" in out

    def test_skip_crosscheck_single_criterion(self, capsys):
        code, out, _ = run(capsys, "mono-check", "--builtin", "paper-example", "--skip-crosscheck")
        assert code == 0
        assert "counit-balance" in out
        assert "kernel-cotensor-zero" not in out

    def test_cotensor_regulars(self, capsys):
        code, out, _ = run(capsys, "cotensor", "--builtin", "paper-example", "CR", "CL")
        assert code == 0
        assert "dim 4" in out

    def test_h0_values(self, capsys):
        code, out, _ = run(capsys, "h0", "--builtin", "paper-example", "CB", "M2")
        assert code == 0
        assert "dim 1" in out
        code, out, _ = run(capsys, "h0", "--builtin", "grouplike-counit", "CB", "GH")
        assert code == 0
        assert "dim 2" in out

    def test_quotient_success_and_rejection(self, capsys, gh_file):
        code, out, _ = run(capsys, "quotient", gh_file, "GH", "J")
        assert code == 0
        assert "coalgebra GH_q" in out
        code, out, _ = run(capsys, "quotient", gh_file, "GH", "BadJ")
        assert code == 1
        assert "rejected" in out

    def test_quotient_output_reparses(self, capsys, gh_file):
        from comono.textfmt import parse_document

        code, out, _ = run(capsys, "quotient", gh_file, "GH", "J")
        assert code == 0
        doc = parse_document(out)
        assert doc.coalgebras["GH_q"].dim == 1

    def test_coextend(self, capsys):
        code, out, _ = run(capsys, "coextend", "--builtin", "dual-numbers", "PT", "X")
        assert code == 0
        assert "delta x g x 1" in out
        assert "delta x x g 1" in out

    def test_dualize(self, capsys):
        code, out, _ = run(capsys, "dualize", "--builtin", "grouplike-counit", "GH")
        assert code == 0
        assert "g*.g* = g*" in out
        assert "g*.h* = 0" in out

    def test_fuzz_small_batch(self, capsys):
        code, out, _ = run(capsys, "fuzz", "--seeds", "0..19", "--max-dim", "4")
        assert code == 0
        assert "40 instances" in out
        assert "0 criteria disagreements" in out

    def test_fuzz_bad_range(self, capsys):
        code, _, err = run(capsys, "fuzz", "--seeds", "oops")
        assert code == 2


class TestJsonOutput:
    def test_mono_check_json_deterministic(self, capsys, gh_file):
        code1, out1, _ = run(capsys, "mono-check", gh_file, "counit-map", "--json")
        code2, out2, _ = run(capsys, "mono-check", gh_file, "counit-map", "--json")
        assert code1 == code2 == 1
        assert out1 == out2
        payload = json.loads(out1)
        assert payload["verdict"] == "not-mono"
        assert payload["kernel_dim"] == 1
        assert payload["criteria"]["counit_balance"]["holds"] is False

    def test_fuzz_json_ordered_by_seed(self, capsys):
        code, out, _ = run(capsys, "fuzz", "--seeds", "0..5", "--max-dim", "3", "--json", "--fields", "Q")
        assert code == 0
        payload = json.loads(out)
        seeds = [r["seed"] for r in payload["results"]]
        assert seeds == sorted(seeds)
        assert payload["instances"] == 6

    def test_validate_json(self, capsys):
        code, out, _ = run(capsys, "validate", "--builtin", "paper-example", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["ok"] is True
