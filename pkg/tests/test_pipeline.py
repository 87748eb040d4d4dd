import csv
import io
import json
import shutil
import sys

import pytest

from fogconcepts.cli import main
from fogconcepts.errors import ConfigError, EmptyDocument, InvalidFraction
from fogconcepts.pipeline import PipelineConfig, dumps, run_corpus, run_document, run_evolution

from conftest import FIXTURES

CONFIG = PipelineConfig(pair=("ischemia", "glutamate"))

# Worked by hand from the fixture (see tests/test_acceptance.py for the
# per-sentence counts). Selected sentences at 30%: 9, 10, 4, 7.
HAND_TOP_PAIRS = [
    (1, "glutamate", "ischemia", 3),
    (2, "activates", "ischemia", 2),
    (2, "glutamate", "neurons", 2),
    (2, "ischemia", "neurons", 2),
    *[(3, "accumulation", b, 1) for b in ("activates", "cortical", "excitatory", "glutamate", "ischemia", "neurons", "receptors")],
    *[(3, "activates", b, 1) for b in ("cortical", "excitatory", "glutamate", "inflammatory", "microglia", "neurons", "receptors")],
    (3, "antagonists", "damage", 1),
    (3, "antagonists", "glutamate", 1),
]
# (rank, a, b, R, S, TP, FP, FN, TN)
HAND_REPRESENTATIVE = [
    (1, "glutamate", "ischemia", 4, 4, 3, 1, 1, 7),
    (2, "activates", "ischemia", 4, 2, 2, 2, 0, 8),
    (3, "glutamate", "neurons", 4, 3, 2, 2, 1, 7),
    (3, "ischemia", "neurons", 4, 3, 2, 2, 1, 7),
    *[(4, "accumulation", b, 4, 1, 1, 3, 0, 8) for b in ("activates", "cortical", "excitatory", "glutamate", "ischemia", "neurons")],
]


def run_cli(args, capsys):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


class TestConfig:
    def test_defaults_follow_method(self):
        c = PipelineConfig()
        assert (c.chunk_fraction, c.top_k_pairs, c.top_n_representative) == (0.30, 20, 10)

    def test_rep_not_above_pairs(self):
        with pytest.raises(ConfigError):
            PipelineConfig(top_k_pairs=5, top_n_representative=6)

    def test_bad_fraction(self):
        with pytest.raises(InvalidFraction):
            PipelineConfig(chunk_fraction=0)

    def test_identical_concepts(self):
        with pytest.raises(ConfigError):
            PipelineConfig(pair=("GABA", "gaba"))


class TestRunDocument:
    def test_hand_verified_tables(self, fixture_path):
        r = run_document(fixture_path, CONFIG)
        assert r["selected_positions"] == [9, 10, 4, 7]
        assert [(t["rank"], t["a"], t["b"], t["frequency"]) for t in r["top_pairs"]] == HAND_TOP_PAIRS
        got = [(e["rank"], e["a"], e["b"], e["R"], e["S"], e["TP"], e["FP"], e["FN"], e["TN"]) for e in r["representative"]]
        assert got == HAND_REPRESENTATIVE
        hm = [e["harmonic_mean"] for e in r["representative"]]
        assert hm[:4] == [0.75, round(2 / 3, 4), round(4 / 7, 4), round(4 / 7, 4)]
        assert r["representative"][0]["harmonic_mean_x100"] == 75.0
        assert r["representative"][0]["accuracy"] == round(10 / 12, 4)

    def test_matches_snapshot(self, fixture_path, snapshot_path):
        assert dumps(run_document(fixture_path, CONFIG)) == snapshot_path.read_text(encoding="utf-8")

    def test_full_chunk(self, fixture_path):
        r = run_document(fixture_path, PipelineConfig(pair=("ischemia", "glutamate"), chunk_fraction=1.0))
        assert r["counts"]["selected"] == 12
        assert all(e["R"] == 12 for e in r["representative"])

    def test_gold_annotation(self, fixture_path):
        r = run_document(fixture_path, PipelineConfig(pair=("ischemia", "glutamate"), gold_path=str(FIXTURES / "gold.tsv")))
        flags = {(e["a"], e["b"]): e["gold"] for e in r["representative"]}
        assert flags[("glutamate", "ischemia")] is True
        assert flags[("accumulation", "cortical")] is False
        assert len(r["representative"]) == 10  # annotation never filters

    def test_no_pair_skips_category_stats(self, fixture_path):
        r = run_document(fixture_path, PipelineConfig())
        assert r["category_stats"] is None
        assert r["top_pairs"]

    def test_empty_file(self, tmp_path):
        f = tmp_path / "empty.txt"
        f.write_text("", encoding="utf-8")
        with pytest.raises(EmptyDocument, match="empty.txt"):
            run_document(f, CONFIG)

    def test_report_numbers_recomputable(self, fixture_path):
        r = run_document(fixture_path, CONFIG)
        for e in r["representative"]:
            assert e["TP"] + e["FP"] == e["R"] == r["counts"]["selected"]
            assert e["TP"] + e["FN"] == e["S"]
            assert e["TP"] + e["FP"] + e["FN"] + e["TN"] == r["counts"]["sentences"]
            assert e["harmonic_mean"] == round(2 * e["TP"] / (e["R"] + e["S"]), 4)

    def test_gunning_variant_echoed(self, fixture_path):
        r = run_document(fixture_path, PipelineConfig(pair=("ischemia", "glutamate"), formula="gunning"))
        assert r["config"]["formula"] == "gunning"


class TestCorpus:
    def make_corpus(self, tmp_path, n=6):
        d = tmp_path / "corpus"
        d.mkdir()
        for i in range(n):
            shutil.copy(FIXTURES / "ischemia_glutamate.txt", d / f"doc{i}.txt")
        return d

    def test_six_reports(self, tmp_path):
        result = run_corpus(self.make_corpus(tmp_path), CONFIG)
        assert len(result["documents"]) == 6
        assert [d["document"] for d in result["documents"]] == [f"doc{i}.txt" for i in range(6)]
        s = result["summary"]
        assert (s["files"], s["processed"], s["failed"]) == (6, 6, 0)
        both = s["category_stats"][0]
        assert both["category"] == "both" and both["sentence_count"] == 24
        assert both["pooled_mean_fi_norm"] == both["mean_of_means_fi_norm"] == result["documents"][0]["category_stats"][0]["mean_fi_norm"]
        top = s["pair_frequencies"][0]
        assert (top["a"], top["b"], top["total_frequency"], top["documents"]) == ("glutamate", "ischemia", 18, 6)

    def test_unreadable_file_flagged(self, tmp_path):
        d = self.make_corpus(tmp_path, 2)
        (d / "broken.txt").write_bytes(b"\xff\xfe\x00bad bytes \xc3")
        result = run_corpus(d, CONFIG)
        assert len(result["documents"]) == 2
        assert [f["file"] for f in result["failures"]] == ["broken.txt"]
        assert result["failures"][0]["kind"] == "InputError"

    def test_empty_directory(self, tmp_path):
        (tmp_path / "none").mkdir()
        with pytest.raises(Exception, match="no input files"):
            run_corpus(tmp_path / "none", CONFIG)

    def test_parallel_matches_serial(self, tmp_path):
        d = self.make_corpus(tmp_path, 4)
        assert dumps(run_corpus(d, CONFIG, jobs=3)) == dumps(run_corpus(d, CONFIG))


class TestEvolutionRun:
    def test_row_counts(self, fixture_path):
        rows = list(csv.reader(io.StringIO(run_evolution(fixture_path, CONFIG))))
        assert len(rows) == 1 + 5

    def test_baseline_only(self, fixture_path):
        rows = run_evolution(fixture_path, PipelineConfig(evolution_fractions=(1.0,))).splitlines()
        assert len(rows) == 2

    def test_non_descending(self):
        with pytest.raises(InvalidFraction):
            PipelineConfig(evolution_fractions=(0.1, 0.5))


class TestCli:
    def test_extract_json_matches_snapshot(self, fixture_path, snapshot_path, capsys):
        code, out, _ = run_cli(["extract", fixture_path, "--pair", "ischemia,glutamate"], capsys)
        assert code == 0
        assert out == snapshot_path.read_text(encoding="utf-8")

    def test_extract_tsv(self, fixture_path, capsys):
        code, out, _ = run_cli(["extract", fixture_path, "--pair", "ischemia,glutamate", "--format", "tsv", "--gold", FIXTURES / "gold.tsv"], capsys)
        lines = out.splitlines()
        assert code == 0
        assert lines[1] == "rank\tpair\tfrequency\tgold"
        assert lines[2] == "1\tglutamate-ischemia\t3\tyes"
        rep = lines[lines.index("rank\tpair\tharmonic_mean\tgold") + 1:]
        assert rep[0] == "1\tglutamate-ischemia\t75.00\tyes"
        assert rep[1] == "2\tactivates-ischemia\t66.67\tyes"
        assert rep[4] == "4\taccumulation-activates\t40.00\tno"

    def test_empty_file_exit_2(self, tmp_path, capsys):
        f = tmp_path / "empty.txt"
        f.write_text("")
        code, _, err = run_cli(["extract", f], capsys)
        assert code == 2
        assert "EmptyDocument" in err and "empty.txt" in err

    def test_missing_file_exit_2(self, tmp_path, capsys):
        code, _, err = run_cli(["extract", tmp_path / "nope.txt"], capsys)
        assert code == 2

    def test_bad_chunk_exit_2(self, fixture_path, capsys):
        code, _, err = run_cli(["extract", fixture_path, "--chunk", "1.5"], capsys)
        assert code == 2 and "InvalidFraction" in err

    def test_adapter_failure_exit_3(self, fixture_path, capsys):
        cmd = f"{sys.executable} {FIXTURES / 'fake_tagger.py'} crash"
        code, _, err = run_cli(["extract", fixture_path, "--tagger-cmd", cmd], capsys)
        assert code == 3 and "AdapterFailure" in err

    def test_adapter_success(self, fixture_path, capsys):
        cmd = f"{sys.executable} {FIXTURES / 'fake_tagger.py'}"
        code, out, _ = run_cli(["extract", fixture_path, "--pair", "ischemia,glutamate", "--tagger-cmd", cmd], capsys)
        report = json.loads(out)
        assert code == 0
        assert report["config"]["extractor"] == "adapter"
        nouns = {w for t in report["top_pairs"] for w in (t["a"], t["b"])}
        assert nouns <= {"glutamate", "ischemia", "neurons", "brain", "levels", "rats"}

    def test_corpus_partial_exit_1(self, tmp_path, capsys):
        d = tmp_path / "c"
        d.mkdir()
        shutil.copy(FIXTURES / "ischemia_glutamate.txt", d / "a.txt")
        (d / "b.txt").write_bytes(b"\xff\xff")
        code, out, err = run_cli(["extract", d, "--pair", "ischemia,glutamate"], capsys)
        assert code == 1
        assert "b.txt" in err
        assert len(json.loads(out)["documents"]) == 1

    def test_corpus_all_fail_exit_2(self, tmp_path, capsys):
        d = tmp_path / "c"
        d.mkdir()
        (d / "a.txt").write_text("")
        code, _, _ = run_cli(["extract", d], capsys)
        assert code == 2

    def test_empty_dir_exit_2(self, tmp_path, capsys):
        d = tmp_path / "c"
        d.mkdir()
        code, _, _ = run_cli(["extract", d], capsys)
        assert code == 2

    def test_evolve(self, fixture_path, capsys):
        code, out, _ = run_cli(["evolve", fixture_path], capsys)
        assert code == 0
        assert len(out.splitlines()) == 6

    def test_evolve_bad_fractions(self, fixture_path, capsys):
        code, _, _ = run_cli(["evolve", fixture_path, "--fractions", "0.1,0.5"], capsys)
        assert code == 2

    def test_score(self, fixture_path, capsys):
        code, out, _ = run_cli(["score", fixture_path, "--pair", "ischemia,glutamate"], capsys)
        lines = out.splitlines()
        assert code == 0 and len(lines) == 13
        assert lines[10].split("\t")[:7] == ["9", "4", "4", "17", "101.6000", "42.5174", "any"]

    def test_out_file(self, fixture_path, tmp_path, capsys, snapshot_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(["extract", fixture_path, "--pair", "ischemia,glutamate", "--out", target], capsys)
        assert code == 0 and out == ""
        assert target.read_text(encoding="utf-8") == snapshot_path.read_text(encoding="utf-8")

    def test_multiword_pair(self, tmp_path, capsys):
        f = tmp_path / "d.txt"
        f.write_text("Brain neurons die during ischemia. Brain cells live.", encoding="utf-8")
        code, out, _ = run_cli(["extract", f, "--pair", "brain neurons,ischemia"], capsys)
        stats = {c["category"]: c["sentence_count"] for c in json.loads(out)["category_stats"]}
        assert code == 0 and stats == {"both": 1, "any": 0, "none": 1}

    def test_strip_refs(self, tmp_path, capsys):
        f = tmp_path / "d.txt"
        f.write_text("Glutamate rose in ischemia.\nReferences\nSmith J. Glutamate and ischemia in rats.\n", encoding="utf-8")
        code, out, _ = run_cli(["extract", f, "--strip-refs"], capsys)
        assert json.loads(out)["counts"]["sentences"] == 1
