import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from stabcodes.constants import CERTIFIED_INVERTIBLE, FALSIFIED, FALSIFIED_AT
from stabcodes.services.corpus import corpus_text
from stabcodes.services.reports import validate_report
from stabcodes.tasks import count_at_ell, degeneracy_at_ell


def run(*args, **options):
    out = StringIO()
    call_command(*args, stdout=out, **options)
    return out.getvalue()


def run_json(*args, **options):
    report = json.loads(run(*args, json=True, **options))
    validate_report(report)
    return report


# ============================================================
# Documents
# ============================================================

def test_validate_lists_every_section():
    report = run_json("validate", "semion-d0")
    kinds = {s["name"]: s["kind"] for s in report["result"]["sections"]}
    assert kinds["semion"] == "quadratic"
    assert kinds["semion-linking"] == "form"
    assert report["status"] == "ok"


def test_validate_normalize_prints_document():
    report = run_json("validate", "toric", normalize=True)
    normalized = report["result"]["normalized"]
    assert "[formation toric]" in normalized
    assert "#" not in normalized


def test_dual_reports_pairing():
    report = run_json("dual", "z2-chain", name="z3")
    result = report["result"]
    assert set(result) >= {"boundary", "dual_boundary", "k0", "unit", "pairing"}
    assert result["k0"] == 3


def test_unknown_corpus_entry_exits_with_status_1():
    with pytest.raises(CommandError) as excinfo:
        run("validate", "no-such-code")
    assert excinfo.value.returncode == 1


# ============================================================
# Counting and degeneracy
# ============================================================

def test_count_matches_k0_power():
    report = run_json("count", "z2-chain", name="z2", ell=[3])
    assert report["result"]["counts"] == [{"ell": 3, "order": 8, "expected": 8, "check": True}]


def test_count_text_output():
    output = run("count", "z2-chain", name="z2", ell=[3])
    assert "ℓ=3: 8 (k0^(ℓ^d) = 8, check=ok)" in output


def test_negative_ell_is_a_usage_error():
    with pytest.raises(CommandError) as excinfo:
        run("count", "z2-chain", ell=[0])
    assert excinfo.value.returncode == 2


def test_toric_degeneracy():
    report = run_json("degeneracy", "toric", ell=[2])
    assert report["result"]["degeneracies"] == [{"ell": 2, "degeneracy": 4, "index": 16}]


def test_count_task_runs_directly():
    outcome = count_at_ell.apply(args=(corpus_text("z2-chain"), "z3", 2)).get()
    assert outcome["status"] == "success"
    assert outcome["order"] == 9
    assert outcome["check"] is True


def test_degeneracy_task_reports_library_errors():
    outcome = degeneracy_at_ell.apply(args=(corpus_text("toric"), "no-such-section", 1)).get()
    assert outcome["status"] == "error"
    assert outcome["ell"] == 1


# ============================================================
# Verdicts
# ============================================================

def test_toric_is_falsified():
    report = run_json("check", "toric", ell=[2])
    assert report["status"] == FALSIFIED
    assert report["result"]["witness"]["ell"] == 2


def test_condensable_point_formation_is_certified():
    report = run_json("check", "hyperbolic-z4", name="condensable")
    assert report["status"] == CERTIFIED_INVERTIBLE
    checks = {e["check"] for e in report["result"]["evidence"]}
    assert {"isotropy", "annihilator", "ext"} <= checks


def test_degenerate_form_is_falsified_at_first_torus():
    report = run_json("check", "semion-d0", name="degenerate")
    assert report["status"] == FALSIFIED_AT
    assert report["result"]["witness"]["ell"] == 1


# ============================================================
# Witt
# ============================================================

def test_witt_semion_signature():
    report = run_json("witt", "semion-d0", name="semion")
    (entry,) = report["result"]["forms"]
    assert entry["invariants"]["sigma"] == 1


def test_witt_semion_against_anti_semion():
    output = run("witt", "semion-d0", name="semion", against="anti-semion")
    assert "semion: σ = 1 mod 8" in output
    assert "semion vs anti-semion: inequivalent" in output


def test_witt_corpus_covers_every_form():
    report = run_json("witt", "witt-corpus")
    assert len(report["result"]["forms"]) == 13


def test_table_degree_three():
    report = run_json("table", d=[3])
    (row,) = report["result"]["rows"]
    assert row["group"] == "W^pt"
    assert set(row["components"]) == {"p = 2", "p ≡ 1 mod 4", "p ≡ 3 mod 4"}


def test_table_l_groups():
    report = run_json("table", d=[4], l_groups=True)
    groups = {(r["kind"], r["degree"]): r["group"] for r in report["result"]["rows"]}
    assert groups[("E", 4)] == "Z/2"
    assert groups[("Lq", 4)] == "Z"
    assert groups[("LQ", 4)] == "Z ⊕ W^sym"


# ============================================================
# Simulation
# ============================================================

def test_simulate_toric_ground_dimension():
    report = run_json("simulate", "toric", ell=[2], ground_dim=True)
    result = report["result"]
    assert result["hilbert_dimension"] == 256
    assert result["ground_dimension"] == 4


def test_simulate_requires_one_ell():
    with pytest.raises(CommandError) as excinfo:
        run("simulate", "toric", ell=[1, 2])
    assert excinfo.value.returncode == 2


def test_simulate_dumps_spectrum(tmp_path):
    path = tmp_path / "spectrum.txt"
    run("simulate", "product", name="swap", ell=[2], dump_spectrum=str(path))
    assert path.read_text(encoding="utf-8").splitlines()[0] == "-4.0000000000 1"


# ============================================================
# Majorana
# ============================================================

def test_majorana_check_code():
    report = run_json("majorana", check_code="majorana-pairs")
    verdicts = {c["name"]: c["ok"] for c in report["result"]["codes"]}
    assert verdicts == {"pairs": True, "odd": False, "overlapping": False}


def test_majorana_verify_kappa():
    report = run_json("majorana", verify_kappa=2)
    assert report["result"]["kappa"] == {"n": 2, "pairs": 256, "mismatches": 0}


def test_majorana_needs_an_action():
    with pytest.raises(CommandError) as excinfo:
        run("majorana")
    assert excinfo.value.returncode == 2
