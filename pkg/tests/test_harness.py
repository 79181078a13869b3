import json

import pytest

from egh.cli import main
from egh.errors import InputError
from egh.harness import SearchConfig, read_log, recheck, resolve_check, run_search, strip_timing
from egh.checkpoints import run_checkpoints
from egh.sampling import make_rng, random_mixed_instance, trial_seed
from egh.serialize import dump_ideal, instance_from_dict, instance_to_dict, load_ideal
from egh.verify import IdealInstance

from conftest import squares, variables


@pytest.fixture
def ideal_file(tmp_path, ring5):
    x = variables(ring5)
    inst = IdealInstance(ring5, squares(ring5), [x[0] * x[1], x[0] * x[2]])
    path = tmp_path / "ideal.json"
    dump_ideal(inst, path)
    return path


def test_trial_seeds_are_stable():
    assert trial_seed(42, 0) == trial_seed(42, 0)
    assert len({trial_seed(42, k) for k in range(100)}) == 100
    assert make_rng(7).integers(0, 1000) == make_rng(7).integers(0, 1000)


def test_ideal_round_trip(ring5):
    for seed in range(10):
        inst = random_mixed_instance(ring5, make_rng(seed))
        back = instance_from_dict(json.loads(json.dumps(instance_to_dict(inst))))
        assert back.ci == inst.ci and back.extras == inst.extras
        assert back.hilbert() == inst.hilbert()


def test_ideal_file_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_ideal(bad)
    with pytest.raises(InputError):
        instance_from_dict({"p": 101, "n": 2})
    with pytest.raises(InputError):
        instance_from_dict({"p": 101, "n": 2, "regular_sequence": ["x1^2", "x2^2"], "colour": 1})
    with pytest.raises(InputError):
        load_ideal(tmp_path / "missing.json")


def test_config_validation():
    with pytest.raises(InputError):
        SearchConfig(checks=("no_such_check",))
    with pytest.raises(InputError):
        SearchConfig(defect=11)
    with pytest.raises(InputError):
        SearchConfig(trials=0)
    assert resolve_check("egh_d(3)") is not None


def test_search_is_deterministic(tmp_path):
    logs = []
    for k in range(2):
        cfg = SearchConfig(n=5, trials=15, seed=99, defect=(0, 4), checks=("egh_d(2)", "duality"),
                           out=str(tmp_path / f"run{k}.jsonl"))
        run_search(cfg)
        logs.append(strip_timing(read_log(cfg.out)))
    assert logs[0] == logs[1]
    assert logs[0][0]["type"] == "header" and logs[0][-1]["type"] == "summary"
    assert [line["index"] for line in logs[0][1:-1]] == list(range(15))


def test_parallel_search_matches_serial(tmp_path):
    base = dict(n=5, trials=10, seed=3, defect=2, checks=("defect2_bound", "four_term_identity"))
    run_search(SearchConfig(**base, out=str(tmp_path / "a.jsonl")))
    run_search(SearchConfig(**base, out=str(tmp_path / "b.jsonl"), jobs=2))
    assert strip_timing(read_log(tmp_path / "a.jsonl")) == strip_timing(read_log(tmp_path / "b.jsonl"))


def test_recheck_reproduces_logged_values(tmp_path):
    cfg = SearchConfig(n=5, trials=8, seed=5, mode="mixed", checks=("egh_full", "duality"),
                       out=str(tmp_path / "m.jsonl"))
    run_search(cfg)
    for rec in read_log(cfg.out)[1:-1]:
        outcomes, values = recheck(rec)
        assert outcomes == rec["outcomes"]
        assert json.loads(json.dumps(values)) == rec["values"]


def test_cli_hilbert_and_check(ideal_file, capsys):
    assert main(["hilbert", "--ideal", str(ideal_file)]) == 0
    assert json.loads(capsys.readouterr().out) == [1, 5, 8, 5, 1, 0, 0]
    assert main(["hilbert", "--ideal", str(ideal_file), "--table", "--max-degree", "2"]) == 0
    assert capsys.readouterr().out.split("\n")[:3] == ["0\t1", "1\t5", "2\t8"]
    assert main(["check", "--ideal", str(ideal_file), "--degree", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["holds"] and out["dim_I_next"] == out["dim_L_next"] == 30
    assert main(["check", "--ideal", str(ideal_file), "--full"]) == 0
    assert json.loads(capsys.readouterr().out)["lpp_hilbert"] == [1, 5, 8, 5, 1, 0, 0]


def test_cli_lpp(capsys):
    assert main(["lpp", "--n", "5", "--defect", "3", "--degree", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["lex_gens"] == ["x1*x2", "x1*x3", "x1*x4"]
    assert out["piece_dims"][3] == 31


def test_cli_exit_codes(tmp_path, ideal_file, capsys):
    assert main(["frobnicate"]) == 2
    assert main(["hilbert"]) == 2
    assert main(["hilbert", "--ideal", str(tmp_path / "nope.json")]) == 3
    assert main(["lpp", "--n", "5", "--defect", "99", "--degree", "2"]) == 3
    assert main(["search", "--n", "5", "--trials", "1", "--seed", "1", "--checks", "bogus",
                 "--out", str(tmp_path / "x.jsonl")]) == 3
    # a zero attempt budget cannot produce a regular sequence
    assert main(["search", "--n", "5", "--trials", "1", "--seed", "1", "--checks", "defect2_bound",
                 "--cap", "0", "--out", str(tmp_path / "y.jsonl")]) == 4
    capsys.readouterr()


def test_cli_search_writes_log(tmp_path, capsys):
    out = tmp_path / "s.jsonl"
    code = main(["search", "--n", "5", "--defect", "2", "--trials", "5", "--seed", "0x2a",
                 "--checks", "defect2_bound,ci_intersection", "--out", str(out)])
    assert code == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["trials"] == 5 and summary["failures"] == 0
    lines = read_log(out)
    assert lines[0]["config"]["seed"] == 42 and len(lines) == 7


def test_checkpoints_pass_on_a_small_battery():
    results = run_checkpoints(seed=1, trials=10)
    assert all(r.passed for r in results), [r.line() for r in results]
    names = [r.name for r in results]
    assert "colon_degree2_dim9" in names and "case_x1x5_hf3" in names
