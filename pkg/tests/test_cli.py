import json

import pytest

from llm_ens.errors import PlanError
from llm_ens.harness.report import PROFILE_FILE, TABLE_CSV
from llm_ens.ui.cli import Cli, main


@pytest.fixture
def agent_files(tmp_path):
    for action in ("0", "1"):
        main(["train", "--constant-action", action, "--out", str(tmp_path)])
    return [str(tmp_path / "always-FORWARD.json"),
            str(tmp_path / "always-JUMP.json")]


def test_train_constant_agent(capsys, agent_files):
    out = capsys.readouterr().out
    assert "always-FORWARD.json" in out and "always-JUMP.json" in out
    assert json.loads(open(agent_files[0]).read())["agent_id"] == "always-FORWARD"


def test_train_q_agent(tmp_path):
    main(["train", "--episodes", "20", "--seed", "3", "--out", str(tmp_path)])
    assert (tmp_path / "two-zone-corridor-q-seed3.json").is_file()


def test_gen_situations(tmp_path, capsys):
    main(["gen-situations", "--out", str(tmp_path)])
    assert capsys.readouterr().out.startswith("{Zone A: ")
    assert (tmp_path / "catalog.json").is_file()


def test_profile_then_compare(agent_files, tmp_path, capsys):
    main(["profile", "--agents", *agent_files, "--k", "3", "--out",
          str(tmp_path / "profile")])
    out = capsys.readouterr().out
    assert "always-JUMP  situation 2: 2.5 over 10 segments" in out

    main(["compare", "--agents", *agent_files, "--profile",
          str(tmp_path / "profile" / PROFILE_FILE), "--k", "3", "--out",
          str(tmp_path / "compare")])
    out = capsys.readouterr().out
    assert "11(0)" in out
    assert (tmp_path / "compare" / TABLE_CSV).is_file()


def test_run_report_audit(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"env_name": "two-zone-corridor",
                                "constant_actions": [0, 1],
                                "K": 3,
                                "eval_episodes": 2,
                                "profile_episodes": 1}))
    out = tmp_path / "out"
    main(["run", "--plan", str(plan), "--out", str(out)])
    assert "llm-ens over best-single: 83.3%" in capsys.readouterr().out

    main(["report", "--out", str(out)])
    assert "llm-ens" in capsys.readouterr().out

    main(["audit", "--out", str(out)])
    assert "numbers match" in capsys.readouterr().out


def test_invalid_plan_exits(tmp_path):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"env_name": "pong"}))
    with pytest.raises(SystemExit) as e:
        main(["run", "--plan", str(plan), "--out", str(tmp_path)])
    assert e.value.code == 2


def test_missing_plan_file(tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["run", "--plan", str(tmp_path / "missing.json")])
    assert e.value.code == 2


def test_unknown_environment():
    with pytest.raises(SystemExit):
        main(["train", "--env", "pong"])


class PlanCaptured(Exception):
    pass


def seed_ranges(plan):
    return (set(range(plan.profile_seed, plan.profile_seed + plan.profile_episodes)),
            set(range(plan.eval_seed_base, plan.eval_seed_base + plan.eval_episodes)))


class TestPlanFromFlags:

    @pytest.mark.parametrize("seed", [None, "0", "7", "1000"])
    def test_profile_and_evaluation_seeds_are_disjoint(self, seed):
        argv = ["compare", "--agents", "a.json", "--profile", "p.json"]
        if seed is not None:
            argv += ["--seed", seed]
        cli = Cli(argv)
        plan = cli._plan("two-zone-corridor", eval_episodes=50,
                         profile_episodes=50)
        profile, evaluation = seed_ranges(plan)
        assert not profile & evaluation
        assert plan.eval_seed_base == int(seed or 0)

    def test_explicit_profile_seed(self):
        cli = Cli(["profile", "--agents", "a.json", "--seed", "3",
                   "--profile-seed", "40"])
        plan = cli._plan("two-zone-corridor")
        assert (plan.eval_seed_base, plan.profile_seed) == (3, 40)

    def test_overlapping_profile_seed_is_rejected(self):
        cli = Cli(["compare", "--agents", "a.json", "--profile", "p.json",
                   "--seed", "3", "--profile-seed", "5"])
        with pytest.raises(PlanError):
            cli._plan("two-zone-corridor")

    def test_temperatures_are_separate(self):
        cli = Cli(["gen-situations", "--temperature", "0.5",
                   "--llm-temperature", "0"])
        plan = cli._plan("two-zone-corridor")
        assert plan.temperature == 0.5
        assert plan.gateway.temperature == 0.0

    def test_llm_temperature_defaults(self):
        plan = Cli(["gen-situations", "--temperature", "0.5"])._plan(
            "two-zone-corridor")
        assert plan.gateway.temperature == 1.0

    def test_llm_temperature_keeps_plan_gateway(self, tmp_path, monkeypatch):
        plan_file = tmp_path / "plan.json"
        plan_file.write_text(json.dumps({
            "env_name": "two-zone-corridor",
            "gateway": {"model_name": "local-model", "temperature": 0.9},
        }))

        def stop(plan):
            raise PlanCaptured(plan)

        monkeypatch.setattr("llm_ens.ui.cli.cli.run_experiment", stop)
        cli = Cli(["run", "--plan", str(plan_file), "--llm-temperature", "0.2"])
        with pytest.raises(PlanCaptured) as e:
            cli.run_plan()
        gateway = e.value.args[0].gateway
        assert (gateway.model_name, gateway.temperature) == ("local-model", 0.2)

    def test_help_tells_temperatures_apart(self, capsys):
        with pytest.raises(SystemExit):
            main(["compare", "--help"])
        out = " ".join(capsys.readouterr().out.split())
        assert "--llm-temperature" in out
        assert "not of the LLM" in out
