import os

import pytest

from picardnet.cli import main
from picardnet.config import ExperimentConfig, parse_config

SMALL = """
# small deterministic run
problem = linear
dims = 1
epsilons = 0.5
delta = 0.5
seed = 3
particles = 400
euler_steps = 20
partner_count = 16
convergence_seeds = 4
mc_samples = 100
points = 64
"""


class TestConfigParsing:
    def test_roundtrip(self):
        cfg = parse_config(SMALL)
        assert cfg.problem == "linear"
        assert cfg.dims == [1]
        assert cfg.epsilons == [0.5]
        assert cfg.seed == 3
        assert cfg.particles == 400

    def test_lists(self):
        cfg = parse_config("dims = 1, 2, 3\nepsilons = 0.5, 0.25\n")
        assert cfg.dims == [1, 2, 3]
        assert cfg.epsilons == [0.5, 0.25]

    def test_comments_and_blanks(self):
        cfg = parse_config("\n# only a comment\nseed = 9  # trailing\n")
        assert cfg.seed == 9

    def test_unknown_key(self):
        with pytest.raises(ValueError):
            parse_config("unknown_key = 1\n")

    def test_empty_dims_rejected(self):
        with pytest.raises(ValueError):
            parse_config("dims = \n")

    def test_bad_delta(self):
        with pytest.raises(ValueError):
            ExperimentConfig(delta=1.5).validate()

    def test_bad_epsilon(self):
        with pytest.raises(ValueError):
            ExperimentConfig(epsilons=[1.5]).validate()


class TestCli:
    def write_config(self, tmp_path, text=SMALL):
        path = tmp_path / "run.cfg"
        path.write_text(text)
        return str(path)

    def test_usage_error_on_empty_dims(self, tmp_path):
        path = self.write_config(tmp_path, "dims =\n")
        assert main(["--config", path]) == 2

    def test_missing_config_file(self, tmp_path):
        assert main(["--config", str(tmp_path / "absent.cfg")]) == 2

    def test_scaling_suite_runs(self, tmp_path, capsys):
        path = self.write_config(tmp_path)
        out = str(tmp_path / "out")
        code = main(["--config", path, "--suite", "scaling", "--out", out])
        assert code == 0
        assert os.path.exists(os.path.join(out, "scaling.csv"))
        assert "PASS" in capsys.readouterr().out

    def test_equivalence_suite_runs(self, tmp_path):
        path = self.write_config(tmp_path)
        out = str(tmp_path / "out")
        assert main(["--config", path, "--suite", "equivalence",
                     "--out", out]) == 0

    def test_deterministic_csv(self, tmp_path):
        path = self.write_config(tmp_path)
        out1, out2 = str(tmp_path / "a"), str(tmp_path / "b")
        assert main(["--config", path, "--suite", "scaling",
                     "--out", out1]) == 0
        assert main(["--config", path, "--suite", "scaling",
                     "--out", out2]) == 0
        with open(os.path.join(out1, "scaling.csv"), "rb") as fh:
            first = fh.read()
        with open(os.path.join(out2, "scaling.csv"), "rb") as fh:
            second = fh.read()
        assert first == second

    def test_seed_override_changes_output(self, tmp_path):
        path = self.write_config(tmp_path)
        out1, out2 = str(tmp_path / "a"), str(tmp_path / "b")
        main(["--config", path, "--suite", "scaling", "--seed", "1",
              "--out", out1])
        main(["--config", path, "--suite", "scaling", "--seed", "2",
              "--out", out2])
        with open(os.path.join(out1, "scaling.csv")) as fh:
            first = fh.read()
        with open(os.path.join(out2, "scaling.csv")) as fh:
            second = fh.read()
        assert first != second
