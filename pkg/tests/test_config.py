import json

import pytest

from relexkit.config import PipelineConfig
from relexkit.errors import UserError


class TestPipelineConfig:
    def test_defaults(self):
        config = PipelineConfig()
        assert config.fuzzy_threshold == 0.9
        assert config.key_mode == "lemma"
        assert config.property_filter == ("P19", "P569", "P570", "P106", "P26", "P69")
        assert sum(config.split_ratios) == pytest.approx(1.0)

    def test_file_round_trip(self, tmp_path):
        config = PipelineConfig(language="en", seed=42, semantic_threshold=0.3)
        path = tmp_path / "config.json"
        config.to_file(path)
        loaded = PipelineConfig.from_file(path)
        assert loaded == config

    def test_partial_file_merges_defaults(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"seed": 7}), encoding="utf-8")
        config = PipelineConfig.from_file(path)
        assert config.seed == 7
        assert config.language == "fr"

    def test_unknown_keys_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"sed": 7}), encoding="utf-8")
        with pytest.raises(UserError, match="unknown config keys"):
            PipelineConfig.from_file(path)

    def test_threshold_bounds_validated(self):
        with pytest.raises(UserError):
            PipelineConfig(fuzzy_threshold=1.2)
        with pytest.raises(UserError):
            PipelineConfig(semantic_threshold=-0.1)

    def test_ratio_sum_validated(self):
        with pytest.raises(UserError):
            PipelineConfig(split_ratios=(0.5, 0.4, 0.2))

    def test_key_mode_validated(self):
        with pytest.raises(UserError):
            PipelineConfig(key_mode="stems")

    def test_missing_file_is_user_error(self, tmp_path):
        with pytest.raises(UserError, match="not found"):
            PipelineConfig.from_file(tmp_path / "absent.json")

    def test_paths_resolve_against_workdir(self, tmp_path):
        config = PipelineConfig(workdir=str(tmp_path))
        assert config.path("sentences") == tmp_path / "sentences.jsonl"
