import os
import sys
from dataclasses import dataclass
from typing import Optional

import hydra
from hydra.core.config_store import ConfigStore
from omegaconf import MISSING, OmegaConf

from coalflow.harness import ExperimentConfig, load_experiment_config, run_case_study
from coalflow.utils import LOGGER_MANAGER


@dataclass
class Config:
    config_path: Optional[str] = None
    seed: Optional[int] = None
    output_dir: str = MISSING


cs = ConfigStore.instance()
cs.store(name="default", node=Config)
logger = LOGGER_MANAGER.get_logger("coalflow.case_study")


@hydra.main(version_base="1.3", config_path=None, config_name="default")
def main(config: Config):
    default_cfg = OmegaConf.structured(Config)
    config = OmegaConf.merge(default_cfg, config)
    logger.debug(f"Configs:\n{OmegaConf.to_yaml(config)}")

    if config.config_path is None:
        exp_cfg = ExperimentConfig()
    else:
        exp_cfg = load_experiment_config(config.config_path)
    seed = exp_cfg.seed if config.seed is None else config.seed

    os.makedirs(config.output_dir, exist_ok=True)
    with LOGGER_MANAGER.log_to_file(os.path.join(config.output_dir, "log.txt")):
        _, _, result = run_case_study(exp_cfg, seed, output_dir=config.output_dir)
    if not result.found:
        sys.exit(2)
    return


if __name__ == "__main__":
    main()
