from dataclasses import dataclass
from typing import Optional

import hydra
from hydra.core.config_store import ConfigStore
from omegaconf import MISSING, OmegaConf

from coalflow.harness import ExperimentConfig, load_experiment_config, run_breadth_sweep
from coalflow.utils import LOGGER_MANAGER


@dataclass
class Config:
    config_path: Optional[str] = None
    output_path: str = MISSING
    summary_path: Optional[str] = None


cs = ConfigStore.instance()
cs.store(name="default", node=Config)
logger = LOGGER_MANAGER.get_logger("coalflow.sweep")


@hydra.main(version_base="1.3", config_path=None, config_name="default")
def main(config: Config):
    default_cfg = OmegaConf.structured(Config)
    config = OmegaConf.merge(default_cfg, config)
    logger.debug(f"Configs:\n{OmegaConf.to_yaml(config)}")

    if config.config_path is None:
        exp_cfg = ExperimentConfig()
    else:
        exp_cfg = load_experiment_config(config.config_path)
    records = run_breadth_sweep(
        exp_cfg, output_path=config.output_path, summary_path=config.summary_path
    )
    found = sum(r.found for r in records)
    logger.info(f"{found}/{len(records)} trials found a coalition")
    return


if __name__ == "__main__":
    main()
