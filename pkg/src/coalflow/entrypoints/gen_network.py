from dataclasses import dataclass
from typing import Optional

import hydra
from hydra.core.config_store import ConfigStore
from omegaconf import MISSING, OmegaConf

from coalflow.harness import ExperimentConfig, generate_network, load_experiment_config
from coalflow.network import network_fingerprint
from coalflow.utils import LOGGER_MANAGER, dump_json


@dataclass
class Config:
    config_path: Optional[str] = None
    seed: Optional[int] = None
    max_caps: Optional[int] = None
    output_path: str = MISSING


cs = ConfigStore.instance()
cs.store(name="default", node=Config)
logger = LOGGER_MANAGER.get_logger("coalflow.gen_network")


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

    net = generate_network(exp_cfg, seed, max_caps=config.max_caps)
    dump_json(net.to_dict(), config.output_path)
    logger.info(f"Network {network_fingerprint(net)} written to {config.output_path}")
    return


if __name__ == "__main__":
    main()
