import json
import sys
from dataclasses import dataclass
from typing import Optional

import hydra
from hydra.core.config_store import ConfigStore
from omegaconf import MISSING, OmegaConf

from coalflow.economics import ALLOCATORS, COMM_MODELS
from coalflow.network import Network
from coalflow.search import SearchOptions, SearchStatus, brute_force_oracle, solve
from coalflow.utils import LOGGER_MANAGER, dump_json, load_user_module
from coalflow.workflow import TaskSpec

# load user modules before loading config
for arg in sys.argv:
    if arg.startswith("user_module="):
        load_user_module(arg.split("=")[1])
        sys.argv.remove(arg)


CommModelConfig = COMM_MODELS.make_config(default="fixed_per_node", config_name="CommModelConfig")
AllocatorConfig = ALLOCATORS.make_config(default="proportional", config_name="AllocatorConfig")


@dataclass
class Config(CommModelConfig, AllocatorConfig, SearchOptions):  # type: ignore
    network_path: str = MISSING
    task_path: str = MISSING
    oracle: bool = False
    output_path: str = MISSING
    trace_path: Optional[str] = None


cs = ConfigStore.instance()
cs.store(name="default", node=Config)
logger = LOGGER_MANAGER.get_logger("coalflow.solve")


@hydra.main(version_base="1.3", config_path=None, config_name="default")
def main(config: Config):
    default_cfg = OmegaConf.structured(Config)
    config = OmegaConf.merge(default_cfg, config)
    logger.debug(f"Configs:\n{OmegaConf.to_yaml(config)}")

    with open(config.network_path, "r", encoding="utf-8") as f:
        net = Network.from_dict(json.load(f))
    with open(config.task_path, "r", encoding="utf-8") as f:
        task = TaskSpec.from_dict(json.load(f))

    search = brute_force_oracle if config.oracle else solve
    result = search(net, task, config)
    dump_json(result.to_dict(), config.output_path)
    if config.trace_path is not None:
        result.trace_to_csv(config.trace_path)
    logger.info(f"{result.status} after {result.evaluations} evaluations")
    if result.status == SearchStatus.INFEASIBLE:
        sys.exit(2)
    return


if __name__ == "__main__":
    main()
