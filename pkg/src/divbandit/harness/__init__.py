from .config import ExperimentConfig, SelectorSpec, StrategySpec, load_config, arm_config
from .episode import RunRecord, episode_seed, mix64, run_episode
from .report import emit_report, report
from .stats import SummaryStats, smoothed_usage
from .sweep import records_stats, run_repetitions, sweep
