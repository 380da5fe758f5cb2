"""Diversity-driven selection of exploration strategies as a multi-armed bandit."""

from .adapt import (AdaptConfig, StepLog, StrategyCredit, adapt_step, select_strategy,
                    selection_probabilities, strategy_diversity)
from .coverage import (CoverageConfig, CoverageGrid, add_effect, ball_volume, mc_coverage_oracle,
                       new_grid, total_coverage)
from .environment import ArmSpec, MotorSpace, PlanarArm, forward_kinematics, sample_uniform_command
from .errors import ConfigurationError, DomainError, EmptyStoreError, OutOfBoundsError
from .strategies import (GoalBabbling, MotorBabbling, Observation, ObservationStore, RgbConfig,
                         nearest_observation, perturb, rgb_propose, rmb_propose)

__version__ = "0.1.0"
