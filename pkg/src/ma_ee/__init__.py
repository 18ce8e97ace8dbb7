"""Energy-efficient movable-antenna link: stepper motor power model, field-response
channel, and joint position/speed/power optimisation."""

from .bench import (
    SweepResult,
    SweepSpec,
    benchmark1_rate_max,
    benchmark2_fixed_motor_power,
    benchmark3_fpa,
    monte_carlo_sweep,
)
from .channel import (
    ChannelParams,
    ChannelRealization,
    channel_coeff,
    channel_gain,
    sample_realization,
)
from .config import RunConfig, load_config
from .errors import (
    ConfigError,
    DegenerateChannelError,
    DomainError,
    FeasibilityError,
    ModelError,
)
from .motor import (
    MotorParams,
    motor_power,
    no_load_speed,
    pull_out_torque,
    step_size,
    v_max,
)
from .objective import (
    OperatingPoint,
    SystemConfig,
    ee_asymptotic,
    energy_efficiency,
    movement_delay,
    rate,
    total_energy,
)
from .solver import (
    DinkelbachTrace,
    PositionGrid,
    Scheme,
    Solution,
    brute_force_oracle,
    build_grid,
    dinkelbach_power,
    dinkelbach_power_update,
    solve,
)

__version__ = "0.1.0"
