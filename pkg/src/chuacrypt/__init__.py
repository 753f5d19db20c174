"""Image encryption from the lower bound error of two Chua-circuit pseudo-orbits."""

__version__ = "0.1.0"

from .chua import (  # noqa: E402
    PAPER_INITIAL,
    PAPER_PARAMS,
    ChuaParams,
    ChuaState,
    StateDerivative,
    diode_current,
    rhs_extension_a,
    rhs_extension_b,
)
from .integrator import Extension, SimulationPlan, Trajectory, rk4_step, simulate  # noqa: E402
from .keystream import (  # noqa: E402
    KeyConfig,
    dual_pseudo_orbits,
    generate_keystream,
    log_error_sequence,
    lower_bound_error,
    normalize,
)
from .cipher import Image, decrypt_image, encrypt_image, xor_bytes  # noqa: E402
