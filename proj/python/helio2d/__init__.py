"""2D sound-soft scattering: forward solves and band-limited Gauss-Newton
shape reconstruction."""

from ._core import (
    Curve,
    add_noise,
    bessel_j0j1y0y1,
    far_field,
    filter_resample,
    hausdorff,
    invert_dataset,
    is_simple,
    measurement_angles,
    perturb,
    set_thread_count,
    synthesize_dataset,
    __version__,
)

__all__ = [
    "Curve",
    "add_noise",
    "bessel_j0j1y0y1",
    "far_field",
    "filter_resample",
    "hausdorff",
    "invert_dataset",
    "is_simple",
    "measurement_angles",
    "perturb",
    "set_thread_count",
    "synthesize_dataset",
    "__version__",
]
