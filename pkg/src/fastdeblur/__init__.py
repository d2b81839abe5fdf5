"""Fast deblurring with structured boundary conditions.

Blurring operators are stored as ``T diag(d) T^{-1}`` where ``T`` is a fast
transform (unitary Fourier, orthonormal cosine, or a boundary-corrected
variant with an O(n log n) inverse), so products, Tikhonov solves and GCV
evaluations all cost a few transforms.
"""

from .errors import (
    DeblurError,
    DegenerateGcvError,
    DegenerateTransformError,
    DegeneracyError,
    DimensionError,
    EmptyInputError,
    FormatError,
    IncompatibleSmootherError,
    NumericalError,
    ParameterError,
    SizeError,
    UnsupportedPsfError,
    ValidationError,
)
from .experiments import compare_boundary_conditions, extended_blur, field_of_view
from .multidim import (
    Operator2D,
    Psf2D,
    blur_apply_2d,
    build_operator_2d,
    disk_psf,
    eigenvalues_2d,
    gaussian_psf_2d,
    tensor_apply,
    tikhonov_solve_2d,
)
from .noise import add_noise
from .operators import (
    BlurOperator,
    BoundaryCondition,
    blur_apply,
    build_operator,
    eigenvalue_grid,
)
from .psf import Psf, gaussian_psf, identity_psf, motion_psf, reblur_psf, symbol_eval
from .regularization import (
    RestorationReport,
    SmoothingOperator,
    filter_factors,
    gcv_curve,
    gcv_select,
    gcv_value,
    restore,
    rre,
    smoothing_eigenvalues,
    tikhonov_solve,
)
from .transforms import (
    BoundaryBasis,
    StructuredTransform,
    build_transform,
    extended_grid,
    transform_apply,
    transform_apply_inverse,
)
from .trig import Direction, TrigKind, TrigPlan, cosine_apply, fourier_apply, get_plan, sine_apply

__version__ = "0.1.0"
