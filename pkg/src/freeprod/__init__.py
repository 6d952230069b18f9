"""Word calculus, growth and entropy of free products, and geometric bounds."""

from .bounds import (
    bcg_crossover_delta,
    bcg_diastole_lb,
    diastole_lb,
    l0_combine,
    packing_count_ub,
    pair_inequality_lse,
    sgl_combine,
    systole_lb,
    volume_lb,
)
from .entropy import EntropySolution, critical_exponent, solve_h_f2, solve_weight_sum
from .factors import (
    FactorElement,
    FactorError,
    FactorSpec,
    LengthAssignment,
    f_inv,
    f_length,
    f_mul,
)
from .growth import (
    GrowthTable,
    WeightedGenSet,
    empirical_entropy,
    poincare_I,
    sphere_counts,
    weighted_counts,
)
from .scenarios import (
    SharpnessPoint,
    TorsionCollapsePoint,
    run_sharpness,
    run_torsion_collapse,
    sweep_sharpness,
    sweep_torsion_collapse,
)
from .words import (
    ContainsFreePair,
    CyclicDecomposition,
    FactorConjugate,
    FreeProduct,
    InfiniteCyclic,
    Word,
    WordError,
)

__version__ = "0.1.0"
