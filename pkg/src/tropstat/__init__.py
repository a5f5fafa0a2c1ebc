"""Zeros of random tropical polynomials: exact laws and Monte Carlo."""

from .atoms import (
    AtomDistribution,
    DiscreteUniform,
    Exponential,
    Gamma,
    GMeasure,
    Uniform01,
    Weibull,
    parse_dist,
)
from .hull import (
    LowerHull,
    OrderedPartition,
    index_partition,
    lower_hull,
    split_hull,
    triangle_areas,
)
from .partitions import (
    StickSequence,
    compositions,
    crp_sample,
    eppf,
    exact_pkn,
    exact_pn,
    polya_pmf,
    sieve_sample,
    stick_sample,
)
from .experiments import (
    an_stats,
    clt_report,
    couple_diffs,
    farm_trials,
    renewal_trials,
    sample_zn_counts,
    triangle_area_samples,
    walk_vs_hull,
)
from .ppp import PointSample, couple, hull_count, sim_discrete, sim_homogeneous, sim_inhomogeneous
from .renewal import (
    RenewalConstants,
    constants,
    i0_cdf,
    i0_quantile,
    i_s_cdf,
    i_s_sample,
    renewal_count,
    walk_count,
)
from .seeding import derive_seed, splitmix64, trial_rng
from .stats import (
    TrialSummary,
    chi_square,
    ks_lattice_normal,
    ks_normal,
    ks_test,
    sample_variance_error,
    slope_regression,
    slope_with_se,
    standardize,
)
from .tropical import (
    TropicalPolynomial,
    TropicalZero,
    evaluate,
    random_polynomial,
    zero_count,
    zeros,
)

__version__ = "0.1.0"
