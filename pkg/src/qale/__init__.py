"""Exact bookkeeping for the L2 cohomology of QALE resolutions of C^n/G."""

from .assembly import (
    EndGeometry,
    OrbitEnd,
    WeightSpec,
    boundary_betti,
    chi_l2,
    cone_l2,
    cone_rule,
    conical_end_l2,
    end_geometry,
    end_l2,
    end_l2_weighted,
    kunneth,
    sp2_l2,
    su3_l2,
    weighted_extreme_l2,
)
from .field import CycNumber, cyc_arith, cyc_conj, cyclotomic_polynomial, format_cyc
from .group import GroupData, age, close_group, conjugacy_classes, eigen_multiplicities, fixed_dim, fixed_space
from .groupfile import GroupFile, parse_entry, parse_group_file
from .homological import RatComplex, betti, exactness_feasible, mv_check_su3, verify_ladder
from .linalg import CycMatrix, nullspace, rank, rref
from .mckay import CohomTable, ale_invariant_betti, ale_l2_betti, compact_support_betti, crepant_betti
from .strata import Stratum, StratificationReport, enumerate_strata, stratification_report, validate_hypotheses

__version__ = "0.1.0"
