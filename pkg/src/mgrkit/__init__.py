"""Maximal generalised roundness of finite (semi-)metric spaces."""

from .exceptions import InvalidArgument, ParseError, SingularMatrixError, ValidationError
from .hamming import HammingSubset, hamming_to_space, make_subset, murugan_criterion, theorem12_check
from .numerics import SignLogDet, det_exact_integer, det_sign_log, solve_linear, symmetric_min_eigenvalue
from .oracle import SimplexSample, generalised_roundness_check, mgr_oracle, negative_type_check
from .solver import MgrResult, SanchezEvaluation, SolverConfig, classify_dichotomy, mgr_compute, sanchez_evaluate
from .space import MetricSpace, PMatrices, check_cm_gram_identity, p_matrices, validate_space

__version__ = "0.1.0"
