"""Bell-inequality tests for two- and three-mode continuous-variable states.

Gaussian covariance machinery, a truncated Fock-space oracle, the heralded
(degaussified) two-mode state, and three measurement strategies: displaced
parity, pseudospin, and dichotomized homodyne.
"""
from .errors import (
    ConditioningError,
    CutoffTooSmallError,
    CvBellError,
    InvalidParameterError,
    PrecisionError,
    UndefinedStateError,
    UnsupportedRegimeError,
)
from .gaussian import (
    CouplingParams,
    GaussianState,
    TripartitePhotonNumbers,
    coupling_to_photons,
    ghz_r_from_photons,
    ghz_state,
    ghz_total_photons,
    reduce_state,
    su21_state,
    twb_state,
    wigner_eval,
)
from .fock import (
    FockDensityOperator,
    FockPureState,
    displaced_parity_expect,
    onoff_condition,
    orthant_probabilities,
    pseudospin_expect,
    quadrature_orthant_expect,
    su21_fock,
    twb_fock,
    wigner_reconstruct,
)
from .conditional import ConditionalParams, TwoGaussianWigner, p_click, w1_eval, w_traced
from .bell_dp import (
    BellValue,
    DpSettings,
    b2_conditional_dp,
    b2_dp,
    b2_twb_bw_dp,
    b2_twb_dp,
    b3_dp_general,
    b3_ghz_closed,
    b3_ghz_dp,
    b3_su21_closed,
    b3_su21_opt_dp,
    b3_su21_sym_dp,
    conditional_dp_settings,
    e_dp_conditional,
    e_dp_gaussian,
    e_dp_ghz_closed,
    ghz_dp_settings,
    large_squeezing_residual,
    su21_opt_dp_settings,
    su21_opt_state,
    su21_sym_dp_settings,
    su21_sym_state,
    twb_bw_dp_settings,
    twb_dp_settings,
)
from .bell_ps import (
    PsCoefficients,
    PsSettings,
    Representation,
    b2_ps_from_f,
    b3_ps,
    b3_ps_from_coeffs,
    e_ps3,
    f_conditional,
    f_traced,
    f_twb,
    ghz_pi_coeffs,
    pi_coeffs_quadrature,
    su21_pi_coeffs,
    su21_ps_coeffs,
)
from .homodyne import HomodyneSetting, b2_h, classical_reference, e_h_conditional, e_h_gaussian
from .optim import ScanResult, asymptote_relations, klyshko_max, log_j_maximize, maximize_angles, maximize_scalar

__version__ = "0.1.0"
