"""
Resource quantifiers and free operations.
"""

from .cfo import (
    ChannelOutcome,
    IwasawaFactors,
    KrausChannel,
    apply_channel,
    euler_zyz,
    first_order_deviation,
    iwasawa_sl2,
    lift_to_spin,
    normalize_after,
    random_coherent_state,
    sample_cfo_element,
    weak_meas_generator,
    weak_meas_kraus,
)
from .hypergeometric import hyp2f1_terminating, pochhammer, zeta_coeff
from .purity import (
    ClosedFormInputs,
    PurityValue,
    g_purity,
    g_purity_batch,
    g_purity_mixed,
    jplus_expect,
    jplus_expect_hypergeometric,
    jz_expect,
    marginal_purity_oracle,
    norm_hypergeometric_sign_check,
    phi_norm,
    weight_purity_closed,
    weight_purity_direct,
)
