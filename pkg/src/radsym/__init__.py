"""radsym: Dedekind sums, Rademacher symbols on modular groups, periods of
cuspidal differentials, and Manin-Drinfeld torsion certificates.

Highlights
    dedekind_sum, phi_classical, psi_classical  -- exact classical arithmetic
    GroupId, GroupElement, Cusp                 -- modular groups and cusps
    psi_general, phi_general, takada_phi        -- symbols on congruence groups
    period_numeric, x0_period_exact             -- period integrals
    Divisor, torsion_certificate                -- cuspidal torsion orders
"""

from .dedekind import (
    cocycle_defect,
    dedekind_sum,
    dedekind_sum_direct,
    phi_classical,
    pi_over_volume,
    psi_classical,
    sawtooth,
    sign,
)
from .modgroup import (
    Cusp,
    Family,
    GroupElement,
    GroupId,
    Motion,
    MotionClass,
    ScalingMap,
    classify,
    cosets,
    cusp_equivalent,
    cusp_stabilizer_generator,
    cusp_width,
    cusps,
    member,
    parse_matrix,
    schreier_generators,
    word_decompose,
)
from .periods import (
    Divisor,
    PeriodValue,
    TorsionCertificate,
    divisor_period,
    divisor_periods,
    e2_value,
    eta_log,
    period_numeric,
    phi_from_eta,
    phi_fourier_coefficient,
    torsion_certificate,
    x0_period_exact,
)
from .symbols import (
    PrecisionCtx,
    SymbolValue,
    TakadaConstant,
    lift_coset_sum,
    phi_general,
    psi_general,
    symbol_elliptic,
    symbol_parabolic,
    takada_C,
    takada_phi,
    transport_cusp,
)

__version__ = "0.1.0"

__all__ = [
    "Cusp", "Divisor", "Family", "GroupElement", "GroupId", "Motion",
    "MotionClass", "PeriodValue", "PrecisionCtx", "ScalingMap", "SymbolValue",
    "TakadaConstant", "TorsionCertificate", "classify", "cocycle_defect",
    "cosets", "cusp_equivalent", "cusp_stabilizer_generator", "cusp_width",
    "cusps", "dedekind_sum", "dedekind_sum_direct", "divisor_period",
    "divisor_periods", "e2_value", "eta_log", "lift_coset_sum", "member",
    "parse_matrix", "period_numeric", "phi_classical", "phi_fourier_coefficient",
    "phi_from_eta", "phi_general", "pi_over_volume", "psi_classical",
    "psi_general", "sawtooth", "schreier_generators", "sign",
    "symbol_elliptic", "symbol_parabolic", "takada_C", "takada_phi",
    "torsion_certificate", "transport_cusp", "word_decompose",
    "x0_period_exact",
]
