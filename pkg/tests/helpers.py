"""Shared test oracles."""
from nkpolicy import EigenReport, RegionLabel


def eigen_oracle_label(rep: EigenReport) -> RegionLabel:
    """Classification straight from eigenvalue positions; independent of the
    border-sign logic in the library."""
    if rep.is_complex_pair:
        return (RegionLabel.R4_2_SINK_COMPLEX if rep.modulus1 < 1.0
                else RegionLabel.R4_3_SOURCE_COMPLEX)
    l1, l2 = rep.lambda1.real, rep.lambda2.real
    if l1 < -1.0:
        if l2 > 1.0:
            return RegionLabel.R2_SOURCE_REAL_STRADDLE
        if l2 > -1.0:
            return RegionLabel.R3_SADDLE_NEG
        return RegionLabel.R4_5_BOTH_BELOW_MINUS1
    if l1 < 1.0:
        if l2 > 1.0:
            return RegionLabel.R1_SADDLE
        return RegionLabel.R4_1_SINK_REAL
    return RegionLabel.R4_4_SOURCE_REAL
