//! Exactness certificates for the five-term sequences and the theory of
//! perfect groups.

mod exact;
mod perfect;
mod sequences;

pub use exact::{check_exactness, FiveTermReport, NodeVerdict, Witness, ELEMENTWISE_LIMIT};
pub use perfect::{
    initiality_sample, is_perfect, morphisms_over_base, perfect_case_isomorphism, projectivity_witness,
    universal_central_extension, universal_central_extension_with_sample, HomologyCaps, InitialityCheck,
    PairingVerdict, UCEResult, UNCERTIFIED_CAP,
};
pub use sequences::{
    hochschild_serre, hochschild_serre_ladder, hochschild_serre_with, stallings_stammbach, stallings_stammbach_with,
    stallings_stammbach_with_cap, standard_extension_suite, transgression_is_section_independent,
    universal_coefficients, universal_coefficients_with,
};
