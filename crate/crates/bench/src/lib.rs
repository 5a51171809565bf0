//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use sacat::groups::builtin;
use sacat::{CoefficientGroup, FiniteGroup};

pub fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(builtin(spec).expect("benchmark group spec"))
}

pub fn coeff(spec: &str) -> CoefficientGroup {
    CoefficientGroup::from_spec(spec).expect("benchmark coefficient spec")
}
