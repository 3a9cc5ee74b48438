//! Shared fixtures for the criterion benchmarks.

use std::sync::Arc;

use folcoh_core::sampling::Sampler;
use folcoh_core::williamson::{BlockLabel, WilliamsonBasis};

pub fn triple_hyperbolic() -> Arc<WilliamsonBasis> {
    Arc::new(WilliamsonBasis::new(&[
        BlockLabel::Hyperbolic,
        BlockLabel::Hyperbolic,
        BlockLabel::Hyperbolic,
    ]))
}

pub fn mixed_with_focus() -> Arc<WilliamsonBasis> {
    Arc::new(WilliamsonBasis::new(&[BlockLabel::Elliptic, BlockLabel::FocusFocus]))
}

pub fn sampler() -> Sampler {
    Sampler::new(0xbe0c4)
}
