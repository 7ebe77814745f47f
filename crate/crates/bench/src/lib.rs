//! Fixtures shared by the benchmarks.

use dwork_core::{Characters, DworkParams};

pub fn characters(p: u32, e: u32) -> Characters {
    Characters::for_field(p, e).expect("benchmark field is valid")
}

/// Degree-6 member at `λ = 2`, valid whenever `q ≡ 1 (mod 6)` and `2^6 ≠ 1`.
pub fn sextic(ch: &Characters) -> DworkParams {
    DworkParams::new(ch, 6, ch.field().from_int(2)).expect("λ = 2 is valid")
}
