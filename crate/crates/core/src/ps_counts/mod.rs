//! Desk-scale counts over `𝒜 = {[p^{1/γ}] : p ≤ x^γ}` and the eight-prime
//! set `ℬ`.
//!
//! Every floor of a real power goes through [`floor_root_pow`] or
//! [`floor_pow`], which certify the result with directed rounding.

mod counts;
mod curly_b;
mod floor;
mod instance;

pub use counts::{
    count_a_d, count_p7, remainders, weighted_w, P7Count, RemainderRecord, RemainderTable,
    WeightClass, WeightedW,
};
pub use curly_b::{
    curly_x, enumerate_b, gap, members_e_d, remainder_r_frak, CurlyB, CurlyX, RFrakRecord,
};
pub use floor::{cmp_pow, floor_pow, floor_root_pow, floor_scaled_root};
pub use instance::{PsInstance, B_X_MAX, COUNT_X_MAX};
