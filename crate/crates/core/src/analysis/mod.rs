//! Subfunction counts `N^π`, `N^θ`, `N` and the upper bounds they are
//! checked against.

mod bounds;
mod count;
mod log2;
mod partition;

pub use bounds::{
    check_bound_det, check_bound_nondet, check_bound_prob, det_bound, nd_protocol_exponent, nondet_bound,
    prob_exponent, prob_protocol_exponent, BoundCheck, ProbBoundCheck, ProbConstants, Verdict,
};
pub use count::{
    count_subfunctions_min, count_subfunctions_order, count_subfunctions_partition, CountMode, CutRange, OrderCount,
    ReportRow, SubfunctionCountReport, EXACT_ORDER_LIMIT, MAX_B_VARS,
};
pub use log2::log2_bounds;
pub use partition::Partition;
