//! Shared inputs for the criterion benchmarks.

/// Elliptic orders spanning the small-table regime and a large-order case.
pub const ORDERS: [u32; 4] = [2, 7, 50, 500];

/// Working precisions exercised by the benchmarks.
pub const DIGITS: [u32; 2] = [40, 80];
