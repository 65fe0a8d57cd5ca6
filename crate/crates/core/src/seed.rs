//! Seed derivation for reproducible experiment grids.
//!
//! Every cell of a benchmark grid (repeat x mechanism x imputer) consumes its
//! own random stream. Streams are derived from the master seed and the cell
//! coordinates through a SplitMix64 chain, so adding a mechanism or an
//! imputer to a config never perturbs the randomness of existing cells.

/// One SplitMix64 output step (Steele et al. mixing constants).
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a stream seed from a master seed and a coordinate path.
///
/// The path is order-sensitive: `[1, 2]` and `[2, 1]` yield unrelated seeds,
/// as do paths of different lengths.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    let mut state = splitmix64(master ^ 0xD6E8_FEB8_6659_FD93);
    for &part in path {
        state = splitmix64(state ^ splitmix64(part));
    }
    state
}
