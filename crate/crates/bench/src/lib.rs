//! Shared fixtures for the criterion benches.

use rickard::{build_cartan, CartanDatum, CartanType, Weight};

pub fn datum(ty: CartanType, rank: usize) -> CartanDatum {
    build_cartan(ty, rank).expect("valid datum")
}

/// Highest weights used by the crystal benches, one per datum.
pub fn crystal_cases() -> Vec<(CartanDatum, Weight)> {
    vec![
        (datum(CartanType::A, 3), Weight(vec![1, 1, 1])),
        (datum(CartanType::D, 4), Weight(vec![0, 1, 0, 0])),
    ]
}
