//! The three surfaces used throughout the examples and tests.

use crate::fan::FanModel;

pub const HIRZEBRUCH: &str = include_str!("../fixtures/hirzebruch.toml");
pub const WEIGHTED_PLANE: &str = include_str!("../fixtures/weighted_plane.toml");
pub const FAKE_PLANE: &str = include_str!("../fixtures/fake_plane.toml");

/// The Hirzebruch surface F1: variables a0, a1, b0, b1.
pub fn hirzebruch() -> FanModel {
    FanModel::from_toml(HIRZEBRUCH).expect("bundled fixture")
}

/// The weighted projective plane P(1,1,4): variables a, b, c.
pub fn weighted_plane() -> FanModel {
    FanModel::from_toml(WEIGHTED_PLANE).expect("bundled fixture")
}

/// P^2 / (Z/3) with class group Z x Z/3: variables a0, a1, a2.
pub fn fake_plane() -> FanModel {
    FanModel::from_toml(FAKE_PLANE).expect("bundled fixture")
}

/// Looks up a bundled fixture by short name.
pub fn by_name(name: &str) -> Option<FanModel> {
    match name {
        "hirzebruch" | "f1" => Some(hirzebruch()),
        "weighted_plane" | "p114" => Some(weighted_plane()),
        "fake_plane" => Some(fake_plane()),
        _ => None,
    }
}
