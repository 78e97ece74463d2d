#![allow(dead_code)]

use projtomo_core::quantum::{DensityMatrix, Projector};
use projtomo_core::SeededRng;

pub fn random_density(d: usize, rank: usize, rng: &mut SeededRng) -> DensityMatrix {
    projtomo_core::quantum::random_density(d, rank, rng).expect("valid rank")
}

/// `P` with a frame column tilted by `angles[k]` toward a random direction
/// outside `P`; the blockwise trace distance is the mean of `sin θ_k`.
pub fn tilted(p: &Projector, angles: &[f64], rng: &mut SeededRng) -> Projector {
    projtomo_core::jordan::with_principal_angles(p, angles, rng).expect("room for the tilt")
}

/// Angles with mean sine at most `eps`, drawn so that a random subset of
/// directions is hit hard and the rest lightly.
pub fn budget_angles(r: usize, eps: f64, rng: &mut SeededRng) -> Vec<f64> {
    use rand::Rng;
    let raw: Vec<f64> = (0..r).map(|_| rng.random::<f64>().powi(3)).collect();
    let total: f64 = raw.iter().sum();
    let scale = (eps * r as f64 / total).min(1.0);
    raw.iter().map(|x| (x * scale).min(1.0).asin()).collect()
}
