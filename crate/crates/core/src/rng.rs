//! Deterministic random streams.
//!
//! Every stochastic routine in the crate draws from a ChaCha stream whose
//! key is a pure function of `(seed, path)`, where `path` is a short word
//! sequence naming the consumer (sampler kind, replicate id, block
//! coordinate, check name, ...). There is no global RNG state, so replicates
//! can run on any number of workers with identical output.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::geom::Point;

/// SplitMix64 step, used only for key derivation.
fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a ChaCha12 generator keyed by `(seed, path)`.
pub fn stream(seed: u64, path: &[u64]) -> ChaCha12Rng {
    let mut state = seed ^ 0x6a09_e667_f3bc_c908;
    let mut absorb = splitmix(&mut state);
    for &w in path {
        state ^= w.wrapping_mul(0xa24b_aed4_963e_e407) ^ absorb;
        absorb = splitmix(&mut state);
    }
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix(&mut state).to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}

/// FNV-1a hash of a name, for deriving per-check stream ids from strings.
pub fn name_tag(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Uniform point in the disk of given radius centered at the origin.
pub fn uniform_in_disk<R: Rng>(rng: &mut R, radius: f64) -> Point {
    let u: f64 = rng.gen();
    let v: f64 = rng.gen();
    let r = radius * u.sqrt();
    let theta = std::f64::consts::TAU * v;
    Point::new(r * theta.cos(), r * theta.sin())
}

/// Uniform point in an annulus `r0 <= |p| < r1` centered at `c`.
pub fn uniform_in_annulus<R: Rng>(rng: &mut R, c: Point, r0: f64, r1: f64) -> Point {
    let u: f64 = rng.gen();
    let v: f64 = rng.gen();
    let r = (r0 * r0 + u * (r1 * r1 - r0 * r0)).sqrt();
    let theta = std::f64::consts::TAU * v;
    c + Point::new(r * theta.cos(), r * theta.sin())
}

/// Exponential variate with the given rate, by inversion.
pub fn exponential<R: Rng>(rng: &mut R, rate: f64) -> f64 {
    let u: f64 = rng.gen(); // in [0, 1)
    -(1.0 - u).ln() / rate
}

/// Poisson count with the given mean.
pub fn poisson_count<R: Rng>(rng: &mut R, mean: f64) -> usize {
    use rand_distr::{Distribution, Poisson};
    if mean <= 0.0 {
        return 0;
    }
    let d = Poisson::new(mean).expect("positive Poisson mean");
    d.sample(rng) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut a = stream(7, &[1, 2]);
        let mut b = stream(7, &[1, 2]);
        let mut c = stream(7, &[2, 1]);
        let xa: u64 = a.gen();
        assert_eq!(xa, b.gen::<u64>());
        assert_ne!(xa, c.gen::<u64>());
    }

    #[test]
    fn exponential_mean_is_close() {
        let mut rng = stream(11, &[0]);
        let n = 200_000;
        let mean: f64 = (0..n).map(|_| exponential(&mut rng, 2.0)).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }
}
