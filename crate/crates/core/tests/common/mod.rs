#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use toric_core::curve::Curve;
use toric_core::{Configuration, IntVec};

pub const SEED: u64 = 0x5eed_2026;

pub fn v(x: &[i64]) -> IntVec {
    IntVec::from(x)
}

pub fn two_row() -> Configuration {
    Configuration::from_rows(&[vec![2, 0, 2, 1, 3], vec![2, 2, 0, 3, 3]]).unwrap()
}

pub fn curve(a: i64, b: i64, c: i64) -> Curve {
    Curve::new(a, b, c).unwrap()
}

pub fn fixture_curves() -> Vec<Curve> {
    vec![curve(2, 3, 11), curve(3, 4, 5), curve(2, 3, 17), curve(2, 4, 5), curve(1, 2, 3)]
}

/// Twenty curves with entries in 1..=40 and gcd 1, from a fixed seed.
pub fn random_curves() -> Vec<Curve> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut out = Vec::new();
    while out.len() < 20 {
        let (a, b, c) = (rng.gen_range(1..=40), rng.gen_range(1..=40), rng.gen_range(1..=40));
        if let Ok(cv) = Curve::new(a, b, c) {
            if !out.contains(&cv) {
                out.push(cv);
            }
        }
    }
    out
}

/// Every configuration the property suites run on.
pub fn all_configs() -> Vec<(String, Configuration)> {
    let mut out = vec![("two_row".to_string(), two_row())];
    for c in fixture_curves().into_iter().chain(random_curves()) {
        out.push((c.to_string(), c.config()));
    }
    out
}

/// A nonzero random integer combination of the kernel basis.
pub fn random_kernel_vector(config: &Configuration, rng: &mut StdRng) -> IntVec {
    let basis = config.kernel_basis().unwrap();
    loop {
        let mut u = IntVec::zeros(config.n());
        for b in basis {
            let k = rng.gen_range(-5..=5);
            u = u.checked_add(&b.checked_scale(k).unwrap()).unwrap();
        }
        if !u.is_zero() {
            return u;
        }
    }
}
