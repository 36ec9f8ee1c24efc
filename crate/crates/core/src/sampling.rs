//! Seeded random sampling of parameters and Mobius maps for property sweeps.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ratio, Rational};
use crate::family::{check_domain, FamilyParams};
use crate::projline::MobiusMap;

/// Largest absolute numerator and denominator drawn.
pub const MAX_HEIGHT: i64 = 50;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-MAX_HEIGHT..=MAX_HEIGHT), rng.gen_range(1..=MAX_HEIGHT))
}

/// A uniformly drawn pair accepted by the domain check.
pub fn random_domain_point(rng: &mut impl Rng) -> FamilyParams {
    loop {
        if let Ok(p) = check_domain(&random_rational(rng), &random_rational(rng)) {
            return p;
        }
    }
}

/// A domain point with `a + b != 0`, where the deck involution is defined.
pub fn random_phi_point(rng: &mut impl Rng) -> FamilyParams {
    loop {
        let p = random_domain_point(rng);
        if p.phi_defined() {
            return p;
        }
    }
}

pub fn random_mobius(rng: &mut impl Rng) -> MobiusMap {
    loop {
        let e: Vec<Rational> = (0..4).map(|_| random_rational(rng)).collect();
        if (&e[0] * &e[3] - &e[1] * &e[2]).is_zero() {
            continue;
        }
        if let Ok(m) = MobiusMap::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let mut r1 = rng(7);
        let mut r2 = rng(7);
        for _ in 0..20 {
            assert_eq!(random_domain_point(&mut r1), random_domain_point(&mut r2));
        }
    }

    #[test]
    fn samples_satisfy_their_constraints() {
        let mut r = rng(11);
        for _ in 0..100 {
            let p = random_phi_point(&mut r);
            assert!(p.phi_defined());
            assert!(check_domain(p.a(), p.b()).is_ok());
            assert!(!random_mobius(&mut r).determinant().is_zero());
        }
    }
}
