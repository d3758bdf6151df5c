//! Seeded random sampling of algebra elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::lie::{AlgebraDescriptor, LieElement, Subspace};
use crate::scalar::Scalar;

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn unit_combination<R: Rng + ?Sized>(
    a: AlgebraDescriptor,
    basis: &[LieElement<f64>],
    rng: &mut R,
) -> LieElement<f64> {
    if basis.is_empty() {
        return LieElement::zero(a);
    }
    loop {
        let c: Vec<f64> = basis.iter().map(|_| rng.sample(StandardNormal)).collect();
        let x = LieElement::combination(a, &c, basis);
        let norm = x.frob_norm();
        if norm > 1e-6 {
            return x.scale(&(1.0 / norm));
        }
    }
}

/// Gaussian element of the algebra, normalized to unit Frobenius norm.
pub fn random_element<R: Rng + ?Sized>(a: AlgebraDescriptor, rng: &mut R) -> LieElement<f64> {
    unit_combination(a, &a.basis::<f64>(), rng)
}

/// Gaussian unit-norm element of a float subspace.
pub fn random_in<R: Rng + ?Sized>(s: &Subspace<f64>, rng: &mut R) -> LieElement<f64> {
    unit_combination(s.algebra(), s.basis(), rng)
}

/// Combination of the basis of `s` with integer coefficients in `[-3, 3]`; works on
/// either track, so exact spans get exact samples.
pub fn random_integer_combination<S: Scalar, R: Rng + ?Sized>(
    s: &Subspace<S>,
    rng: &mut R,
) -> LieElement<S> {
    let c: Vec<S> = s
        .basis()
        .iter()
        .map(|_| S::from_i64(rng.random_range(-3..=3)))
        .collect();
    LieElement::combination(s.algebra(), &c, s.basis())
}
