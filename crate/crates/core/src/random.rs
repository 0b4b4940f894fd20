//! Seeded sampling of test vectors.

use std::sync::Arc;

use num_complex::Complex;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::group::{Group, GroupElement};
use crate::orlicz::OrliczVector;
use crate::scalar::Scalar;

pub const MAX_RANDOM_SUPPORT: usize = 8;

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Samples a vector whose support (1 to `max_support` points) is uniform in
/// `ball` and whose amplitudes are uniform on `[-1, 1] + i[-1, 1]`.
pub fn random_vector<T: Scalar, R: Rng>(
    group: &Arc<Group>,
    ball: &[GroupElement],
    max_support: usize,
    rng: &mut R,
) -> Result<OrliczVector<T>> {
    let cap = max_support.min(ball.len()).max(1);
    let size = rng.gen_range(1..=cap);
    let picks = sample(rng, ball.len(), size);
    let entries = picks
        .into_iter()
        .map(|i| {
            let z = Complex::new(T::lit(rng.gen_range(-1.0..=1.0)), T::lit(rng.gen_range(-1.0..=1.0)));
            (ball[i].clone(), z)
        })
        .collect::<Vec<_>>();
    OrliczVector::from_entries(Arc::clone(group), entries)
}

/// Like [`random_vector`] with nonnegative real amplitudes in `[0, 1]`.
pub fn random_nonnegative<T: Scalar, R: Rng>(
    group: &Arc<Group>,
    ball: &[GroupElement],
    max_support: usize,
    rng: &mut R,
) -> Result<OrliczVector<T>> {
    let v = random_vector::<T, R>(group, ball, max_support, rng)?;
    v.map(|_, z| Ok(Complex::new(z.re.abs(), T::zero())))
}
