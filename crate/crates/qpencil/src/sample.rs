//! Seeded samplers for pencils, normal forms, and disguises. All
//! randomness flows from a caller-provided ChaCha generator so runs are
//! reproducible from the recorded seed.

use crate::error::Result;
use crate::exactla::{AlternatingMatrix, Matrix};
use crate::gf2m::{Fe, FieldSpec};
use crate::pencil::{Pencil, PencilNormalForm};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random canonical pairs (a_i nonzero, pairwise independence), by
/// rejection; panics only if the field is too small to host M+1 distinct
/// admissible points.
pub fn random_normal_form<R: Rng + ?Sized>(
    spec: &FieldSpec,
    m_param: usize,
    rng: &mut R,
) -> PencilNormalForm {
    assert!(
        spec.order() >= (m_param + 1) as u128,
        "field has fewer than M+1 admissible points"
    );
    loop {
        let pairs: Vec<(Fe, Fe)> = (0..=m_param)
            .map(|_| (spec.random_nonzero(rng), spec.random(rng)))
            .collect();
        if let Ok(nf) = PencilNormalForm::from_pairs(spec, pairs) {
            return nf;
        }
    }
}

/// A normal-form pencil hidden behind a random coordinate change and a
/// random pencil-basis mix. Returns the disguised pencil along with the
/// disguising matrices.
pub fn disguised_normal_form<R: Rng + ?Sized>(
    spec: &FieldSpec,
    m_param: usize,
    rng: &mut R,
) -> Result<(PencilNormalForm, Pencil, Matrix, Matrix)> {
    let nf = random_normal_form(spec, m_param, rng);
    let s = Matrix::random_invertible(spec, nf.n(), rng);
    let bmix = Matrix::random_invertible(spec, 2, rng);
    let disguised = nf.normal_pencil().mix(&bmix)?.substitute(&s)?;
    Ok((nf, disguised, s, bmix))
}

/// Uniformly random alternating matrix of the given dimension.
pub fn random_alternating<R: Rng + ?Sized>(
    spec: &FieldSpec,
    n: usize,
    rng: &mut R,
) -> AlternatingMatrix {
    AlternatingMatrix::random(spec, n, rng)
}
