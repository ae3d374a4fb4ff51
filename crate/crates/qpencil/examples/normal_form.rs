//! Normal-form reduction round trip: disguise a pencil with random
//! coordinate and basis changes, then recover canonical pairs and verify
//! the recorded (P, B) reproduce the normal form coefficient-exactly.
//!
//! Run with: cargo run --example normal_form

use qpencil::gf2m::FieldSpec;
use qpencil::pencil::normalize_pencil;
use qpencil::sample::{disguised_normal_form, rng_from_seed};

fn main() {
    let k = FieldSpec::gf(8); // GF(256)
    let mut rng = rng_from_seed(2026);
    let (original, disguised, _s, _bmix) = disguised_normal_form(&k, 3, &mut rng).unwrap();

    println!("original pairs (a_i, b_i):");
    for (a, b) in original.pairs() {
        println!("  ({a:?}, {b:?})");
    }

    let nf = normalize_pencil(&disguised, true).unwrap();
    println!("\nrecovered pairs after a random GL_8 x GL_2 disguise:");
    for (a, b) in nf.pairs() {
        println!("  ({a:?}, {b:?})");
    }
    println!("extension degree: {}", nf.extension_degree());

    nf.verify_against(&disguised).unwrap();
    println!("\n(P, B) verified: B-mix followed by the P substitution");
    println!("reproduces f = sum a_i x_i y_i, g = sum b_i x_i y_i + x_i^2 + y_i^2 exactly");
}
