//! Cross-check of the assembled component group against the exhaustive
//! structured oracle: enumerate every block-form candidate, keep the ones
//! that preserve the pencil, and compare with the closure of the kernel
//! and the rational lifts.
//!
//! Run with: cargo run --example oracle_crosscheck

use qpencil::autgroup::{component_group, generate_group, structured_oracle, AutRep};
use qpencil::gf2m::FieldSpec;
use qpencil::sample::{random_normal_form, rng_from_seed};
use std::collections::HashSet;

fn main() {
    let k = FieldSpec::gf(3); // GF(8)
    let mut rng = rng_from_seed(12);
    let nf = random_normal_form(&k, 2, &mut rng);
    println!("pairs: {:?}", nf.pairs());

    let oracle = structured_oracle(&nf, 1 << 34).unwrap();
    println!("\noracle: {} automorphism representatives mod scalars", oracle.len());

    let report = component_group(&nf).unwrap();
    println!("component group order (geometric): {}", report.order);

    let mut gens: Vec<AutRep> = report.kernel.clone();
    gens.extend(report.rational_lifts().into_iter().cloned());
    let generated = generate_group(&nf, &gens, 1 << 16).unwrap();
    println!("closure of kernel + rational lifts: {} elements", generated.len());

    let a: HashSet<Vec<u64>> = oracle.iter().map(AutRep::key).collect();
    let b: HashSet<Vec<u64>> = generated.iter().map(AutRep::key).collect();
    println!("element-for-element agreement: {}", a == b);

    for e in &report.stabilizer {
        if let Some(lift) = &e.lift {
            if lift.extension_degree > 1 {
                println!(
                    "\nnote: {:?} lifts, but only over {} -- the oracle over {} cannot see it",
                    e.elem,
                    lift.nf.field().name(),
                    k.name()
                );
            }
        }
    }
}
