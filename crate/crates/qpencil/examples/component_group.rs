//! The component group of the automorphism scheme: coordinate-swap kernel,
//! stabilizer verdict table, and the order 2^(M+1) times the number of
//! liftable symmetries.
//!
//! Run with: cargo run --example component_group

use qpencil::autgroup::component_group;
use qpencil::gf2m::FieldSpec;
use qpencil::sample::{random_normal_form, rng_from_seed};

fn main() {
    let k = FieldSpec::gf(10); // GF(1024)
    let mut rng = rng_from_seed(4);
    let nf = random_normal_form(&k, 3, &mut rng);
    println!("random normal form over {} with M = 3:", k.name());
    for (a, b) in nf.pairs() {
        println!("  ({a:?}, {b:?})");
    }

    let report = component_group(&nf).unwrap();
    println!("\nkernel: {} coordinate-swap generators (group of order {})",
        report.kernel.len(), 1u32 << report.kernel.len());
    println!("stabilizer of the singular points: {} elements", report.stabilizer.len());
    for e in &report.stabilizer {
        println!("  {:?}  ->  {:?}", e.elem, e.verdict);
    }
    println!("\ncomponent group order: {}", report.order);
    println!("(four points always carry the double-transposition symmetries,");
    println!(" but for generic pairs none of them passes the lifting criterion)");
}
