//! The singular locus of the fibration defined by a pencil: one doubled
//! line per singular member, sitting in the kernel plane of its polar form.
//!
//! Run with: cargo run --example singular_locus

use qpencil::gf2m::FieldSpec;
use qpencil::pencil::{singular_locus, PencilNormalForm};

fn main() {
    let k = FieldSpec::gf(2);
    let a = k.el(0x2);
    let nf = PencilNormalForm::from_pairs(
        &k,
        vec![(k.one(), k.one()), (a.clone(), k.one()), (&a * &a, k.one())],
    )
    .unwrap();

    let report = singular_locus(&nf);
    println!("singular locus of the normal form with pairs {:?}:", nf.pairs());
    for (i, c) in report.components.iter().enumerate() {
        println!("\ncomponent {i}:");
        println!("  image point [a:b] = {:?}", c.point);
        println!("  singular member   = {:?}", c.member);
        println!("  kernel plane      = {:?} , {:?}", c.plane[0], c.plane[1]);
        println!("  doubled line dir  = {:?}", c.vertex.as_ref().unwrap());
    }

    // the same data computed blindly from the pencil agrees
    let recomputed = nf.normal_pencil().singular_members(false).unwrap();
    assert_eq!(recomputed.components.len(), report.components.len());
    for (x, y) in recomputed.components.iter().zip(&report.components) {
        assert_eq!(x.point, y.point);
    }
    println!("\nmember-by-member recomputation agrees.");
}
