//! A projective symmetry that does NOT lift: on the M = 3 pencil with
//! pairs (1,0), (1,1), (1,a), (a,1) over GF(4), the map diag(1, a)
//! permutes the singular points but fails the determinant condition of the
//! lifting criterion, with an explicit witness.
//!
//! Run with: cargo run --example nonliftable_witness

use qpencil::autgroup::{lift_check, lift_scalars, LiftVerdict, PGL2Elem};
use qpencil::gf2m::FieldSpec;
use qpencil::pencil::{normalize_pencil, Pencil, QuadraticForm};

fn main() {
    let k = FieldSpec::gf(2);
    let a = k.el(0x2);
    // f = x0 y0 + x1 y1 + x2 y2 + a x3 y3
    // g = x1 y1 + a x2 y2 + x3 y3 + sum (x_i^2 + y_i^2)
    let fa = [k.one(), k.one(), k.one(), a.clone()];
    let gb = [k.zero(), k.one(), a.clone(), k.one()];
    let mut f = QuadraticForm::zero(&k, 8);
    let mut g = QuadraticForm::zero(&k, 8);
    for i in 0..4 {
        f.set_coeff(i, 4 + i, fa[i].clone());
        g.set_coeff(i, 4 + i, gb[i].clone());
        g.set_coeff(i, i, k.one());
        g.set_coeff(4 + i, 4 + i, k.one());
    }
    let nf = normalize_pencil(&Pencil::new(f, g).unwrap(), false).unwrap();
    println!("canonical pairs: {:?}", nf.pairs());

    let elem = PGL2Elem::from_entries(&k.one(), &k.zero(), &k.zero(), &a).unwrap();
    let ld = lift_scalars(&elem, &nf).unwrap();
    println!("\ndiag(1, a): tau = {:?}", ld.tau);
    println!("lambdas = {:?}", ld.lambdas);
    println!("det A   = {:?}", ld.det_a);

    match lift_check(&ld, &nf) {
        LiftVerdict::FailDeterminant { index, det_a, required } => {
            println!("\nverdict: fails the determinant condition at index {index}:");
            println!("  det A = {det_a:?}  but the pair data requires {required:?}");
            println!("no automorphism of the intersection induces this symmetry.");
        }
        v => println!("\nunexpected verdict {v:?}"),
    }
}
