//! A liftable projective symmetry: for pairs (a^i, 1) with a of
//! multiplicative order M+1, the rotation diag(a, 1) permutes the singular
//! points cyclically with all scalars equal, passes the lifting criterion,
//! and lifts to the cyclic coordinate shift.
//!
//! Run with: cargo run --example liftable_rotation

use qpencil::autgroup::{construct_lift, lift_check, lift_scalars, PGL2Elem};
use qpencil::gf2m::FieldSpec;
use qpencil::pencil::PencilNormalForm;

fn main() {
    let k = FieldSpec::gf(2);
    let a = k.el(0x2); // cube root of unity
    let nf = PencilNormalForm::from_pairs(
        &k,
        vec![(k.one(), k.one()), (a.clone(), k.one()), (&a * &a, k.one())],
    )
    .unwrap();
    println!("pairs: {:?}", nf.pairs());

    let rotation = PGL2Elem::from_entries(&a, &k.zero(), &k.zero(), &k.one()).unwrap();
    println!("\nrotation diag(a, 1), canonical representative {rotation:?}");

    let ld = lift_scalars(&rotation, &nf).unwrap();
    println!("tau = {:?}", ld.tau);
    println!("lambdas = {:?} (all equal: the rotation moves every point the same way)", ld.lambdas);
    println!("verdict: {:?}", lift_check(&ld, &nf));

    let lift = construct_lift(&rotation, &nf).unwrap();
    println!("\nconstructed lift (block coefficients per pair): {:?}", lift.rep.coeffs());
    println!("permutation of coordinate pairs: {:?}", lift.rep.tau());
    println!("defined over: {} (extension degree {})", lift.nf.field().name(), lift.extension_degree);
    println!("pushforward equals the rotation mod scalars: {}", lift.rep.pushforward() == &rotation);
}
