//! The Pfaffian binary form of a pencil and the points under its singular
//! fibres.
//!
//! Run with: cargo run --example pfaffian_form

use qpencil::gf2m::FieldSpec;
use qpencil::pencil::{Pencil, QuadraticForm};

fn main() {
    // M = 3 over GF(4), a a root of x^2 + x + 1:
    //   f = x0 y0 + x1 y1 + x2 y2 + a x3 y3
    //   g = x1 y1 + a x2 y2 + x3 y3 + sum (x_i^2 + y_i^2)
    let k = FieldSpec::gf(2);
    let a = k.el(0x2);
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
    let pencil = Pencil::new(f, g).unwrap();

    let form = pencil.pfaffian_form().unwrap();
    println!("P(s,t) = Pf(s f + t g) coefficients (s^(d-j) t^j):");
    for (j, c) in form.coeffs().iter().enumerate() {
        println!("  j = {j}: {c:?}");
    }
    println!("squarefree: {}", form.is_squarefree());

    let (roots, split) = form.roots();
    println!("\nroots of P (members r f + u g that are singular), split = {split}:");
    for (pt, mult) in &roots {
        println!("  {pt:?}  multiplicity {mult}");
    }

    println!("\nsingular fibres of [f : g] sit over the swapped points:");
    let members = pencil.singular_members(false).unwrap();
    for c in &members.components {
        println!("  {:?}", c.point);
    }
}
