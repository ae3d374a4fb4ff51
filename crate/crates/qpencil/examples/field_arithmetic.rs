//! Tour of exact GF(2^m) arithmetic: canonical moduli, inverses, square
//! roots, traces, quadratic equations, and explicit field extension.
//!
//! Run with: cargo run --example field_arithmetic

use qpencil::gf2m::{extend_field, solve_quadratic, FieldSpec};

fn main() {
    for m in [2u32, 3, 4, 8] {
        let k = FieldSpec::gf(m);
        println!("{}  (canonical modulus)", k.name());
    }

    let k = FieldSpec::gf(2);
    let a = k.el(0x2);
    println!("\nGF(4) with a = 0x2:");
    println!("  a * a       = {:?}   (reduction mod x^2+x+1)", &a * &a);
    println!("  a^-1        = {:?}", a.inv().unwrap());
    println!("  sqrt(a)     = {:?}   (Frobenius is bijective)", a.sqrt());
    println!("  trace(a)    = {}", a.abs_trace());

    // Quadratic equations T^2 + bT + c = 0: solvable over the base field
    // exactly when trace(c / b^2) = 0.
    println!("\nQuadratics over GF(4):");
    for c in k.elements() {
        match solve_quadratic(&k.one(), &c) {
            Some((r1, r2)) => println!("  T^2 + T + {c:?} = 0  ->  roots {r1:?}, {r2:?}"),
            None => println!("  T^2 + T + {c:?} = 0  ->  no roots in GF(4)"),
        }
    }

    // Explicit extension with a recorded embedding.
    let emb = extend_field(&k, 2).unwrap();
    let img = emb.embed(&a);
    println!("\nEmbedding GF(4) -> {}:", emb.to_spec().name());
    println!("  image of a  = {img:?}");
    println!("  mult. order = {} (still a cube root of unity)", img.mult_order());
}
