//! Infinitesimal automorphisms: the tangent space of the identity
//! component is spanned by pair-scalar blocks, and point counts over
//! truncated dual-number rings match an M-fold product of the
//! square-roots-of-unity group scheme.
//!
//! Run with: cargo run --example tangent_space

use qpencil::autgroup::{aut0_count_truncated, mu2_point_count, tangent_space};
use qpencil::gf2m::FieldSpec;
use qpencil::sample::{random_normal_form, rng_from_seed};

fn main() {
    let k = FieldSpec::gf(2);
    let mut rng = rng_from_seed(7);
    let nf = random_normal_form(&k, 2, &mut rng);
    println!("pairs: {:?}", nf.pairs());

    let ts = tangent_space(&nf);
    println!("\nlifting-group tangent dimension: {} (M+1 = {})", ts.dim(), nf.m_param() + 1);
    println!("automorphism tangent dimension:  {} (the scalar direction quotients out)", ts.dim() - 1);
    println!("all solutions pair-scalar blocks: {}", ts.all_pair_scalar_blocks(nf.pairs().len()));
    println!("all pencil scalars first-order trivial: {}", ts.all_gamma_zero());

    println!("\ntruncated point counts over GF(4)[e]/(e^n), mod scalars:");
    for order in [1usize, 2] {
        let count = aut0_count_truncated(&nf, order, 1 << 40).unwrap();
        let target = mu2_point_count(nf.field(), order, nf.m_param() as u32);
        println!(
            "  n = {order}: {count} candidates  (target {target}, agree: {})",
            count as u128 == target
        );
    }
    println!("\nat n = 1 only the identity remains: the group is infinitesimal,");
    println!("invisible on reduced points but not over nilpotents.");

    // order 3 at the smallest size: the count stays at floor(n/2) = 1
    // epsilon-degrees of freedom per pair, distinguishing square roots of
    // unity from a constant group
    let k2 = FieldSpec::gf(1);
    let pairs = vec![
        (k2.one(), k2.zero()),
        (k2.one(), k2.one()),
        (k2.zero(), k2.one()),
    ];
    println!("\nGF(2) pair data, orders 2 and 3:");
    for order in [2usize, 3] {
        let count =
            qpencil::autgroup::truncated_block_count(&k2, &pairs, order, 1 << 30).unwrap();
        println!("  n = {order}: {count}  (target {})", mu2_point_count(&k2, order, 2));
    }
}
