//! Desk-scale invariant suite behind the `selfcheck` CLI command: every
//! check is deterministic given the seed and reports one pass/fail line.

use crate::autgroup::{
    aut0_count_truncated, component_group, construct_lift, generate_group, kernel_generators,
    lift_check, lift_scalars, mu2_point_count, p1_set_stabilizer, structured_oracle,
    tangent_space, truncated_block_count, AutRep, PGL2Elem,
};
use crate::exactla::{AlternatingMatrix, Matrix};
use crate::gf2m::{solve_quadratic, Fe, FieldSpec, TruncatedElement};
use crate::pencil::{normalize_pencil, PencilNormalForm};
use crate::sample::{disguised_normal_form, random_normal_form, rng_from_seed};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfcheckReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

fn check(out: &mut Vec<CheckResult>, name: &str, run: impl FnOnce() -> Result<String, String>) {
    let (pass, detail) = match std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)) {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(_) => (false, "panicked".to_string()),
    };
    out.push(CheckResult { name: name.to_string(), pass, detail });
}

/// Runs the whole suite. `corrupt_field` swaps in a reducible modulus for
/// the field-axiom check, demonstrating that the suite catches a corrupted
/// modulus table.
pub fn run(seed: u64, corrupt_field: bool) -> SelfcheckReport {
    let mut checks = Vec::new();

    check(&mut checks, "field-axioms", || {
        let mut rng = rng_from_seed(seed);
        let specs = if corrupt_field {
            // x^2 + 1 = (x + 1)^2 is reducible: the axioms must fail
            vec![FieldSpec::with_modulus_unchecked(2, 0x5)]
        } else {
            vec![FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::gf(10)]
        };
        for k in &specs {
            for _ in 0..200 {
                let a = k.random(&mut rng);
                let b = k.random(&mut rng);
                let c = k.random(&mut rng);
                if &(&a * &b) * &c != &a * &(&b * &c) {
                    return Err(format!("associativity fails in {}", k.name()));
                }
                if &a * &(&b + &c) != &(&a * &b) + &(&a * &c) {
                    return Err(format!("distributivity fails in {}", k.name()));
                }
                if !a.is_zero() {
                    let inv = a.inv().map_err(|e| e.to_string())?;
                    if !(&a * &inv).is_one() {
                        return Err(format!("inverse fails in {}", k.name()));
                    }
                }
            }
        }
        Ok(format!("{} fields sampled", specs.len()))
    });

    check(&mut checks, "frobenius-sqrt-roundtrip", || {
        for m in 1..=8u32 {
            let k = FieldSpec::gf(m);
            for x in k.elements() {
                if x.square().sqrt() != x || x.sqrt().square() != x {
                    return Err(format!("sqrt/square mismatch at {x:?} in {}", k.name()));
                }
            }
        }
        Ok("full scan m <= 8".into())
    });

    check(&mut checks, "quadratic-solver-exhaustive", || {
        for m in [2u32, 3] {
            let k = FieldSpec::gf(m);
            for b in k.elements() {
                for c in k.elements() {
                    let brute: Vec<Fe> = k
                        .elements()
                        .filter(|t| (&t.square() + &(&b * t) + &c).is_zero())
                        .collect();
                    match solve_quadratic(&b, &c) {
                        None => {
                            if !brute.is_empty() {
                                return Err(format!("missed roots for b={b:?} c={c:?}"));
                            }
                            if !b.is_zero() && (&c / &b.square()).abs_trace() == 0 {
                                return Err("trace criterion violated".into());
                            }
                        }
                        Some((r1, r2)) => {
                            if !brute.contains(&r1) || !brute.contains(&r2) {
                                return Err(format!("wrong roots for b={b:?} c={c:?}"));
                            }
                        }
                    }
                }
            }
        }
        Ok("all (b, c) over GF(4) and GF(8)".into())
    });

    check(&mut checks, "truncated-ring-units", || {
        let k = FieldSpec::gf(2);
        let one = TruncatedElement::one(&k, 2);
        let e = TruncatedElement::new(vec![k.one(), k.one()]);
        if e.square() != one {
            return Err("(1+e)^2 != 1 at order 2".into());
        }
        for u in TruncatedElement::all(&k, 3) {
            if u.is_unit() != !u.coeffs()[0].is_zero() {
                return Err("unit criterion mismatch".into());
            }
        }
        Ok("order 2 and 3 over GF(4)".into())
    });

    check(&mut checks, "pfaffian-laws", || {
        let mut rng = rng_from_seed(seed.wrapping_add(1));
        for m in [2u32, 3] {
            let k = FieldSpec::gf(m);
            for n in [4usize, 6, 8] {
                for _ in 0..10 {
                    let alt = AlternatingMatrix::random(&k, n, &mut rng);
                    let pf = alt.pfaffian().map_err(|e| e.to_string())?;
                    if pf.square() != alt.det() {
                        return Err("Pf^2 != det".into());
                    }
                    let s = Matrix::random_invertible(&k, n, &mut rng);
                    let conj = alt.congruence(&s).map_err(|e| e.to_string())?;
                    if conj.pfaffian().map_err(|e| e.to_string())? != &s.det() * &pf {
                        return Err("Pf(SAS^T) != det(S) Pf(A)".into());
                    }
                }
            }
        }
        Ok("dims 4..8 over GF(4), GF(8)".into())
    });

    check(&mut checks, "normal-form-roundtrip", || {
        let mut rng = rng_from_seed(seed.wrapping_add(2));
        let k = FieldSpec::gf(3);
        for _ in 0..5 {
            let (_, disguised, _, _) =
                disguised_normal_form(&k, 2, &mut rng).map_err(|e| e.to_string())?;
            let nf = normalize_pencil(&disguised, true).map_err(|e| e.to_string())?;
            nf.verify_against(&disguised).map_err(|e| e.to_string())?;
        }
        Ok("5 disguised pencils over GF(8)".into())
    });

    check(&mut checks, "kernel-closure", || {
        let mut rng = rng_from_seed(seed.wrapping_add(3));
        let k = FieldSpec::gf(3);
        let nf = random_normal_form(&k, 2, &mut rng);
        let group = generate_group(&nf, &kernel_generators(&nf), 1 << 12)
            .map_err(|e| e.to_string())?;
        if group.len() != 8 {
            return Err(format!("kernel closure has {} elements, want 8", group.len()));
        }
        Ok("M = 2 over GF(8)".into())
    });

    check(&mut checks, "tangent-dimension", || {
        let mut rng = rng_from_seed(seed.wrapping_add(4));
        let k = FieldSpec::gf(3);
        for m_param in [2usize, 3] {
            let nf = random_normal_form(&k, m_param, &mut rng);
            let ts = tangent_space(&nf);
            if ts.dim() != m_param + 1 {
                return Err(format!("tangent dim {} want {}", ts.dim(), m_param + 1));
            }
            if !ts.all_pair_scalar_blocks(m_param + 1) || !ts.all_gamma_zero() {
                return Err("tangent solutions not pair-scalar".into());
            }
        }
        Ok("M = 2, 3 over GF(8)".into())
    });

    check(&mut checks, "mu2-truncated-counts", || {
        let k2 = FieldSpec::gf(1);
        let pairs = vec![
            (k2.one(), k2.zero()),
            (k2.one(), k2.one()),
            (k2.zero(), k2.one()),
        ];
        for order in [2usize, 3] {
            let got = truncated_block_count(&k2, &pairs, order, 1 << 30)
                .map_err(|e| e.to_string())?;
            let want = mu2_point_count(&k2, order, 2);
            if got as u128 != want {
                return Err(format!("order {order}: {got} != {want}"));
            }
        }
        let k4 = FieldSpec::gf(2);
        let a = k4.el(0x2);
        let nf = PencilNormalForm::from_pairs(
            &k4,
            vec![
                (k4.one(), k4.one()),
                (a.clone(), k4.one()),
                (&a * &a, k4.one()),
            ],
        )
        .map_err(|e| e.to_string())?;
        let got = aut0_count_truncated(&nf, 2, 1 << 40).map_err(|e| e.to_string())?;
        if got as u128 != mu2_point_count(&k4, 2, 2) {
            return Err("GF(4) truncated count mismatch".into());
        }
        Ok("orders 2, 3".into())
    });

    check(&mut checks, "rotation-example-lifts", || {
        let k = FieldSpec::gf(2);
        let a = k.el(0x2);
        let nf = PencilNormalForm::from_pairs(
            &k,
            vec![
                (k.one(), k.one()),
                (a.clone(), k.one()),
                (&a * &a, k.one()),
            ],
        )
        .map_err(|e| e.to_string())?;
        let rotation =
            PGL2Elem::from_entries(&a, &k.zero(), &k.zero(), &k.one()).map_err(|e| e.to_string())?;
        let ld = lift_scalars(&rotation, &nf).map_err(|e| e.to_string())?;
        if !lift_check(&ld, &nf).passed() {
            return Err("rotation should pass the lifting criterion".into());
        }
        let lift = construct_lift(&rotation, &nf).map_err(|e| e.to_string())?;
        if lift.rep.pushforward() != &rotation {
            return Err("pushforward of the lift differs from the input".into());
        }
        Ok("order-3 rotation over GF(4)".into())
    });

    check(&mut checks, "quartic-example-witness", || {
        let k = FieldSpec::gf(2);
        let a = k.el(0x2);
        let nf = PencilNormalForm::from_pairs(
            &k,
            vec![
                (k.one(), k.zero()),
                (k.one(), k.one()),
                (k.one(), a.clone()),
                (a.clone(), k.one()),
            ],
        )
        .map_err(|e| e.to_string())?;
        let elem = PGL2Elem::from_entries(&k.one(), &k.zero(), &k.zero(), &a)
            .map_err(|e| e.to_string())?;
        let ld = lift_scalars(&elem, &nf).map_err(|e| e.to_string())?;
        let want = vec![k.one(), k.one(), &k.one() + &a, a.clone()];
        if ld.lambdas != want {
            return Err(format!("lambdas {:?}", ld.lambdas));
        }
        match lift_check(&ld, &nf) {
            crate::autgroup::LiftVerdict::FailDeterminant { det_a, required, .. }
                if det_a == a && required.is_one() =>
            {
                Ok("witness det A = a vs required 1".into())
            }
            v => Err(format!("unexpected verdict {v:?}")),
        }
    });

    check(&mut checks, "oracle-agreement", || {
        let mut rng = rng_from_seed(seed.wrapping_add(5));
        for m in [2u32, 3] {
            let k = FieldSpec::gf(m);
            let nf = random_normal_form(&k, 2, &mut rng);
            let oracle = structured_oracle(&nf, 1 << 34).map_err(|e| e.to_string())?;
            let report = component_group(&nf).map_err(|e| e.to_string())?;
            let mut gens: Vec<AutRep> = report.kernel.clone();
            gens.extend(report.rational_lifts().into_iter().cloned());
            let generated = generate_group(&nf, &gens, 1 << 16).map_err(|e| e.to_string())?;
            if generated.len() != oracle.len() {
                return Err(format!(
                    "closure {} vs oracle {} over {}",
                    generated.len(),
                    oracle.len(),
                    k.name()
                ));
            }
            let g1: std::collections::HashSet<Vec<u64>> =
                generated.iter().map(AutRep::key).collect();
            let g2: std::collections::HashSet<Vec<u64>> = oracle.iter().map(AutRep::key).collect();
            if g1 != g2 {
                return Err("oracle and closure disagree elementwise".into());
            }
        }
        Ok("GF(4) and GF(8), M = 2".into())
    });

    check(&mut checks, "stabilizer-triple", || {
        let k = FieldSpec::gf(2);
        let pts = vec![
            crate::gf2m::ProjPoint::new(k.one(), k.zero()),
            crate::gf2m::ProjPoint::new(k.zero(), k.one()),
            crate::gf2m::ProjPoint::new(k.one(), k.one()),
        ];
        let stab = p1_set_stabilizer(&pts).map_err(|e| e.to_string())?;
        if stab.len() != 6 {
            return Err(format!("triple stabilizer has {} elements, want 6", stab.len()));
        }
        Ok("S3 on the standard triple".into())
    });

    let passed = checks.iter().all(|c| c.pass);
    SelfcheckReport { seed, passed, checks }
}
