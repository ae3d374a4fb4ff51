//! Dense univariate polynomials over GF(2^m) and root finding.
//!
//! Root extraction scans the field exhaustively when 2^m <= 2^16 and switches
//! to gcd with x^q - x followed by trace-map equal-degree splitting above
//! that. Both paths return roots with multiplicities in bit order.

use super::{Fe, FieldSpec, SCAN_MAX_M};

/// Coefficients lowest degree first; no trailing zeros (zero poly = empty).
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    spec: FieldSpec,
    coeffs: Vec<Fe>,
}

impl std::fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c:?}*t^{i}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl UniPoly {
    pub fn new(spec: &FieldSpec, mut coeffs: Vec<Fe>) -> UniPoly {
        while coeffs.last().map_or(false, Fe::is_zero) {
            coeffs.pop();
        }
        UniPoly { spec: spec.clone(), coeffs }
    }

    pub fn zero(spec: &FieldSpec) -> UniPoly {
        UniPoly { spec: spec.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: Fe) -> UniPoly {
        UniPoly::new(&c.spec().clone(), vec![c])
    }

    /// The monomial t.
    pub fn x(spec: &FieldSpec) -> UniPoly {
        UniPoly::new(spec, vec![spec.zero(), spec.one()])
    }

    /// (t + r), which has root r in characteristic 2.
    pub fn linear_with_root(r: &Fe) -> UniPoly {
        UniPoly::new(r.spec(), vec![r.clone(), r.spec().one()])
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Fe> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Fe) -> Fe {
        let mut acc = self.spec.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        UniPoly::new(&self.spec, coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.spec);
        }
        let mut coeffs = vec![self.spec.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::new(&self.spec, coeffs)
    }

    pub fn scale(&self, c: &Fe) -> UniPoly {
        UniPoly::new(&self.spec, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divmod(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(&self.spec), self.clone());
        }
        let mut quot = vec![self.spec.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] + &(&q * dc);
            }
            quot[i - dd] = q;
        }
        (UniPoly::new(&self.spec, quot), UniPoly::new(&self.spec, rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.divmod(divisor).1
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Formal derivative; in characteristic 2 only odd-degree terms survive.
    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.spec);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| if i % 2 == 1 { c.clone() } else { self.spec.zero() })
            .collect();
        UniPoly::new(&self.spec, coeffs)
    }

    /// self^(2^e) reduced mod `modulus`, by e successive squarings.
    fn frobenius_pow_mod(&self, e: u32, modulus: &UniPoly) -> UniPoly {
        let mut h = self.rem(modulus);
        for _ in 0..e {
            h = h.mul(&h).rem(modulus);
        }
        h
    }

    /// x^(q^d) mod self, q = field order.
    fn frobenius_point(&self, d: usize) -> UniPoly {
        let mut h = UniPoly::x(&self.spec).rem(self);
        for _ in 0..d {
            h = h.frobenius_pow_mod(self.spec.m(), self);
        }
        h
    }

    /// All roots in the base field with multiplicities, sorted by bit value.
    pub fn roots(&self) -> Vec<(Fe, usize)> {
        assert!(!self.is_zero(), "root finding on the zero polynomial");
        if self.degree() == Some(0) {
            return Vec::new();
        }
        let distinct: Vec<Fe> = if self.spec.m() <= SCAN_MAX_M {
            self.spec
                .elements()
                .filter(|t| self.eval(t).is_zero())
                .collect()
        } else {
            // gcd with x^q - x isolates each field root exactly once.
            let frob = self.frobenius_point(1);
            let linear_part = self.gcd(&frob.add(&UniPoly::x(&self.spec)));
            let mut out = split_linear(&linear_part);
            out.sort();
            out
        };
        let mut result = Vec::with_capacity(distinct.len());
        for r in distinct {
            let lin = UniPoly::linear_with_root(&r);
            let mut mult = 0usize;
            let mut cur = self.clone();
            loop {
                let (q, rem) = cur.divmod(&lin);
                if !rem.is_zero() {
                    break;
                }
                mult += 1;
                cur = q;
            }
            debug_assert!(mult >= 1);
            result.push((r, mult));
        }
        result
    }

    /// Distinct-degree factor degrees of a squarefree monic polynomial:
    /// pairs (d, product of irreducible factors of degree d).
    pub fn distinct_degree_split(&self) -> Vec<(usize, UniPoly)> {
        let mut p = self.monic();
        let mut out = Vec::new();
        let mut d = 1usize;
        while p.degree().unwrap_or(0) >= 2 * d {
            let frob = p.frobenius_point(d);
            let g = p.gcd(&frob.add(&UniPoly::x(&self.spec)));
            if g.degree().unwrap_or(0) > 0 {
                out.push((d, g.clone()));
                p = p.divmod(&g).0;
            }
            d += 1;
        }
        if p.degree().unwrap_or(0) > 0 {
            let dd = p.degree().unwrap();
            out.push((dd, p));
        }
        out
    }
}

/// Splits a product of distinct monic linear factors into its roots using the
/// absolute-trace map. Deterministic: the probe sequence is fixed.
fn split_linear(g: &UniPoly) -> Vec<Fe> {
    let spec = g.spec().clone();
    let mut out = Vec::new();
    let mut stack = vec![g.monic()];
    let mut counter = 0u64;
    while let Some(cur) = stack.pop() {
        match cur.degree() {
            None | Some(0) => continue,
            Some(1) => {
                // monic t + c has root c in characteristic 2
                out.push(cur.coeff(0));
                continue;
            }
            Some(_) => {}
        }
        // Probe with affine u = r*t + s; Tr(u(root)) splits the root set for
        // about half of the probes.
        loop {
            counter += 1;
            let mix = splitmix(counter);
            let r = spec.el(mix & ((1 << spec.m()) - 1));
            let s = spec.el((mix >> 32) & ((1 << spec.m()) - 1));
            if r.is_zero() {
                continue;
            }
            let u = UniPoly::new(&spec, vec![s, r]);
            // W = u + u^2 + u^4 + ... (m terms) mod cur
            let mut acc = u.rem(&cur);
            let mut w = acc.clone();
            for _ in 1..spec.m() {
                acc = acc.mul(&acc).rem(&cur);
                w = w.add(&acc);
            }
            let d1 = cur.gcd(&w);
            let deg1 = d1.degree().unwrap_or(0);
            if deg1 > 0 && deg1 < cur.degree().unwrap() {
                let rest = cur.divmod(&d1).0;
                stack.push(d1);
                stack.push(rest);
                break;
            }
        }
    }
    out
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constructed_product_has_its_two_roots() {
        let k = FieldSpec::gf(3);
        let a = k.el(0x3);
        let b = k.el(0x5);
        let p = UniPoly::linear_with_root(&a).mul(&UniPoly::linear_with_root(&b));
        let roots = p.roots();
        assert_eq!(roots, vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn irreducible_quadratic_has_no_roots_in_gf4() {
        let k = FieldSpec::gf(2);
        // t^2 + t + a
        let p = UniPoly::new(&k, vec![k.el(0x2), k.one(), k.one()]);
        assert!(p.roots().is_empty());
    }

    #[test]
    fn repeated_linear_factor_reports_multiplicity() {
        let k = FieldSpec::gf(2);
        let a = k.el(0x2);
        let lin = UniPoly::linear_with_root(&a);
        let p = lin.mul(&lin);
        assert_eq!(p.roots(), vec![(a, 2)]);
    }

    #[test]
    fn divmod_reconstructs_dividend() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let k = FieldSpec::gf(4);
        for _ in 0..50 {
            let p = UniPoly::new(&k, (0..7).map(|_| k.random(&mut rng)).collect());
            let mut dc: Vec<Fe> = (0..3).map(|_| k.random(&mut rng)).collect();
            dc.push(k.random_nonzero(&mut rng));
            let d = UniPoly::new(&k, dc);
            let (q, r) = p.divmod(&d);
            assert_eq!(q.mul(&d).add(&r), p);
            assert!(r.degree().unwrap_or(0) < d.degree().unwrap() || r.is_zero());
        }
    }

    #[test]
    fn large_field_path_finds_planted_roots() {
        // m = 20 forces the gcd + trace-splitting path.
        let k = FieldSpec::gf(20);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let mut roots: Vec<Fe> = (0..4).map(|_| k.random(&mut rng)).collect();
            roots.sort();
            roots.dedup();
            let mut p = UniPoly::constant(k.one());
            for r in &roots {
                p = p.mul(&UniPoly::linear_with_root(r));
            }
            // plus one irreducible quadratic so the gcd actually trims
            let mut b;
            let mut c;
            loop {
                b = k.random_nonzero(&mut rng);
                c = k.random(&mut rng);
                if super::super::solve_quadratic(&b, &c).is_none() {
                    break;
                }
            }
            p = p.mul(&UniPoly::new(&k, vec![c, b, k.one()]));
            let found = p.roots();
            let expected: Vec<(Fe, usize)> = roots.into_iter().map(|r| (r, 1)).collect();
            assert_eq!(found, expected);
        }
    }

    #[test]
    fn scan_and_factor_paths_agree_on_gf256() {
        let k = FieldSpec::gf(8);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let p = UniPoly::new(&k, (0..6).map(|_| k.random(&mut rng)).collect());
            if p.is_zero() {
                continue;
            }
            let scan: Vec<(Fe, usize)> = p.roots();
            // replicate the large-field route by hand
            let frob = p.frobenius_point(1);
            let lin = p.gcd(&frob.add(&UniPoly::x(&k)));
            let mut via_split = split_linear(&lin);
            via_split.sort();
            let scan_distinct: Vec<Fe> = scan.iter().map(|(r, _)| r.clone()).collect();
            assert_eq!(via_split, scan_distinct);
        }
    }

    #[test]
    fn distinct_degree_split_reports_degrees() {
        let k = FieldSpec::gf(2);
        // (t^2+t+a)(t+1) over GF(4): degrees {1: t+1, 2: quadratic}
        let quad = UniPoly::new(&k, vec![k.el(0x2), k.one(), k.one()]);
        let lin = UniPoly::linear_with_root(&k.one());
        let p = quad.mul(&lin);
        let split = p.distinct_degree_split();
        let degrees: Vec<usize> = split.iter().map(|(d, _)| *d).collect();
        assert_eq!(degrees, vec![1, 2]);
    }
}
