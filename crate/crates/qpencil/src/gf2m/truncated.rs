//! Truncated dual-number rings GF(q)[e]/(e^n): the Artinian local test rings
//! used to probe non-reduced automorphism structure.

use super::{Fe, FieldSpec};

/// Element of GF(q)[e]/(e^n): coeffs[j] is the coefficient of e^j.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedElement {
    coeffs: Vec<Fe>,
}

impl std::fmt::Debug for TruncatedElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| format!("{c:?}e^{j}"))
            .collect();
        write!(f, "({})", terms.join(" + "))
    }
}

impl TruncatedElement {
    pub fn new(coeffs: Vec<Fe>) -> TruncatedElement {
        assert!(!coeffs.is_empty(), "truncation order must be positive");
        TruncatedElement { coeffs }
    }

    pub fn zero(spec: &FieldSpec, n: usize) -> TruncatedElement {
        TruncatedElement::new(vec![spec.zero(); n])
    }

    pub fn one(spec: &FieldSpec, n: usize) -> TruncatedElement {
        let mut c = vec![spec.zero(); n];
        c[0] = spec.one();
        TruncatedElement::new(c)
    }

    pub fn from_fe(a: &Fe, n: usize) -> TruncatedElement {
        let mut c = vec![a.spec().zero(); n];
        c[0] = a.clone();
        TruncatedElement::new(c)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn spec(&self) -> &FieldSpec {
        self.coeffs[0].spec()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Fe::is_zero)
    }

    /// Units are exactly the elements with nonzero constant coefficient.
    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn add(&self, other: &TruncatedElement) -> TruncatedElement {
        assert_eq!(self.order(), other.order());
        TruncatedElement::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn mul(&self, other: &TruncatedElement) -> TruncatedElement {
        assert_eq!(self.order(), other.order());
        let n = self.order();
        let spec = self.spec();
        let mut out = vec![spec.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        TruncatedElement::new(out)
    }

    pub fn square(&self) -> TruncatedElement {
        self.mul(self)
    }

    pub fn scale(&self, c: &Fe) -> TruncatedElement {
        TruncatedElement::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Inverse of a unit, solved coefficient by coefficient.
    pub fn inv(&self) -> Option<TruncatedElement> {
        if !self.is_unit() {
            return None;
        }
        let n = self.order();
        let spec = self.spec();
        let a0_inv = self.coeffs[0].inv().unwrap();
        let mut out = vec![spec.zero(); n];
        out[0] = a0_inv.clone();
        for k in 1..n {
            // sum_{i=1..k} a_i * out_{k-i} + a_0 * out_k = 0
            let mut acc = spec.zero();
            for i in 1..=k {
                acc = &acc + &(&self.coeffs[i] * &out[k - i]);
            }
            out[k] = &acc * &a0_inv;
        }
        Some(TruncatedElement::new(out))
    }

    /// Enumerates every ring element (q^n of them) in lexicographic bit order.
    pub fn all(spec: &FieldSpec, n: usize) -> impl Iterator<Item = TruncatedElement> + '_ {
        let q = 1u64 << spec.m();
        let total = q.pow(n as u32);
        (0..total).map(move |mut idx| {
            let mut coeffs = Vec::with_capacity(n);
            for _ in 0..n {
                coeffs.push(spec.el(idx % q));
                idx /= q;
            }
            TruncatedElement::new(coeffs)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_plus_epsilon_squares_to_one_at_order_two() {
        let k = FieldSpec::gf(2);
        let e = TruncatedElement::new(vec![k.one(), k.one()]);
        assert_eq!(e.square(), TruncatedElement::one(&k, 2));
    }

    #[test]
    fn units_are_exactly_nonzero_constant_term() {
        let k = FieldSpec::gf(2);
        for a in TruncatedElement::all(&k, 3) {
            assert_eq!(a.is_unit(), !a.coeffs()[0].is_zero());
            if let Some(inv) = a.inv() {
                assert_eq!(a.mul(&inv), TruncatedElement::one(&k, 3));
            }
        }
    }

    #[test]
    fn ring_law_matches_truncated_polynomial_product() {
        let k = FieldSpec::gf(3);
        let a = TruncatedElement::new(vec![k.el(3), k.el(5), k.el(1)]);
        let b = TruncatedElement::new(vec![k.el(2), k.el(7), k.el(4)]);
        let p = a.mul(&b);
        // degree-0: 3*2; degree-1: 3*7 + 5*2; degree-2: 3*4 + 5*7 + 1*2
        let c0 = &k.el(3) * &k.el(2);
        let c1 = &(&k.el(3) * &k.el(7)) + &(&k.el(5) * &k.el(2));
        let c2 = &(&(&k.el(3) * &k.el(4)) + &(&k.el(5) * &k.el(7))) + &(&k.el(1) * &k.el(2));
        assert_eq!(p.coeffs(), &[c0, c1, c2]);
    }

    #[test]
    fn square_roots_of_unity_count_matches_formula() {
        // #{u : u^2 = 1} in GF(q)[e]/(e^n) is q^floor(n/2).
        for (m, n) in [(1u32, 2usize), (1, 3), (2, 2), (2, 3), (1, 4)] {
            let k = FieldSpec::gf(m);
            let one = TruncatedElement::one(&k, n);
            let count = TruncatedElement::all(&k, n)
                .filter(|u| u.square() == one)
                .count() as u128;
            assert_eq!(count, (1u128 << m).pow((n / 2) as u32));
        }
    }
}
