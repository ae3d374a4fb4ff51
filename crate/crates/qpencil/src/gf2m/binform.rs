//! Homogeneous binary forms P(s, t) over GF(2^m) and points of the
//! projective line.

use super::poly::UniPoly;
use super::{Fe, FieldSpec};

/// A point [s : t] of P^1, stored with the first nonzero coordinate scaled
/// to 1. This normalization is for display and dedup; lifting computations
/// consume canonical normal-form representatives instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    s: Fe,
    t: Fe,
}

impl std::fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{:?}:{:?}]", self.s, self.t)
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProjPoint {
    /// Bit-encoding order of the normalized (s, t) pair.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.s.bits(), self.t.bits()).cmp(&(other.s.bits(), other.t.bits()))
    }
}

impl ProjPoint {
    /// Normalizes so the first nonzero coordinate is 1; panics on (0, 0).
    pub fn new(s: Fe, t: Fe) -> ProjPoint {
        assert!(!(s.is_zero() && t.is_zero()), "[0:0] is not a projective point");
        if !s.is_zero() {
            let inv = s.inv().unwrap();
            ProjPoint { t: &t * &inv, s: s.spec().one() }
        } else {
            ProjPoint { s, t: t.spec().one() }
        }
    }

    pub fn s(&self) -> &Fe {
        &self.s
    }

    pub fn t(&self) -> &Fe {
        &self.t
    }

    pub fn spec(&self) -> &FieldSpec {
        self.s.spec()
    }

    /// [t : s]; relates pencil-member coordinates to fibration-target ones.
    pub fn swap(&self) -> ProjPoint {
        ProjPoint::new(self.t.clone(), self.s.clone())
    }

    /// Image under an invertible 2x2 matrix given by rows (a b; c d).
    pub fn apply(&self, a: &Fe, b: &Fe, c: &Fe, d: &Fe) -> ProjPoint {
        ProjPoint::new(&(a * &self.s) + &(b * &self.t), &(c * &self.s) + &(d * &self.t))
    }

    /// All q + 1 points of P^1 over the field, in normalized bit order.
    pub fn all(spec: &FieldSpec) -> Vec<ProjPoint> {
        let mut pts = vec![ProjPoint::new(spec.zero(), spec.one())];
        for t in spec.elements() {
            pts.push(ProjPoint::new(spec.one(), t));
        }
        pts.sort();
        pts
    }
}

/// Homogeneous binary form of degree d: coeffs[j] multiplies s^(d-j) t^j.
/// Nonzero by invariant; equality of forms is up to a global scalar.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    spec: FieldSpec,
    degree: usize,
    coeffs: Vec<Fe>,
}

impl std::fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d = self.degree;
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("{c:?}*s^{}t^{}", d - j, j))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl BinaryForm {
    pub fn new(spec: &FieldSpec, degree: usize, coeffs: Vec<Fe>) -> BinaryForm {
        assert_eq!(coeffs.len(), degree + 1, "binary form needs degree+1 coefficients");
        assert!(coeffs.iter().any(|c| !c.is_zero()), "binary form must be nonzero");
        BinaryForm { spec: spec.clone(), degree, coeffs }
    }

    /// a*s + b*t.
    pub fn linear(a: Fe, b: Fe) -> BinaryForm {
        let spec = a.spec().clone();
        BinaryForm::new(&spec, 1, vec![a, b])
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn eval(&self, s: &Fe, t: &Fe) -> Fe {
        let mut acc = self.spec.zero();
        let mut spow = vec![self.spec.one()];
        let mut tpow = vec![self.spec.one()];
        for _ in 0..self.degree {
            spow.push(spow.last().unwrap() * s);
            tpow.push(tpow.last().unwrap() * t);
        }
        for (j, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &(&(c * &spow[self.degree - j]) * &tpow[j]);
        }
        acc
    }

    pub fn eval_point(&self, p: &ProjPoint) -> Fe {
        self.eval(p.s(), p.t())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let d = self.degree + other.degree;
        let mut coeffs = vec![self.spec.zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        BinaryForm::new(&self.spec, d, coeffs)
    }

    pub fn scale(&self, c: &Fe) -> BinaryForm {
        assert!(!c.is_zero());
        BinaryForm::new(&self.spec, self.degree, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Equality up to a global nonzero scalar.
    pub fn eq_up_to_scalar(&self, other: &BinaryForm) -> bool {
        if self.degree != other.degree || self.spec != other.spec {
            return false;
        }
        let i = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if other.coeffs[i].is_zero() {
            return false;
        }
        let ratio = &other.coeffs[i] / &self.coeffs[i];
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| &(a * &ratio) == b)
    }

    /// Formal partial in s. In characteristic 2 only terms with odd s-degree
    /// survive. Returned as a plain coefficient vector of degree d-1.
    fn partial_s(&self) -> Vec<Fe> {
        let d = self.degree;
        (0..d)
            .map(|j| {
                // coefficient of s^(d-1-j) t^j is (d-j) * coeffs[j]
                if (d - j) % 2 == 1 {
                    self.coeffs[j].clone()
                } else {
                    self.spec.zero()
                }
            })
            .collect()
    }

    fn partial_t(&self) -> Vec<Fe> {
        let d = self.degree;
        (0..d)
            .map(|j| {
                // coefficient of s^(d-1-j) t^j is (j+1) * coeffs[j+1]
                if (j + 1) % 2 == 1 {
                    self.coeffs[j + 1].clone()
                } else {
                    self.spec.zero()
                }
            })
            .collect()
    }

    /// True iff the form has no repeated root over the algebraic closure.
    ///
    /// If both formal partials vanish identically the form is a square
    /// (characteristic 2, perfect field); otherwise squarefree is equivalent
    /// to gcd(P, dP/ds, dP/dt) being constant.
    pub fn is_squarefree(&self) -> bool {
        assert!(self.degree >= 1, "squarefree check needs degree >= 1");
        let ps = self.partial_s();
        let pt = self.partial_t();
        let ps_zero = ps.iter().all(Fe::is_zero);
        let pt_zero = pt.iter().all(Fe::is_zero);
        if ps_zero && pt_zero {
            return false;
        }
        let g = gcd_coeff_vectors(&self.spec, &[self.coeffs.clone(), ps, pt]);
        g.0 == 0 && g.1.degree() == Some(0)
    }

    /// Roots on P^1 over the base field with multiplicities, plus a flag that
    /// is true iff the multiplicities sum to the degree (the form splits).
    /// Points come normalized and sorted by bit encoding.
    pub fn roots(&self) -> (Vec<(ProjPoint, usize)>, bool) {
        let d = self.degree;
        let jmin = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let jmax = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        let mut out = Vec::new();
        let mut total = 0usize;
        // t^jmin divides P: root [1:0] with multiplicity jmin.
        if jmin > 0 {
            out.push((ProjPoint::new(self.spec.one(), self.spec.zero()), jmin));
            total += jmin;
        }
        // s^(d-jmax) divides P: root [0:1].
        if jmax < d {
            out.push((ProjPoint::new(self.spec.zero(), self.spec.one()), d - jmax));
            total += d - jmax;
        }
        // Middle part dehomogenized at s = 1, with the t-power stripped.
        let mid: Vec<Fe> = self.coeffs[jmin..=jmax].to_vec();
        let p = UniPoly::new(&self.spec, mid);
        if p.degree().unwrap_or(0) >= 1 {
            for (r, mult) in p.roots() {
                debug_assert!(!r.is_zero(), "t-power already stripped");
                out.push((ProjPoint::new(self.spec.one(), r), mult));
                total += mult;
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        (out, total == d)
    }

    /// Smallest extension degree over which a squarefree form splits
    /// completely (1 when it already splits over the base field).
    pub fn splitting_degree(&self) -> u32 {
        let jmin = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let jmax = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        let mid: Vec<Fe> = self.coeffs[jmin..=jmax].to_vec();
        let p = UniPoly::new(&self.spec, mid);
        if p.degree().unwrap_or(0) == 0 {
            return 1;
        }
        let mut lcm = 1u32;
        for (d, _) in p.distinct_degree_split() {
            let d = d as u32;
            lcm = lcm / gcd_u32(lcm, d) * d;
        }
        lcm
    }

    /// Maps coefficients through a field embedding.
    pub fn embed(&self, emb: &super::FieldEmbedding) -> BinaryForm {
        BinaryForm::new(
            emb.to_spec(),
            self.degree,
            self.coeffs.iter().map(|c| emb.embed(c)).collect(),
        )
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// gcd of binary forms given as coefficient vectors (possibly zero), as a
/// pair (common power of s, univariate gcd of the dehomogenized parts).
fn gcd_coeff_vectors(spec: &FieldSpec, forms: &[Vec<Fe>]) -> (usize, UniPoly) {
    let mut s_power = usize::MAX;
    let mut uni = UniPoly::zero(spec);
    for coeffs in forms {
        if coeffs.iter().all(Fe::is_zero) {
            continue;
        }
        let d = coeffs.len() - 1;
        let jmax = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        s_power = s_power.min(d - jmax);
        let p = UniPoly::new(spec, coeffs[..=jmax].to_vec());
        uni = if uni.is_zero() { p } else { uni.gcd(&p) };
    }
    (if s_power == usize::MAX { 0 } else { s_power }, uni)
}

#[cfg(test)]
mod tests {
    use super::super::extend_field;
    use super::*;

    #[test]
    fn product_st_has_both_coordinate_roots_and_splits() {
        let k = FieldSpec::gf(2);
        // s*t: coefficients of s^2, st, t^2 are 0, 1, 0
        let p = BinaryForm::new(&k, 2, vec![k.zero(), k.one(), k.zero()]);
        let (roots, split) = p.roots();
        assert!(split);
        let pts: Vec<ProjPoint> = roots.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(
            pts,
            vec![
                ProjPoint::new(k.zero(), k.one()),
                ProjPoint::new(k.one(), k.zero())
            ]
        );
    }

    #[test]
    fn irreducible_quadratic_form_does_not_split_over_gf4() {
        let k = FieldSpec::gf(2);
        // s^2 + st + a t^2: dehomogenized t^2 ... scan all 5 points of P^1
        let p = BinaryForm::new(&k, 2, vec![k.one(), k.one(), k.el(0x2)]);
        let by_scan: Vec<ProjPoint> = ProjPoint::all(&k)
            .into_iter()
            .filter(|pt| p.eval_point(pt).is_zero())
            .collect();
        assert!(by_scan.is_empty());
        let (roots, split) = p.roots();
        assert!(roots.is_empty());
        assert!(!split);
        assert_eq!(p.splitting_degree(), 2);
    }

    #[test]
    fn squarefree_check_on_spec_triples() {
        let k = FieldSpec::gf(2);
        let s = BinaryForm::linear(k.one(), k.zero());
        let t = BinaryForm::linear(k.zero(), k.one());
        let s_plus_t = BinaryForm::linear(k.one(), k.one());
        assert!(s.mul(&t).mul(&s_plus_t).is_squarefree());
        assert!(!s.mul(&s).mul(&t).is_squarefree());
        // (s^2 + st + a t^2) * t is squarefree even though the quadratic
        // factor is irreducible over GF(4); check splits in GF(16).
        let quad = BinaryForm::new(&k, 2, vec![k.one(), k.one(), k.el(0x2)]);
        let p = quad.mul(&t);
        assert!(p.is_squarefree());
        let emb = extend_field(&k, 2).unwrap();
        let (roots16, split16) = p.embed(&emb).roots();
        assert!(split16);
        assert!(roots16.iter().all(|(_, m)| *m == 1));
        assert_eq!(roots16.len(), 3);
    }

    #[test]
    fn root_product_divides_the_form() {
        let k = FieldSpec::gf(3);
        // build (a s + b t) factors and check recovery up to scalar
        let factors = [
            (k.one(), k.zero()),
            (k.one(), k.one()),
            (k.el(0x3), k.one()),
        ];
        let mut p = BinaryForm::linear(factors[0].0.clone(), factors[0].1.clone());
        for (a, b) in &factors[1..] {
            p = p.mul(&BinaryForm::linear(a.clone(), b.clone()));
        }
        let (roots, split) = p.roots();
        assert!(split);
        // product over roots of (t_root s - s_root t)^mult equals P up to scalar
        let mut prod: Option<BinaryForm> = None;
        for (pt, mult) in &roots {
            for _ in 0..*mult {
                let lin = BinaryForm::linear(pt.t().clone(), pt.s().clone());
                prod = Some(match prod {
                    None => lin,
                    Some(q) => q.mul(&lin),
                });
            }
        }
        assert!(prod.unwrap().eq_up_to_scalar(&p));
    }

    #[test]
    fn splitting_degree_of_mixed_factors() {
        let k = FieldSpec::gf(2);
        // irreducible quadratic * irreducible cubic -> lcm(2,3) = 6
        let quad = BinaryForm::new(&k, 2, vec![k.one(), k.one(), k.el(0x2)]);
        // t^3 + t + 1 over GF(4): check irreducible over GF(4)? x^3+x+1 has
        // roots in GF(8), none in GF(4); as GF(4)[t] it stays irreducible
        // only if 3 is coprime to 2 — it is, so degrees stay 3.
        let cubic = BinaryForm::new(&k, 3, vec![k.one(), k.one(), k.zero(), k.one()]);
        let p = quad.mul(&cubic);
        assert!(p.is_squarefree());
        assert_eq!(p.splitting_degree(), 6);
    }
}
