//! Quadratic forms in 2M+2 variables, pencils, Pfaffian binary forms, the
//! singular locus of the induced fibration, and reduction to the canonical
//! normal form f = sum a_i x_i y_i, g = sum b_i x_i y_i + x_i^2 + y_i^2.
//!
//! Variable convention: x_i is variable i and y_i is variable M+1+i.
//!
//! Two projective lines appear and are easy to conflate. The Pfaffian form
//! P(s, t) = Pf(s f + t g) lives on the line of pencil members; the
//! fibration [f : g] maps into a second line, and the singular fibres sit
//! over the points [a_i : b_i] there. A member r f + u g is singular exactly
//! when [r : u] is a root of P, and the corresponding target point is the
//! swapped [u : r].

use crate::error::{Error, Result};
use crate::exactla::{AlternatingMatrix, Matrix};
use crate::gf2m::{extend_field, solve_quadratic, BinaryForm, Fe, FieldEmbedding, FieldSpec, ProjPoint};

/// Upper-triangular coefficient table of a quadratic form in n variables:
/// q(x) = sum over i <= j of c_ij x_i x_j.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    spec: FieldSpec,
    n: usize,
    /// Packed row-major upper triangle: index(i, j) for i <= j.
    coeffs: Vec<Fe>,
}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * n - i * (i + 1) / 2 + j
}

impl std::fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .monomials()
            .filter(|(_, _, c)| !c.is_zero())
            .map(|(i, j, c)| format!("{c:?}*v{i}*v{j}"))
            .collect();
        write!(f, "{}", if terms.is_empty() { "0".into() } else { terms.join(" + ") })
    }
}

impl QuadraticForm {
    pub fn zero(spec: &FieldSpec, n: usize) -> QuadraticForm {
        QuadraticForm { spec: spec.clone(), n, coeffs: vec![spec.zero(); n * (n + 1) / 2] }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Fe {
        assert!(i <= j && j < self.n, "coefficient index ({i},{j}) out of range");
        &self.coeffs[tri_index(self.n, i, j)]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: Fe) {
        assert!(i <= j && j < self.n, "coefficient index ({i},{j}) out of range");
        assert!(c.spec() == &self.spec);
        self.coeffs[tri_index(self.n, i, j)] = c;
    }

    /// Iterates (i, j, coefficient) over the upper triangle.
    pub fn monomials(&self) -> impl Iterator<Item = (usize, usize, &Fe)> + '_ {
        (0..self.n).flat_map(move |i| {
            (i..self.n).map(move |j| (i, j, &self.coeffs[tri_index(self.n, i, j)]))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Fe::is_zero)
    }

    pub fn eval(&self, x: &[Fe]) -> Fe {
        assert_eq!(x.len(), self.n);
        let mut acc = self.spec.zero();
        for (i, j, c) in self.monomials() {
            if !c.is_zero() {
                acc = &acc + &(&(c * &x[i]) * &x[j]);
            }
        }
        acc
    }

    pub fn add(&self, other: &QuadraticForm) -> QuadraticForm {
        assert_eq!(self.n, other.n);
        QuadraticForm {
            spec: self.spec.clone(),
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Fe) -> QuadraticForm {
        QuadraticForm {
            spec: self.spec.clone(),
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The polar alternating form A_q(x, y) = q(x+y) - q(x) - q(y):
    /// off-diagonal entries are the mixed coefficients, squares vanish.
    pub fn polar_form(&self) -> AlternatingMatrix {
        let mut m = Matrix::zero(&self.spec, self.n, self.n);
        for (i, j, c) in self.monomials() {
            if i != j && !c.is_zero() {
                m.set(i, j, c.clone());
                m.set(j, i, c.clone());
            }
        }
        AlternatingMatrix::new(m).expect("polar form is alternating by construction")
    }

    /// The bilinear value A_q(u, v) without forming the matrix.
    pub fn polar_eval(&self, u: &[Fe], v: &[Fe]) -> Fe {
        let sum: Vec<Fe> = u.iter().zip(v).map(|(a, b)| a + b).collect();
        &(&self.eval(&sum) + &self.eval(u)) + &self.eval(v)
    }

    /// The composite q(Sx) as a quadratic form; substitution is a right
    /// action: (q o S) o T = q o (S T).
    pub fn substitute(&self, s: &Matrix) -> QuadraticForm {
        assert_eq!(s.rows(), self.n, "substitution matrix must be {0}x{0}", self.n);
        assert_eq!(s.cols(), self.n);
        let mut out = QuadraticForm::zero(&self.spec, self.n);
        for (k, l, c) in self.monomials() {
            if c.is_zero() {
                continue;
            }
            for jx in 0..self.n {
                let skj = s.at(k, jx);
                if skj.is_zero() {
                    continue;
                }
                for jy in 0..self.n {
                    let slj = s.at(l, jy);
                    if slj.is_zero() {
                        continue;
                    }
                    let term = &(c * skj) * slj;
                    let (a, b) = if jx <= jy { (jx, jy) } else { (jy, jx) };
                    let idx = tri_index(self.n, a, b);
                    out.coeffs[idx] = &out.coeffs[idx] + &term;
                }
            }
        }
        out
    }

    /// Restriction data on the plane spanned by (u, v):
    /// q(x u + y v) = alpha x^2 + beta x y + gamma y^2.
    pub fn restrict_plane(&self, u: &[Fe], v: &[Fe]) -> (Fe, Fe, Fe) {
        (self.eval(u), self.polar_eval(u, v), self.eval(v))
    }

    pub fn embed(&self, emb: &FieldEmbedding) -> QuadraticForm {
        QuadraticForm {
            spec: emb.to_spec().clone(),
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| emb.embed(c)).collect(),
        }
    }
}

/// The span of two linearly independent quadratic forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pencil {
    f: QuadraticForm,
    g: QuadraticForm,
}

impl Pencil {
    pub fn new(f: QuadraticForm, g: QuadraticForm) -> Result<Pencil> {
        if f.spec() != g.spec() {
            return Err(Error::FieldMismatch(f.spec().name(), g.spec().name()));
        }
        if f.n() != g.n() {
            return Err(Error::Parse(format!(
                "pencil members disagree on variable count: {} vs {}",
                f.n(),
                g.n()
            )));
        }
        if f.n() % 2 != 0 || f.n() < 4 {
            return Err(Error::Parse(format!(
                "pencil needs an even variable count 2M+2 with M >= 1, got {}",
                f.n()
            )));
        }
        // Linear independence of the coefficient vectors.
        let rows = vec![f.coeffs.clone(), g.coeffs.clone()];
        let m = Matrix::from_rows(f.spec(), rows);
        if m.rank() != 2 {
            return Err(Error::Parse("pencil requires linearly independent forms".into()));
        }
        Ok(Pencil { f, g })
    }

    pub fn f(&self) -> &QuadraticForm {
        &self.f
    }

    pub fn g(&self) -> &QuadraticForm {
        &self.g
    }

    pub fn spec(&self) -> &FieldSpec {
        self.f.spec()
    }

    pub fn n(&self) -> usize {
        self.f.n()
    }

    /// M with n = 2M + 2.
    pub fn m_param(&self) -> usize {
        self.n() / 2 - 1
    }

    /// The member r f + u g.
    pub fn member(&self, r: &Fe, u: &Fe) -> QuadraticForm {
        self.f.scale(r).add(&self.g.scale(u))
    }

    /// Coordinates of q in the basis (f, g), if q lies in the span.
    pub fn coords_of(&self, q: &QuadraticForm) -> Option<(Fe, Fe)> {
        if q.n() != self.n() {
            return None;
        }
        let len = self.f.coeffs.len();
        for i in 0..len {
            for j in (i + 1)..len {
                let det = &(&self.f.coeffs[i] * &self.g.coeffs[j])
                    + &(&self.f.coeffs[j] * &self.g.coeffs[i]);
                if det.is_zero() {
                    continue;
                }
                let inv = det.inv().unwrap();
                let c1 = &(&(&q.coeffs[i] * &self.g.coeffs[j])
                    + &(&q.coeffs[j] * &self.g.coeffs[i]))
                    * &inv;
                let c2 = &(&(&self.f.coeffs[i] * &q.coeffs[j])
                    + &(&self.f.coeffs[j] * &q.coeffs[i]))
                    * &inv;
                let candidate = self.member(&c1, &c2);
                return if &candidate == q { Some((c1, c2)) } else { None };
            }
        }
        None
    }

    /// Applies a coordinate change to both members.
    pub fn substitute(&self, s: &Matrix) -> Result<Pencil> {
        Pencil::new(self.f.substitute(s), self.g.substitute(s))
    }

    /// Changes the pencil basis: (f', g')^T = B (f, g)^T.
    pub fn mix(&self, b: &Matrix) -> Result<Pencil> {
        assert_eq!((b.rows(), b.cols()), (2, 2));
        let f2 = self.member(b.at(0, 0), b.at(0, 1));
        let g2 = self.member(b.at(1, 0), b.at(1, 1));
        Pencil::new(f2, g2)
    }

    pub fn embed(&self, emb: &FieldEmbedding) -> Pencil {
        Pencil { f: self.f.embed(emb), g: self.g.embed(emb) }
    }

    /// The homogeneous Pfaffian form P(s, t) = Pf(s A_f + t A_g) of degree
    /// M+1, computed by interpolation; dehomogenizing at s = 1 gives
    /// Pf(f + t g). Coefficients always land in the base field even when
    /// the interpolation needs more sample points than the field offers, in
    /// which case it runs in an extension and maps back.
    pub fn pfaffian_form(&self) -> Result<BinaryForm> {
        let d = self.m_param() + 1;
        let spec = self.spec().clone();
        if spec.order() >= (d + 1) as u128 {
            let af = self.f.polar_form();
            let ag = self.g.polar_form();
            let samples: Vec<(Fe, Fe)> = spec
                .elements()
                .take(d + 1)
                .map(|t| {
                    let m = af.matrix().add(&ag.matrix().scale(&t));
                    let alt = AlternatingMatrix::new(m).expect("sum of alternating is alternating");
                    Ok::<_, Error>((t.clone(), alt.pfaffian()?))
                })
                .collect::<Result<_>>()?;
            let coeffs = lagrange_coefficients(&spec, &samples);
            debug_assert_eq!(coeffs.len(), d + 1);
            return Ok(BinaryForm::new(&spec, d, coeffs));
        }
        // Field too small for d+1 affine sample points: interpolate in an
        // extension and pull the coefficients back down.
        let mut e = 2u32;
        while (1u128 << (spec.m() * e)) < (d + 1) as u128 {
            e += 1;
        }
        let emb = extend_field(&spec, e)?;
        let big = self.embed(&emb);
        let form = big.pfaffian_form()?;
        let coeffs: Result<Vec<Fe>> = form
            .coeffs()
            .iter()
            .map(|c| {
                emb.lift(c).ok_or_else(|| {
                    Error::InternalVerification("Pfaffian coefficient escaped the base field".into())
                })
            })
            .collect();
        Ok(BinaryForm::new(&spec, d, coeffs?))
    }

    /// Singular members of the pencil with their kernel planes and the
    /// image points of the singular locus on the target line.
    ///
    /// Requires the Pfaffian form squarefree; extends the field when the
    /// form does not split and `allow_extend` permits.
    pub fn singular_members(&self, allow_extend: bool) -> Result<SingularMembers> {
        let mut cur = self.clone();
        let mut degree = 1u32;
        loop {
            let pf = cur.pfaffian_form()?;
            if !pf.is_squarefree() {
                return Err(Error::RepeatedPfaffianRoots);
            }
            let (roots, split) = pf.roots();
            if !split {
                let need = pf.splitting_degree();
                if !allow_extend {
                    return Err(Error::FieldTooSmall {
                        field: self.spec().name(),
                        degree: degree * need,
                    });
                }
                let emb = extend_field(cur.spec(), need)?;
                cur = cur.embed(&emb);
                degree *= need;
                continue;
            }
            let mut components = Vec::new();
            for (root, mult) in &roots {
                debug_assert_eq!(*mult, 1, "squarefree form has simple roots");
                // Root [r:u] of P marks the singular member r f + u g, whose
                // fibre sits over the swapped target point [u:r].
                let member = cur.member(root.s(), root.t());
                let plane = member.polar_form().kernel();
                if plane.len() != 2 {
                    return Err(Error::InternalVerification(format!(
                        "singular member has kernel dimension {}, expected 2",
                        plane.len()
                    )));
                }
                let c = member.eval(&plane[0]);
                let dd = member.eval(&plane[1]);
                debug_assert!(member.polar_eval(&plane[0], &plane[1]).is_zero());
                let vertex = if c.is_zero() && dd.is_zero() {
                    // The member vanishes on the whole plane: a non-smooth
                    // configuration, reported rather than rejected here.
                    None
                } else {
                    let dir: Vec<Fe> = plane[0]
                        .iter()
                        .zip(&plane[1])
                        .map(|(p0, p1)| &(&dd.sqrt() * p0) + &(&c.sqrt() * p1))
                        .collect();
                    Some(normalize_vector(dir))
                };
                components.push(SingularComponent {
                    point: root.swap(),
                    member,
                    plane: [plane[0].clone(), plane[1].clone()],
                    vertex,
                });
            }
            components.sort_by(|a, b| a.point.cmp(&b.point));
            return Ok(SingularMembers {
                field: cur.spec().clone(),
                extension_degree: degree,
                pencil: cur,
                components,
            });
        }
    }
}

fn normalize_vector(mut v: Vec<Fe>) -> Vec<Fe> {
    if let Some(first) = v.iter().find(|c| !c.is_zero()) {
        let inv = first.inv().unwrap();
        for c in v.iter_mut() {
            *c = &*c * &inv;
        }
    }
    v
}

/// Lagrange interpolation: coefficients (low to high) of the unique
/// polynomial of degree < samples.len() through the given points.
fn lagrange_coefficients(spec: &FieldSpec, samples: &[(Fe, Fe)]) -> Vec<Fe> {
    let n = samples.len();
    let mut coeffs = vec![spec.zero(); n];
    for (i, (xi, yi)) in samples.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        // numerator polynomial prod_{j != i} (x + x_j), denominator scalar
        let mut num = vec![spec.one()];
        let mut denom = spec.one();
        for (j, (xj, _)) in samples.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![spec.zero(); num.len() + 1];
            for (k, c) in num.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] + &(c * xj);
            }
            num = next;
            denom = &denom * &(xi + xj);
        }
        let scale = yi / &denom;
        for (k, c) in num.iter().enumerate() {
            coeffs[k] = &coeffs[k] + &(c * &scale);
        }
    }
    coeffs
}

/// One component of the singular locus: the target point, the singular
/// member, its kernel plane, and the doubled line supporting the component
/// (None when the member vanishes identically on the plane, the non-smooth
/// case).
#[derive(Clone, Debug)]
pub struct SingularComponent {
    pub point: ProjPoint,
    pub member: QuadraticForm,
    pub plane: [Vec<Fe>; 2],
    pub vertex: Option<Vec<Fe>>,
}

#[derive(Clone, Debug)]
pub struct SingularMembers {
    pub field: FieldSpec,
    pub extension_degree: u32,
    /// The pencil in the working field (embedded if extension was needed).
    pub pencil: Pencil,
    pub components: Vec<SingularComponent>,
}

/// Canonical pairs (a_i, b_i) with the coordinate change realizing
/// f = sum a_i x_i y_i, g = sum b_i x_i y_i + x_i^2 + y_i^2.
///
/// The stored representatives are pinned by the construction (squares in g
/// scaled to coefficient 1) and are the single source of truth for the
/// lifting computations; projective renormalization would change them.
#[derive(Clone)]
pub struct PencilNormalForm {
    /// The embedding actually used to reach the working field; identity
    /// when no extension was needed. Re-deriving a canonical embedding
    /// would not do: different root choices give different maps.
    embedding: FieldEmbedding,
    pairs: Vec<(Fe, Fe)>,
    /// Coordinate change: columns are the new basis vectors, so q |-> q o P
    /// rewrites a form in input coordinates into normal-form coordinates.
    p_matrix: Matrix,
    /// Pencil-basis change applied before P: (f', g')^T = B (f, g)^T.
    b_matrix: Matrix,
    normal_f: QuadraticForm,
    normal_g: QuadraticForm,
}

impl std::fmt::Debug for PencilNormalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PencilNormalForm {{ field: {}, pairs: {:?} }}",
            self.field().name(),
            self.pairs
        )
    }
}

impl PencilNormalForm {
    /// Builds the normal form directly from canonical pairs. Validates
    /// a_i != 0 and the pairwise independence condition, sorts pairs by bit
    /// encoding, and sets both coordinate changes to the identity.
    pub fn from_pairs(spec: &FieldSpec, pairs: Vec<(Fe, Fe)>) -> Result<PencilNormalForm> {
        if pairs.len() < 2 {
            return Err(Error::Parse("normal form needs at least 2 pairs (M >= 1)".into()));
        }
        let mut pairs = pairs;
        pairs.sort_by_key(|(a, b)| (a.bits(), b.bits()));
        for (a, _) in &pairs {
            if a.is_zero() {
                return Err(Error::Parse("normal-form pairs need a_i != 0".into()));
            }
        }
        for i in 0..pairs.len() {
            for j in (i + 1)..pairs.len() {
                let det = &(&pairs[i].0 * &pairs[j].1) + &(&pairs[j].0 * &pairs[i].1);
                if det.is_zero() {
                    return Err(Error::RepeatedPfaffianRoots);
                }
            }
        }
        let n = 2 * pairs.len();
        let (normal_f, normal_g) = normal_form_equations(spec, &pairs);
        Ok(PencilNormalForm {
            embedding: FieldEmbedding::identity(spec),
            pairs,
            p_matrix: Matrix::identity(spec, n),
            b_matrix: Matrix::identity(spec, 2),
            normal_f,
            normal_g,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        self.embedding.to_spec()
    }

    pub fn base_field(&self) -> &FieldSpec {
        self.embedding.from_spec()
    }

    pub fn extension_degree(&self) -> u32 {
        self.field().m() / self.base_field().m()
    }

    /// The embedding from the input field into the working field.
    pub fn embedding(&self) -> &FieldEmbedding {
        &self.embedding
    }

    pub fn m_param(&self) -> usize {
        self.pairs.len() - 1
    }

    pub fn n(&self) -> usize {
        2 * self.pairs.len()
    }

    pub fn pairs(&self) -> &[(Fe, Fe)] {
        &self.pairs
    }

    pub fn p_matrix(&self) -> &Matrix {
        &self.p_matrix
    }

    pub fn b_matrix(&self) -> &Matrix {
        &self.b_matrix
    }

    pub fn normal_f(&self) -> &QuadraticForm {
        &self.normal_f
    }

    pub fn normal_g(&self) -> &QuadraticForm {
        &self.normal_g
    }

    pub fn normal_pencil(&self) -> Pencil {
        Pencil::new(self.normal_f.clone(), self.normal_g.clone())
            .expect("normal form members are independent")
    }

    /// The pairs as points of the target projective line.
    pub fn points(&self) -> Vec<ProjPoint> {
        self.pairs
            .iter()
            .map(|(a, b)| ProjPoint::new(a.clone(), b.clone()))
            .collect()
    }

    /// Checks that applying B then P to `input` reproduces the stored
    /// normal form coefficient-exactly. `input` must live over the base
    /// field; it is pushed through the stored embedding when the normal
    /// form needed an extension.
    pub fn verify_against(&self, input: &Pencil) -> Result<()> {
        if input.spec() != self.base_field() {
            return Err(Error::FieldMismatch(
                input.spec().name(),
                self.base_field().name(),
            ));
        }
        let embedded = input.embed(&self.embedding);
        let mixed = embedded.mix(&self.b_matrix)?;
        let f2 = mixed.f().substitute(&self.p_matrix);
        let g2 = mixed.g().substitute(&self.p_matrix);
        if f2 != self.normal_f || g2 != self.normal_g {
            return Err(Error::InternalVerification(
                "(P, B) do not reproduce the normal form".into(),
            ));
        }
        Ok(())
    }

    /// Maps all stored data through a further field embedding (used when a
    /// lift only exists over an extension).
    pub fn embed(&self, emb: &FieldEmbedding) -> PencilNormalForm {
        PencilNormalForm {
            embedding: self.embedding.then(emb),
            pairs: self
                .pairs
                .iter()
                .map(|(a, b)| (emb.embed(a), emb.embed(b)))
                .collect(),
            p_matrix: self.p_matrix.embed(emb),
            b_matrix: self.b_matrix.embed(emb),
            normal_f: self.normal_f.embed(emb),
            normal_g: self.normal_g.embed(emb),
        }
    }
}

/// f = sum a_i x_i y_i and g = sum b_i x_i y_i + x_i^2 + y_i^2 with x_i at
/// index i and y_i at index M+1+i.
fn normal_form_equations(spec: &FieldSpec, pairs: &[(Fe, Fe)]) -> (QuadraticForm, QuadraticForm) {
    let mp1 = pairs.len();
    let n = 2 * mp1;
    let mut f = QuadraticForm::zero(spec, n);
    let mut g = QuadraticForm::zero(spec, n);
    for (i, (a, b)) in pairs.iter().enumerate() {
        f.set_coeff(i, mp1 + i, a.clone());
        g.set_coeff(i, mp1 + i, b.clone());
        g.set_coeff(i, i, spec.one());
        g.set_coeff(mp1 + i, mp1 + i, spec.one());
    }
    (f, g)
}

/// Reduces a pencil with squarefree Pfaffian to the canonical normal form.
///
/// Steps: shear the pencil basis if f itself is singular; find the singular
/// members and their kernel planes; pick an f-isotropic basis in each plane
/// (one quadratic per plane, degree-2 extension on an Artin-Schreier
/// obstruction); scale the g-squares to coefficient 1; check smoothness;
/// sort pairs by bit encoding and assemble the coordinate change.
pub fn normalize_pencil(input: &Pencil, allow_extend: bool) -> Result<PencilNormalForm> {
    let base_field = input.spec().clone();
    let mut chain = FieldEmbedding::identity(&base_field);
    let mut cur = input.clone();
    // The shear is chosen once, in the smallest field where it is needed,
    // and carried through subsequent extensions. Re-choosing it after an
    // extension would drag the plane data out of the embedded subfield and
    // the isotropic quadratics could obstruct again indefinitely.
    let mut shear: Option<Matrix> = None;
    loop {
        let degree = chain.to_spec().m() / base_field.m();
        match normalize_attempt(&cur, &chain, &mut shear) {
            Ok(nf) => {
                nf.verify_against(input)?;
                return Ok(nf);
            }
            Err(NormalizeFlow::NeedExtension(e)) => {
                if !allow_extend {
                    return Err(Error::FieldTooSmall {
                        field: base_field.name(),
                        degree: degree * e,
                    });
                }
                if (degree * e).saturating_mul(base_field.m()) > 48 {
                    return Err(Error::InternalVerification(
                        "normalization exceeded extension budget".into(),
                    ));
                }
                let emb = extend_field(cur.spec(), e)?;
                cur = cur.embed(&emb);
                shear = shear.map(|s| s.embed(&emb));
                chain = chain.then(&emb);
            }
            Err(NormalizeFlow::Fail(e)) => return Err(e),
        }
    }
}

enum NormalizeFlow {
    NeedExtension(u32),
    Fail(Error),
}

impl From<Error> for NormalizeFlow {
    fn from(e: Error) -> Self {
        NormalizeFlow::Fail(e)
    }
}

fn normalize_attempt(
    pencil: &Pencil,
    chain: &FieldEmbedding,
    shear: &mut Option<Matrix>,
) -> std::result::Result<PencilNormalForm, NormalizeFlow> {
    let spec = pencil.spec().clone();
    let pf = pencil.pfaffian_form()?;
    if !pf.is_squarefree() {
        return Err(Error::RepeatedPfaffianRoots.into());
    }
    // Step 1: make f nonsingular. [1:0] is a root of P exactly when
    // Pf(f) = 0; shear f <- f + lambda g with the smallest-encoding lambda
    // off the root locus.
    if shear.is_none() && pf.eval(&spec.one(), &spec.zero()).is_zero() {
        let lambda = spec.elements().find(|l| !pf.eval(&spec.one(), l).is_zero());
        let Some(lambda) = lambda else {
            // every member f + lambda g over this field is singular; the
            // form P has at most M+1 roots, so an extension always leaves
            // room eventually
            return Err(NormalizeFlow::NeedExtension(2));
        };
        let mut b = Matrix::identity(&spec, 2);
        b.set(0, 1, lambda);
        *shear = Some(b);
    }
    let b_matrix = shear.clone().unwrap_or_else(|| Matrix::identity(&spec, 2));
    let work = pencil.mix(&b_matrix)?;
    // Step 2: singular members and kernel planes, over this field only.
    let members = match work.singular_members(false) {
        Ok(m) => m,
        Err(Error::FieldTooSmall { .. }) => {
            let need = work.pfaffian_form()?.splitting_degree();
            return Err(NormalizeFlow::NeedExtension(need));
        }
        Err(e) => return Err(e.into()),
    };
    // Steps 3-5 per plane: f-isotropic basis, smoothness, square scaling.
    let mut assembled: Vec<((Fe, Fe), Vec<Fe>, Vec<Fe>)> = Vec::new();
    for (idx, comp) in members.components.iter().enumerate() {
        let u = &comp.plane[0];
        let v = &comp.plane[1];
        let (alpha, beta, gamma) = work.f().restrict_plane(u, v);
        if beta.is_zero() {
            // The polar form of f degenerates on the kernel plane; the
            // normal form cannot exist, which by the classification means
            // the intersection is singular here.
            return Err(Error::NotSmooth { index: idx }.into());
        }
        let (w1, w2): (Vec<Fe>, Vec<Fe>) = if alpha.is_zero() {
            // second isotropic direction of beta*xy + gamma*y^2
            let w2: Vec<Fe> = u
                .iter()
                .zip(v)
                .map(|(a, b)| &(&gamma * a) + &(&beta * b))
                .collect();
            (u.clone(), w2)
        } else if gamma.is_zero() {
            let w2: Vec<Fe> = u
                .iter()
                .zip(v)
                .map(|(a, b)| &(&beta * a) + &(&alpha * b))
                .collect();
            (v.clone(), w2)
        } else {
            // roots of gamma T^2 + beta T + alpha in T = y/x
            match solve_quadratic(&(&beta / &gamma), &(&alpha / &gamma)) {
                None => return Err(NormalizeFlow::NeedExtension(2)),
                Some((t1, t2)) => {
                    debug_assert!(t1 != t2);
                    let w1 = u.iter().zip(v).map(|(a, b)| a + &(&t1 * b)).collect();
                    let w2 = u.iter().zip(v).map(|(a, b)| a + &(&t2 * b)).collect();
                    (w1, w2)
                }
            }
        };
        debug_assert!(work.f().eval(&w1).is_zero());
        debug_assert!(work.f().eval(&w2).is_zero());
        let a_raw = work.f().polar_eval(&w1, &w2);
        let b_raw = work.g().polar_eval(&w1, &w2);
        let c_sq = work.g().eval(&w1);
        let d_sq = work.g().eval(&w2);
        if c_sq.is_zero() || d_sq.is_zero() {
            return Err(Error::NotSmooth { index: idx }.into());
        }
        let s1 = c_sq.sqrt().inv().unwrap();
        let s2 = d_sq.sqrt().inv().unwrap();
        let w1s: Vec<Fe> = w1.iter().map(|c| c * &s1).collect();
        let w2s: Vec<Fe> = w2.iter().map(|c| c * &s2).collect();
        let norm = &s1 * &s2;
        let pair = (&a_raw * &norm, &b_raw * &norm);
        assembled.push((pair, w1s, w2s));
    }
    // Step 6: canonical ordering by bit encoding of (a_i, b_i).
    assembled.sort_by_key(|((a, b), _, _)| (a.bits(), b.bits()));
    let n = work.n();
    let mp1 = assembled.len();
    if 2 * mp1 != n {
        return Err(Error::InternalVerification(format!(
            "{mp1} singular members for {n} variables"
        ))
        .into());
    }
    let mut p_matrix = Matrix::zero(&spec, n, n);
    for (i, (_, w1, w2)) in assembled.iter().enumerate() {
        for r in 0..n {
            p_matrix.set(r, i, w1[r].clone());
            p_matrix.set(r, mp1 + i, w2[r].clone());
        }
    }
    if !p_matrix.is_invertible() {
        return Err(
            Error::InternalVerification("kernel planes do not fill the space".into()).into(),
        );
    }
    let pairs: Vec<(Fe, Fe)> = assembled.iter().map(|(p, _, _)| p.clone()).collect();
    let (normal_f, normal_g) = normal_form_equations(&spec, &pairs);
    Ok(PencilNormalForm {
        embedding: chain.clone(),
        pairs,
        p_matrix,
        b_matrix,
        normal_f,
        normal_g,
    })
}

/// Singular locus of a normal form in its own coordinates: component i sits
/// in the plane (x_i, y_i), supported on the doubled line x_i = y_i, with
/// image point [a_i : b_i].
pub fn singular_locus(nf: &PencilNormalForm) -> SingularMembers {
    let spec = nf.field().clone();
    let n = nf.n();
    let mp1 = nf.pairs().len();
    let pencil = nf.normal_pencil();
    let mut components = Vec::new();
    for (a, b) in nf.pairs() {
        let member = pencil.member(b, a);
        let i = nf
            .pairs()
            .iter()
            .position(|(pa, pb)| pa == a && pb == b)
            .unwrap();
        let mut e_x = vec![spec.zero(); n];
        e_x[i] = spec.one();
        let mut e_y = vec![spec.zero(); n];
        e_y[mp1 + i] = spec.one();
        let vertex: Vec<Fe> = e_x.iter().zip(&e_y).map(|(p, q)| p + q).collect();
        components.push(SingularComponent {
            point: ProjPoint::new(a.clone(), b.clone()),
            member,
            plane: [e_x, e_y],
            vertex: Some(vertex),
        });
    }
    components.sort_by(|a, b| a.point.cmp(&b.point));
    SingularMembers {
        field: spec,
        extension_degree: nf.extension_degree(),
        pencil,
        components,
    }
}
