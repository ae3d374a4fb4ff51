//! JSON wire formats: pencils in, reports out. Field elements travel as
//! hex bitmask literals ("0x2b", bit j = coefficient of x^j) and fields as
//! spec strings "F2^m/0x<modulus>"; both encodings are bit-exact contracts.

use crate::autgroup::{ComponentGroupReport, LiftData, LiftVerdict, PGL2Elem};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::gf2m::{BinaryForm, Fe, FieldSpec, ProjPoint};
use crate::pencil::{Pencil, PencilNormalForm, QuadraticForm, SingularMembers};
use serde::{Deserialize, Serialize};

pub fn fe_hex(e: &Fe) -> String {
    format!("0x{:x}", e.bits())
}

pub fn parse_fe(spec: &FieldSpec, s: &str) -> Result<Fe> {
    let hex = s
        .strip_prefix("0x")
        .ok_or_else(|| Error::Parse(format!("element literal {s:?} must be 0x-hex")))?;
    let bits = u64::from_str_radix(hex, 16)
        .map_err(|_| Error::Parse(format!("bad element literal {s:?}")))?;
    spec.checked_el(bits)
}

// ---------------------------------------------------------------------------
// Pencil input
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffJson {
    pub i: usize,
    pub j: usize,
    pub c: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PencilJson {
    pub field: String,
    #[serde(rename = "M")]
    pub m: usize,
    pub f: Vec<CoeffJson>,
    pub g: Vec<CoeffJson>,
}

impl PencilJson {
    pub fn from_str(s: &str) -> Result<PencilJson> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("pencil JSON: {e}")))
    }

    /// Decodes into exact forms; `field_override` replaces the embedded
    /// field spec when present.
    pub fn decode(&self, field_override: Option<&str>) -> Result<Pencil> {
        let spec = FieldSpec::parse(field_override.unwrap_or(&self.field))?;
        let n = 2 * self.m + 2;
        let mut f = QuadraticForm::zero(&spec, n);
        let mut g = QuadraticForm::zero(&spec, n);
        for (name, src, dst) in [("f", &self.f, &mut f), ("g", &self.g, &mut g)] {
            for entry in src.iter() {
                if entry.i > entry.j {
                    return Err(Error::Parse(format!(
                        "{name} coefficient ({}, {}) violates i <= j",
                        entry.i, entry.j
                    )));
                }
                if entry.j >= n {
                    return Err(Error::Parse(format!(
                        "{name} coefficient index {} out of range for 2M+2 = {n} variables",
                        entry.j
                    )));
                }
                dst.set_coeff(entry.i, entry.j, parse_fe(&spec, &entry.c)?);
            }
        }
        Pencil::new(f, g)
    }

    pub fn encode(p: &Pencil) -> PencilJson {
        PencilJson {
            field: p.spec().name(),
            m: p.m_param(),
            f: form_coeffs(p.f()),
            g: form_coeffs(p.g()),
        }
    }
}

pub fn form_coeffs(q: &QuadraticForm) -> Vec<CoeffJson> {
    q.monomials()
        .filter(|(_, _, c)| !c.is_zero())
        .map(|(i, j, c)| CoeffJson { i, j, c: fe_hex(c) })
        .collect()
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| fe_hex(m.at(r, c))).collect())
        .collect()
}

pub fn point_pair(p: &ProjPoint) -> [String; 2] {
    [fe_hex(p.s()), fe_hex(p.t())]
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionJson {
    pub base_field: String,
    pub degree: u32,
    pub field: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootJson {
    pub point: [String; 2],
    pub multiplicity: usize,
}

/// Pfaffian report. `form_roots` are the vanishing points of the binary
/// form P(s,t) = Pf(s f + t g); `singular_points` are the corresponding
/// images of the singular fibres on the target line (the coordinate swap),
/// the points all later stages consume.
#[derive(Debug, Clone, Serialize)]
pub struct PfaffianReport {
    pub field: String,
    #[serde(rename = "M")]
    pub m: usize,
    /// Coefficient of s^(d-j) t^j at index j.
    pub coefficients: Vec<String>,
    pub squarefree: bool,
    pub split: bool,
    pub form_roots: Vec<RootJson>,
    pub singular_points: Vec<RootJson>,
}

pub fn pfaffian_report(p: &Pencil, form: &BinaryForm) -> PfaffianReport {
    let (roots, split) = form.roots();
    PfaffianReport {
        field: p.spec().name(),
        m: p.m_param(),
        coefficients: form.coeffs().iter().map(fe_hex).collect(),
        squarefree: if form.degree() >= 1 { form.is_squarefree() } else { true },
        split,
        form_roots: roots
            .iter()
            .map(|(pt, m)| RootJson { point: point_pair(pt), multiplicity: *m })
            .collect(),
        singular_points: roots
            .iter()
            .map(|(pt, m)| RootJson { point: point_pair(&pt.swap()), multiplicity: *m })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalFormReport {
    pub field: String,
    pub extension: ExtensionJson,
    #[serde(rename = "M")]
    pub m: usize,
    /// Canonical (a_i, b_i) in sorted order.
    pub pairs: Vec<[String; 2]>,
    /// Coordinate change (columns are the new basis vectors).
    #[serde(rename = "P")]
    pub p: Vec<Vec<String>>,
    /// Pencil-basis change applied before P.
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    pub normal_f: Vec<CoeffJson>,
    pub normal_g: Vec<CoeffJson>,
}

pub fn normal_form_report(nf: &PencilNormalForm) -> NormalFormReport {
    NormalFormReport {
        field: nf.base_field().name(),
        extension: ExtensionJson {
            base_field: nf.base_field().name(),
            degree: nf.extension_degree(),
            field: nf.field().name(),
        },
        m: nf.m_param(),
        pairs: nf
            .pairs()
            .iter()
            .map(|(a, b)| [fe_hex(a), fe_hex(b)])
            .collect(),
        p: matrix_rows(nf.p_matrix()),
        b: matrix_rows(nf.b_matrix()),
        normal_f: form_coeffs(nf.normal_f()),
        normal_g: form_coeffs(nf.normal_g()),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularComponentJson {
    pub point: [String; 2],
    pub member: Vec<CoeffJson>,
    pub plane: [Vec<String>; 2],
    /// Direction of the doubled line inside the plane; absent when the
    /// member vanishes on the whole plane (non-smooth configuration).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularReport {
    pub field: String,
    pub extension_degree: u32,
    pub components: Vec<SingularComponentJson>,
}

pub fn singular_report(sm: &SingularMembers) -> SingularReport {
    SingularReport {
        field: sm.field.name(),
        extension_degree: sm.extension_degree,
        components: sm
            .components
            .iter()
            .map(|c| SingularComponentJson {
                point: point_pair(&c.point),
                member: form_coeffs(&c.member),
                plane: [
                    c.plane[0].iter().map(fe_hex).collect(),
                    c.plane[1].iter().map(fe_hex).collect(),
                ],
                vertex: c.vertex.as_ref().map(|v| v.iter().map(fe_hex).collect()),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum VerdictJson {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail-condition-1")]
    FailCondition1 { index: usize, det_a: String, required: String },
    #[serde(rename = "fail-condition-2")]
    FailCondition2 { j: usize, i1: usize, i2: usize, v1: String, v2: String },
}

pub fn verdict_json(v: &LiftVerdict) -> VerdictJson {
    match v {
        LiftVerdict::Pass => VerdictJson::Pass,
        LiftVerdict::FailDeterminant { index, det_a, required } => VerdictJson::FailCondition1 {
            index: *index,
            det_a: fe_hex(det_a),
            required: fe_hex(required),
        },
        LiftVerdict::FailProportionality { j, i1, i2, v1, v2 } => VerdictJson::FailCondition2 {
            j: *j,
            i1: *i1,
            i2: *i2,
            v1: fe_hex(v1),
            v2: fe_hex(v2),
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftDataJson {
    pub tau: Vec<usize>,
    pub lambdas: Vec<String>,
    pub det_a: String,
}

pub fn lift_data_json(ld: &LiftData) -> LiftDataJson {
    LiftDataJson {
        tau: ld.tau.clone(),
        lambdas: ld.lambdas.iter().map(fe_hex).collect(),
        det_a: fe_hex(&ld.det_a),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftJson {
    pub matrix: Vec<Vec<String>>,
    pub extension_degree: u32,
    pub field: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilizerEntryJson {
    pub matrix: Vec<Vec<String>>,
    pub tau: Vec<usize>,
    pub lambdas: Vec<String>,
    pub det_a: String,
    pub verdict: VerdictJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lift: Option<LiftJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentGroupJson {
    pub order: u128,
    pub kernel_generators: Vec<Vec<Vec<String>>>,
    pub stabilizer: Vec<StabilizerEntryJson>,
}

pub fn component_group_json(report: &ComponentGroupReport) -> ComponentGroupJson {
    ComponentGroupJson {
        order: report.order,
        kernel_generators: report
            .kernel
            .iter()
            .map(|g| matrix_rows(g.matrix()))
            .collect(),
        stabilizer: report
            .stabilizer
            .iter()
            .map(|e| StabilizerEntryJson {
                matrix: matrix_rows(&e.elem.matrix()),
                tau: e.lift_data.tau.clone(),
                lambdas: e.lift_data.lambdas.iter().map(fe_hex).collect(),
                det_a: fe_hex(&e.lift_data.det_a),
                verdict: verdict_json(&e.verdict),
                lift: e.lift.as_ref().map(|l| LiftJson {
                    matrix: matrix_rows(l.rep.matrix()),
                    extension_degree: l.extension_degree,
                    field: l.nf.field().name(),
                }),
            })
            .collect(),
    }
}

/// Parses "0x1,0x0;0x0,0x2" into a PGL2 element over the given field.
pub fn parse_pgl2(spec: &FieldSpec, s: &str) -> Result<PGL2Elem> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 2 {
        return Err(Error::Parse("PGL2 literal needs two ;-separated rows".into()));
    }
    let mut entries = Vec::with_capacity(4);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        if cols.len() != 2 {
            return Err(Error::Parse("PGL2 row needs two ,-separated entries".into()));
        }
        for c in cols {
            entries.push(parse_fe(spec, c.trim())?);
        }
    }
    PGL2Elem::from_entries(&entries[0], &entries[1], &entries[2], &entries[3])
        .map_err(|e| Error::Parse(format!("bad PGL2 literal: {e}")))
}
