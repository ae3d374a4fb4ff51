//! Command-line front end: parse field/pencil JSON, dispatch computations,
//! and emit machine-readable reports. Output is deterministic given
//! (input, config, seed): byte-identical across repeated runs.

use crate::autgroup::{
    aut0_count_truncated, component_group, generate_group, lift_check, lift_scalars,
    mu2_point_count, structured_oracle, tangent_space, AutRep,
};
use crate::error::{Error, Result};
use crate::io::{
    self, component_group_json, lift_data_json, normal_form_report, pfaffian_report,
    singular_report, verdict_json, PencilJson,
};
use crate::pencil::{normalize_pencil, Pencil};
use crate::selfcheck;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "qpencil",
    about = "Exact pencils of quadrics over GF(2^m): Pfaffians, normal forms, singular loci, automorphism groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct JobConfig {
    /// Path to a pencil JSON file ("-" for stdin).
    #[arg(short, long)]
    pub input: Option<String>,
    /// Inline pencil JSON (alternative to --input).
    #[arg(long)]
    pub json: Option<String>,
    /// Field spec override, e.g. "F2^3/0xb"; replaces the field named in
    /// the pencil JSON.
    #[arg(long)]
    pub field: Option<String>,
    /// Permit automatic field extensions where a computation needs them.
    #[arg(long)]
    pub allow_extend: bool,
    /// Candidate budget for enumerations.
    #[arg(long, default_value_t = 1u128 << 34)]
    pub budget: u128,
    /// RNG seed for sampling commands; recorded in the output.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub json_out: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pfaffian binary form, its roots, and the singular image points.
    Pfaffian(JobConfig),
    /// Canonical normal form: pairs (a_i, b_i) plus the (P, B) changes.
    Normalize(JobConfig),
    /// Singular members, kernel planes, and the doubled lines.
    Singular(JobConfig),
    /// Tangent space, optional truncated point counts, and the component
    /// group with the per-element lift verdicts.
    Aut {
        #[command(flatten)]
        cfg: JobConfig,
        /// Also count identity-component points over GF(q)[e]/(e^n) for
        /// this truncation order.
        #[arg(long)]
        truncated: Option<usize>,
    },
    /// Lifting criterion for one PGL2 element against the normal form.
    Liftcheck {
        #[command(flatten)]
        cfg: JobConfig,
        /// 2x2 matrix literal "0x1,0x0;0x0,0x2" over the pencil's field.
        #[arg(long)]
        pgl2: String,
    },
    /// Exhaustive structured enumeration, diffed against the assembled
    /// component group.
    Oracle {
        #[command(flatten)]
        cfg: JobConfig,
        /// Include the full automorphism list in the report.
        #[arg(long)]
        with_elements: bool,
    },
    /// Run the desk-scale invariant suite.
    Selfcheck {
        #[command(flatten)]
        cfg: JobConfig,
        /// Corrupt the field table first to demonstrate fault detection.
        #[arg(long)]
        inject_fault: bool,
    },
}

fn load_pencil(cfg: &JobConfig) -> Result<Pencil> {
    let raw = match (&cfg.input, &cfg.json) {
        (Some(path), None) => {
            if path == "-" {
                let mut s = String::new();
                use std::io::Read;
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
                s
            } else {
                std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("reading {path}: {e}")))?
            }
        }
        (None, Some(inline)) => inline.clone(),
        (None, None) => return Err(Error::Parse("provide --input FILE or --json STRING".into())),
        (Some(_), Some(_)) => {
            return Err(Error::Parse("--input and --json are mutually exclusive".into()))
        }
    };
    PencilJson::from_str(&raw)?.decode(cfg.field.as_deref())
}

fn emit<T: Serialize>(cfg: &JobConfig, report: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(report)
        .map_err(|e| Error::InternalVerification(format!("serialization: {e}")))?;
    match &cfg.json_out {
        Some(path) => std::fs::write(path, text.as_bytes())
            .map_err(|e| Error::Parse(format!("writing {path}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Pfaffian(cfg) => {
            let pencil = load_pencil(&cfg)?;
            let form = pencil.pfaffian_form()?;
            emit(&cfg, &pfaffian_report(&pencil, &form))
        }
        Command::Normalize(cfg) => {
            let pencil = load_pencil(&cfg)?;
            let nf = normalize_pencil(&pencil, cfg.allow_extend)?;
            nf.verify_against(&pencil)?;
            emit(&cfg, &normal_form_report(&nf))
        }
        Command::Singular(cfg) => {
            let pencil = load_pencil(&cfg)?;
            let members = pencil.singular_members(cfg.allow_extend)?;
            emit(&cfg, &singular_report(&members))
        }
        Command::Aut { cfg, truncated } => {
            let pencil = load_pencil(&cfg)?;
            let nf = normalize_pencil(&pencil, cfg.allow_extend)?;
            let ts = tangent_space(&nf);
            let report = component_group(&nf)?;
            let truncated_json = match truncated {
                None => None,
                Some(order) => {
                    let count = aut0_count_truncated(&nf, order, cfg.budget)?;
                    let target = mu2_point_count(nf.field(), order, nf.m_param() as u32);
                    Some(json!({
                        "order": order,
                        "count": count,
                        "mu2_target": target.to_string(),
                        "agree": count as u128 == target,
                    }))
                }
            };
            let out = json!({
                "field": nf.base_field().name(),
                "extension": {
                    "base_field": nf.base_field().name(),
                    "degree": nf.extension_degree(),
                    "field": nf.field().name(),
                },
                "M": nf.m_param(),
                "pairs": nf.pairs().iter()
                    .map(|(a, b)| [io::fe_hex(a), io::fe_hex(b)])
                    .collect::<Vec<_>>(),
                "tangent": {
                    "lifting_group_dimension": ts.dim(),
                    "aut_dimension": ts.dim().saturating_sub(1),
                    "pair_scalar_blocks": ts.all_pair_scalar_blocks(nf.pairs().len()),
                    "gamma_zero": ts.all_gamma_zero(),
                },
                "truncated": truncated_json,
                "component_group": component_group_json(&report),
            });
            emit(&cfg, &out)
        }
        Command::Liftcheck { cfg, pgl2 } => {
            let pencil = load_pencil(&cfg)?;
            let nf = normalize_pencil(&pencil, cfg.allow_extend)?;
            let elem = io::parse_pgl2(nf.field(), &pgl2)?;
            let ld = lift_scalars(&elem, &nf)?;
            let verdict = lift_check(&ld, &nf);
            let out = json!({
                "field": nf.field().name(),
                "pairs": nf.pairs().iter()
                    .map(|(a, b)| [io::fe_hex(a), io::fe_hex(b)])
                    .collect::<Vec<_>>(),
                "matrix": io::matrix_rows(&elem.matrix()),
                "lift_data": lift_data_json(&ld),
                "verdict": verdict_json(&verdict),
            });
            emit(&cfg, &out)
        }
        Command::Oracle { cfg, with_elements } => {
            let pencil = load_pencil(&cfg)?;
            let nf = normalize_pencil(&pencil, cfg.allow_extend)?;
            let oracle = structured_oracle(&nf, cfg.budget)?;
            let report = component_group(&nf)?;
            let mut gens: Vec<AutRep> = report.kernel.clone();
            gens.extend(report.rational_lifts().into_iter().cloned());
            let generated = generate_group(&nf, &gens, 1 << 20)?;
            let oracle_keys: std::collections::BTreeSet<Vec<u64>> =
                oracle.iter().map(AutRep::key).collect();
            let generated_keys: std::collections::BTreeSet<Vec<u64>> =
                generated.iter().map(AutRep::key).collect();
            let agree = oracle_keys == generated_keys;
            let out = json!({
                "field": nf.field().name(),
                "M": nf.m_param(),
                "oracle_count": oracle.len(),
                "component_group_order": report.order.to_string(),
                "rational_subgroup_order": generated.len(),
                "agree": agree,
                "elements": if with_elements {
                    Some(oracle.iter().map(|r| io::matrix_rows(r.matrix())).collect::<Vec<_>>())
                } else {
                    None
                },
            });
            if !agree {
                // disagreement between the oracle and the assembled group
                // is an implementation defect, never a data condition
                emit(&cfg, &out)?;
                return Err(Error::InternalVerification(
                    "structured oracle disagrees with the assembled component group".into(),
                ));
            }
            emit(&cfg, &out)
        }
        Command::Selfcheck { cfg, inject_fault } => {
            let report = selfcheck::run(cfg.seed, inject_fault);
            for c in &report.checks {
                eprintln!("{} {} ({})", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            emit(&cfg, &report)?;
            if report.passed {
                Ok(())
            } else {
                Err(Error::InternalVerification("selfcheck failed".into()))
            }
        }
    }
}
