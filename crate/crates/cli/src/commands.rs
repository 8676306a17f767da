//! Thin wrappers over the library, one per subcommand.

use qkm::algebra::{Coeff, Dual, ExactScalar, Series};
use qkm::enumeration::{appendix_a_identities, enumerate_vacuum, quadrangulation_counts, CountKind};
use qkm::freenergy::{bipartite_f1, creation_d1_check, f1, f1_creation_check, tau_d1};
use qkm::insertion::identities::{lemma_checks, lemma_checks_with, sample_points, Setting};
use qkm::insertion::{omega02_diag, omega03_diag};
use qkm::precision::at_order;
use qkm::report::CheckResult;
use qkm::spectral::{solve_deformation, solve_deformation_seeded, QuotientBackend, SpectralInput};
use qkm::table::{CoeffTable, SignConvention};
use qkm::trengine::{loop_equation_check, omega11_closed, symmetry_checks, tr_omega, Convention, Part};
use qkm::verify::{criterion, CRITERIA};
use qkm::QkmError;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::output::Output;

type E = ExactScalar;

#[derive(Debug)]
pub enum CliError {
    /// Bad configuration or arguments; exit code 2.
    Input(String),
    /// The computation itself failed; exit code 1.
    Compute(String),
}

impl From<QkmError> for CliError {
    fn from(e: QkmError) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Compute(e.to_string())
        }
    }
}

type Res<T> = Result<T, CliError>;

fn to_json<T: serde::Serialize>(x: &T) -> Res<Value> {
    serde_json::to_value(x).map_err(|e| CliError::Compute(e.to_string()))
}

/// One-based eigenvalue index to zero-based.
fn index(input: &SpectralInput, b: usize) -> Res<usize> {
    if b == 0 || b > input.d() {
        return Err(CliError::Input(format!("eigenvalue index {b} not in 1..={}", input.d())));
    }
    Ok(b - 1)
}

pub fn deform(cfg: &RunConfig, order: i64) -> Res<Output> {
    let def = solve_deformation(&cfg.input, order + 1).map_err(QkmError::from)?;
    let mut tables = Vec::new();
    for k in 0..def.d() {
        let tab = |name: String, s| {
            CoeffTable::from_series(&name, s, 0, order + 1, SignConvention::Lambda).map_err(QkmError::from)
        };
        tables.push(tab(format!("eps_{}", k + 1), &def.eps[k])?);
        tables.push(tab(format!("rho_{}", k + 1), &def.rho[k])?);
    }
    Ok(Output {
        json: json!({ "tables": to_json(&tables)? }),
        tables,
        ..Output::default()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OmegaConvention {
    /// Ordinary topological recursion from the ramification points.
    Pure,
    /// The full correlator.
    Full,
    /// The part with poles at the ramification points created by the blob.
    Blob,
    /// Blobbed recursion, polar part only.
    Polar,
}

fn diagonal_table(input: &SpectralInput, b: usize, n: usize, order: i64) -> Res<CoeffTable> {
    let s = at_order(order + 1, |work| {
        let def = solve_deformation(input, work)?;
        let x = &def.eps[b];
        Ok(if n == 2 {
            omega02_diag(&def.curve(), x)?
        } else {
            omega03_diag(&QuotientBackend::new(&def)?, x)?
        })
    })?;
    let name = format!("Omega^(0)_{n}(eps_{})", b + 1);
    Ok(CoeffTable::from_series(&name, &s, 0, order + 1, SignConvention::MinusLambda).map_err(QkmError::from)?)
}

pub fn omega(cfg: &RunConfig, g: u32, n: usize, conv: OmegaConvention, b: usize, order: i64) -> Res<Output> {
    let input = &cfg.input;
    let b = index(input, b)?;
    let unsupported = || {
        CliError::Input(format!(
            "Omega_({g},{n}) is not available with convention {conv:?}"
        ))
    };
    let (table, json) = match conv {
        OmegaConvention::Pure | OmegaConvention::Polar => {
            let c = if conv == OmegaConvention::Pure {
                Convention::Pure
            } else {
                Convention::BlobbedPolar
            };
            let r = tr_omega(input, g, n, c, order)?;
            let j = to_json(&r)?;
            (r.table, j)
        }
        OmegaConvention::Full => match (g, n) {
            (1, 1) => {
                let t = omega11_closed(input, b, Part::Total, order)?;
                let j = to_json(&t)?;
                (t, j)
            }
            (0, 2) | (0, 3) => {
                let t = diagonal_table(input, b, n, order)?;
                let j = to_json(&t)?;
                (t, j)
            }
            _ => return Err(unsupported()),
        },
        OmegaConvention::Blob => {
            if (g, n) != (1, 1) {
                return Err(unsupported());
            }
            let t = omega11_closed(input, b, Part::Blob, order)?;
            let j = to_json(&t)?;
            (t, j)
        }
    };
    Ok(Output {
        json,
        tables: vec![table],
        ..Output::default()
    })
}

const PRINTED_R_NEQ: &str = "creation_f1_printed_r_neq";

/// Creation checks for every eigenvalue; the printed `R_≠` variant is
/// returned separately.
fn creation(input: &SpectralInput, order: i64) -> Res<(Vec<CheckResult>, Vec<CheckResult>)> {
    let (mut exact, mut printed) = (Vec::new(), Vec::new());
    for b in 0..input.d() {
        for c in f1_creation_check(input, b, order)? {
            if c.check == PRINTED_R_NEQ {
                printed.push(c);
            } else {
                exact.push(c);
            }
        }
    }
    Ok((exact, printed))
}

pub fn free_energy(cfg: &RunConfig, order: i64, with_tau: bool, bipartite: bool) -> Res<Output> {
    let input = &cfg.input;
    let f = f1(input, order)?;
    let mut tables = vec![
        f.f1.clone(),
        f.ln_r_prime_zero.clone(),
        f.ln_prod_r_prime_minus_beta.clone(),
        f.r_neq.clone(),
    ];
    let (mut gating, mut reported) = creation(input, order.min(3))?;
    if input.d() == 1 && input.e()[0] == E::ratio(1, 2) {
        gating.push(creation_d1_check(input, order)?);
    }
    let mut json = json!({ "free_energy": to_json(&f)? });
    if with_tau {
        let t = tau_d1(input, order)?;
        gating.push(t.quarter_difference.clone());
        gating.push(t.ode.clone());
        gating.push(CheckResult::boolean("tau_real_even", 1, t.real_even, None));
        reported.push(t.ode_quarter_log.clone());
        tables.push(t.ln_tau_series.clone());
        json["tau"] = to_json(&t)?;
    }
    if bipartite {
        let r = bipartite_f1(input, order)?;
        tables.extend([r.direct.clone(), r.closed.clone(), r.difference.clone(), r.difference_minus_lambda.clone()]);
        json["bipartite"] = to_json(&r)?;
    }
    json["checks"] = to_json(&gating)?;
    json["reported"] = to_json(&reported)?;
    let mut checks = gating.clone();
    checks.extend(reported);
    Ok(Output {
        json,
        tables,
        checks,
        gating,
        ..Output::default()
    })
}

pub fn enumerate(cfg: &RunConfig, v: usize) -> Res<Output> {
    let en = enumerate_vacuum(v, &cfg.input)?;
    let rows = en
        .by_genus
        .values()
        .map(|g| {
            vec![
                g.genus.to_string(),
                g.count.to_string(),
                g.weight.to_string(),
                g.bipartite_count.to_string(),
                g.bipartite_weight.to_string(),
            ]
        })
        .collect();
    Ok(Output {
        json: json!({
            "v": en.v,
            "matchings": en.matchings,
            "connected": en.connected,
            "genus": to_json(&en.by_genus)?,
        }),
        rows: Some((vec!["genus", "count", "weight", "bipartite_count", "bipartite_weight"], rows)),
        ..Output::default()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    RootedTorus,
    F1Series,
    BipartiteRooted,
    BipartiteF1,
}

impl From<Kind> for CountKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::RootedTorus => CountKind::RootedTorus,
            Kind::F1Series => CountKind::F1Series,
            Kind::BipartiteRooted => CountKind::BipartiteRooted,
            Kind::BipartiteF1 => CountKind::BipartiteF1,
        }
    }
}

pub fn counts(kind: Kind, n: u64) -> Res<Output> {
    let k: CountKind = kind.into();
    let value = quadrangulation_counts(k, n)?;
    let name = to_json(&k)?.as_str().unwrap_or_default().to_string();
    Ok(Output {
        json: json!({ "kind": name, "n": n, "value": value }),
        rows: Some((vec!["kind", "n", "value"], vec![vec![name, n.to_string(), value.to_string()]])),
        ..Output::default()
    })
}

/// Adds one to the constant term of `ϱ₁`.
const PERTURB_RHO: &str = "perturb-rho";

fn identities(input: &SpectralInput, fixture: Option<&str>, order: i64) -> Res<Vec<CheckResult>> {
    let mut out = Vec::new();
    for b in 0..input.d() {
        match fixture {
            None => out.extend(lemma_checks(input, b, &sample_points(), order)?),
            Some(PERTURB_RHO) => {
                let work = order + 6;
                let mut def = solve_deformation(input, work).map_err(QkmError::from)?;
                let mut seeded = solve_deformation_seeded(input, b, work).map_err(QkmError::from)?;
                let one = Series::constant(E::one());
                def.rho[0] = def.rho[0].checked_add(&one).map_err(QkmError::from)?;
                let dual_one = Series::constant(Dual::constant(E::one()));
                seeded.rho[0] = seeded.rho[0].checked_add(&dual_one).map_err(QkmError::from)?;
                let s = Setting { def: &def, seeded: &seeded, b };
                out.extend(lemma_checks_with(&s, &sample_points(), order)?);
            }
            Some(other) => return Err(CliError::Input(format!("unknown fixture '{other}'"))),
        }
    }
    Ok(out)
}

fn default_groups(input: &SpectralInput) -> Vec<String> {
    let mut g = vec!["identities", "creation", "appendix"];
    if input.d() == 1 {
        g.extend(["symmetry", "tau"]);
    }
    g.into_iter().map(String::from).collect()
}

fn run_group(cfg: &RunConfig, name: &str, order: i64) -> Res<Vec<CheckResult>> {
    let input = &cfg.input;
    let d1_only = || {
        if input.d() != 1 {
            Err(CliError::Input(format!("check group '{name}' needs d = 1")))
        } else {
            Ok(())
        }
    };
    Ok(match name {
        "identities" => identities(input, cfg.verify.fixture.as_deref(), order)?,
        "creation" => creation(input, order.min(3))?.0,
        "creation-printed" => creation(input, order.min(3))?.1,
        "appendix" => appendix_a_identities(input)?.checks,
        "symmetry" => {
            d1_only()?;
            let mut v = symmetry_checks(input, &sample_points(), order.min(5))?;
            v.push(loop_equation_check(Convention::Pure)?);
            v.push(loop_equation_check(Convention::BlobbedPolar)?);
            v
        }
        "tau" => {
            d1_only()?;
            let t = tau_d1(input, order)?;
            vec![t.quarter_difference, t.ode]
        }
        other => {
            let id = other
                .strip_prefix("criterion-")
                .and_then(|s| s.parse::<u8>().ok())
                .ok_or_else(|| CliError::Input(format!("unknown check group '{other}'")))?;
            let c = criterion(id).ok_or_else(|| CliError::Input(format!("no criterion {id}")))?;
            c.checks
        }
    })
}

pub fn verify(cfg: &RunConfig, order: i64, acceptance: bool, only: &[u8]) -> Res<Output> {
    let groups: Vec<String> = if acceptance {
        CRITERIA.iter().map(|(id, _)| format!("criterion-{id}")).collect()
    } else if !only.is_empty() {
        only.iter().map(|id| format!("criterion-{id}")).collect()
    } else {
        cfg.verify.checks.clone().unwrap_or_else(|| default_groups(&cfg.input))
    };
    let mut checks = Vec::new();
    for g in &groups {
        checks.extend(run_group(cfg, g, order)?);
    }
    checks.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(Output {
        json: to_json(&checks)?,
        checks: checks.clone(),
        gating: checks,
        ..Output::default()
    })
}
