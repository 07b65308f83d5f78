//! The `analyze` report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use logdeg::degeneration::{is_main, multiplicity_report};
use logdeg::graph::{automorphism_group_order, validate, DecoratedGraph, Mode};
use logdeg::linalg::Index;
use logdeg::maps::{build_maps, invariants_of, LatticeMapBundle};
use logdeg::oracle;
use logdeg::tropical::{tropical_feasible, tropical_system, TropicalOutcome};
use logdeg::Error;

use crate::serial::{opt_string, opt_strings, string, strings};

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub mode: String,
    pub valid: bool,
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    pub genus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modules: Option<ModuleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tropical: Option<TropicalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_main: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    pub m: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    pub m_red: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    pub extra_factor: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma51_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    pub aut_order: Option<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    pub coefficient: Option<BigRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleCheck>>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    pub timing_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleReport {
    #[serde(serialize_with = "string")]
    pub rank_d: usize,
    #[serde(serialize_with = "string")]
    pub rank_t: usize,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    pub rank_d_bullet: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    pub rank_t_bullet: Option<usize>,
    #[serde(serialize_with = "string")]
    pub k_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    pub k_bullet_dim: Option<usize>,
    #[serde(serialize_with = "string")]
    pub ck_free_rank: usize,
    #[serde(serialize_with = "strings")]
    pub ck_torsion: Vec<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    pub ck_bullet_free_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_strings")]
    pub ck_bullet_torsion: Option<Vec<BigInt>>,
    #[serde(serialize_with = "string")]
    pub obstruction_group_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TropicalReport {
    pub feasible: bool,
    /// Edge lengths and vertex positions, keyed by id and label.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    /// Multipliers of the balancing equations, keyed `edge/label`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub lambda: BTreeMap<String, String>,
    pub s: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub name: String,
    /// `agree`, or `skipped` when the instance exceeds the oracle's limits.
    pub status: String,
}

const COSET_LIMIT: usize = 200_000;
const MINOR_LIMIT: usize = 200_000;
const FM_LIMIT: usize = 50_000;
const PERMUTATION_VERTICES: usize = 8;

pub fn analyze(g: &DecoratedGraph, with_oracle: bool, timing: bool) -> Result<AnalysisReport, Error> {
    let start = Instant::now();
    let v = validate(g);
    let mut r = AnalysisReport {
        mode: g.mode().as_str().to_string(),
        valid: v.is_valid(),
        violations: v.violations.iter().map(|x| x.to_string()).collect(),
        warnings: v.warnings.iter().map(|x| x.to_string()).collect(),
        genus: g.arithmetic_genus().ok(),
        modules: None,
        tropical: None,
        is_main: None,
        m: None,
        m_red: None,
        extra_factor: None,
        lemma51_ok: None,
        aut_order: None,
        coefficient: None,
        oracle: with_oracle.then(Vec::new),
        timing_ms: None,
    };
    if r.valid {
        let maps = build_maps(g)?;
        r.modules = Some(module_report(&maps));
        let outcome = tropical_feasible(g)?;
        r.tropical = Some(tropical_report(g, &outcome));
        r.aut_order = Some(automorphism_group_order(g));
        if g.mode() == Mode::Degeneration {
            let main = is_main(g)?;
            r.is_main = Some(main);
            if main {
                let mr = multiplicity_report(g)?;
                r.m = Some(mr.m);
                r.m_red = Some(mr.m_red);
                r.extra_factor = Some(mr.extra_factor);
                r.lemma51_ok = Some(mr.lemma51_ok);
                r.coefficient = Some(mr.coefficient);
            }
        }
        if with_oracle {
            r.oracle = Some(oracle_checks(g, &maps, &r)?);
        }
    }
    if timing {
        r.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok(r)
}

fn module_report(maps: &LatticeMapBundle) -> ModuleReport {
    let inv = invariants_of(maps);
    let bullet = inv.bullet.as_ref();
    ModuleReport {
        rank_d: inv.rank_d,
        rank_t: inv.rank_t,
        rank_d_bullet: bullet.map(|_| inv.rank_d_bullet),
        rank_t_bullet: bullet.map(|_| inv.rank_t_bullet),
        k_dim: inv.k_basis.len(),
        k_bullet_dim: bullet.map(|b| b.k_bullet_basis.len()),
        ck_free_rank: inv.ck_free_rank,
        ck_torsion: inv.ck_torsion.clone(),
        ck_bullet_free_rank: bullet.map(|b| b.ck_bullet_free_rank),
        ck_bullet_torsion: bullet.map(|b| b.ck_bullet_torsion.clone()),
        obstruction_group_dim: inv.obstruction_group_dim,
    }
}

fn tropical_report(g: &DecoratedGraph, outcome: &TropicalOutcome) -> TropicalReport {
    match outcome {
        TropicalOutcome::Feasible(w) => {
            let lambda = g.edges().iter().zip(&w.lambda).map(|(e, x)| (e.id.clone(), x.to_string())).collect();
            let s = g
                .vertices()
                .iter()
                .zip(&w.s)
                .map(|(v, pos)| {
                    let coords = v.depth.iter().map(|i| (g.labels()[i].clone(), pos[i].to_string())).collect();
                    (v.id.clone(), coords)
                })
                .collect();
            TropicalReport { feasible: true, witness: Some(WitnessReport { lambda, s }), certificate: None }
        }
        TropicalOutcome::Infeasible(c) => {
            let certificate = c
                .rows
                .iter()
                .zip(&c.multipliers)
                .filter(|(_, y)| !is_zero(y))
                .map(|(&(e, i), y)| (format!("{}/{}", g.edges()[e].id, g.labels()[i]), y.to_string()))
                .collect();
            TropicalReport { feasible: false, witness: None, certificate: Some(certificate) }
        }
    }
}

fn is_zero(x: &BigRational) -> bool {
    x.numer().sign() == num_bigint::Sign::NoSign
}

fn oracle_checks(g: &DecoratedGraph, maps: &LatticeMapBundle, r: &AnalysisReport) -> Result<Vec<OracleCheck>, Error> {
    let mut out = Vec::new();
    let mut record = |name: &str, verdict: Option<bool>| -> Result<(), Error> {
        match verdict {
            Some(false) => Err(Error::Inconsistent(format!("oracle disagrees on {name}"))),
            Some(true) => {
                out.push(OracleCheck { name: name.into(), status: "agree".into() });
                Ok(())
            }
            None => {
                out.push(OracleCheck { name: name.into(), status: "skipped".into() });
                Ok(())
            }
        }
    };

    let aut = (g.vertices().len() <= PERMUTATION_VERTICES)
        .then(|| Some(&BigUint::from(oracle::brute_force_automorphism_count(g))) == r.aut_order.as_ref());
    record("aut_order", aut)?;

    let (system, _) = tropical_system(g);
    let feasible = r.tropical.as_ref().map(|t| t.feasible);
    record("tropical", oracle::fourier_motzkin_feasible(&system, FM_LIMIT).map(|f| Some(f) == feasible))?;

    if let (Some(m), Some(rho_bullet)) = (&r.m, &maps.rho_bullet) {
        let index = oracle::coset_ambient_index(rho_bullet, COSET_LIMIT);
        record("m", index.map(|i| i == Index::Finite(m.clone())))?;
    }
    if let Some(extra) = &r.extra_factor {
        let index = oracle::determinantal_saturation_index(&maps.mu, MINOR_LIMIT);
        record("extra_factor", index.map(|i| &i == extra))?;
    }
    Ok(out)
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut t = String::new();
        let _ = writeln!(t, "mode: {}", self.mode);
        let _ = writeln!(t, "valid: {}", self.valid);
        for v in &self.violations {
            let _ = writeln!(t, "  violation: {v}");
        }
        for w in &self.warnings {
            let _ = writeln!(t, "  warning: {w}");
        }
        if let Some(g) = self.genus {
            let _ = writeln!(t, "genus: {g}");
        }
        if let Some(m) = &self.modules {
            let _ = writeln!(t, "rank D: {}", m.rank_d);
            let _ = writeln!(t, "rank T: {}", m.rank_t);
            if let (Some(d), Some(tb)) = (m.rank_d_bullet, m.rank_t_bullet) {
                let _ = writeln!(t, "rank D•: {d}");
                let _ = writeln!(t, "rank T•: {tb}");
            }
            let _ = writeln!(t, "dim K: {}", m.k_dim);
            if let Some(k) = m.k_bullet_dim {
                let _ = writeln!(t, "dim K•: {k}");
            }
            let _ = writeln!(t, "CK: free rank {}, torsion [{}]", m.ck_free_rank, display_all(&m.ck_torsion));
            if let (Some(f), Some(tor)) = (m.ck_bullet_free_rank, &m.ck_bullet_torsion) {
                let _ = writeln!(t, "CK•: free rank {f}, torsion [{}]", display_all(tor));
            }
            let _ = writeln!(t, "obstruction group dimension: {}", m.obstruction_group_dim);
        }
        if let Some(tr) = &self.tropical {
            let _ = writeln!(t, "tropically feasible: {}", tr.feasible);
            if let Some(w) = &tr.witness {
                let _ = writeln!(t, "  lambda: {}", render_map(&w.lambda));
                for (v, s) in &w.s {
                    let _ = writeln!(t, "  s[{v}]: {}", render_map(s));
                }
            }
            if let Some(c) = &tr.certificate {
                let _ = writeln!(t, "  certificate: {}", render_map(c));
            }
        }
        let line = |t: &mut String, k: &str, v: Option<String>| {
            if let Some(v) = v {
                let _ = writeln!(t, "{k}: {v}");
            }
        };
        line(&mut t, "is_main", self.is_main.map(|b| b.to_string()));
        line(&mut t, "m", self.m.as_ref().map(|x| x.to_string()));
        line(&mut t, "m_red", self.m_red.as_ref().map(|x| x.to_string()));
        line(&mut t, "extra_factor", self.extra_factor.as_ref().map(|x| x.to_string()));
        line(&mut t, "lemma51_ok", self.lemma51_ok.map(|b| b.to_string()));
        line(&mut t, "aut_order", self.aut_order.as_ref().map(|x| x.to_string()));
        line(&mut t, "coefficient", self.coefficient.as_ref().map(|x| x.to_string()));
        if let Some(checks) = &self.oracle {
            for c in checks {
                let _ = writeln!(t, "oracle {}: {}", c.name, c.status);
            }
        }
        line(&mut t, "time (ms)", self.timing_ms.map(|x| x.to_string()));
        t
    }
}

fn display_all(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn render_map(m: &BTreeMap<String, String>) -> String {
    m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}
