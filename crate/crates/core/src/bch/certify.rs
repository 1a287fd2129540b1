//! Rebuilds a construction from generator matrices and compares the
//! matrix-derived parameters with the closed formulas.

use serde::{Deserialize, Serialize};

use super::{ConstructionError, Formula, Plan};
use crate::codes::{CosetCodes, LinearCode, WeightError, DEFAULT_BUDGET};
use crate::enlarge::{
    css_params, enlarge_case1, enlarge_case2, Delta, EaqeccParams, EnlargeError, EnlargedCode, SplitCode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    /// largest number of codewords any single enumeration may visit
    pub budget: u64,
    /// enumerate the distance of the quantum code when it fits the budget
    pub exact_distance: bool,
    /// enumerate `delta_1`, `delta_2` and compare them with the bounds
    pub oracle_deltas: bool,
    /// recompute entanglement from subspace dimensions as well as ranks
    pub cross_check: bool,
    /// fail with `BudgetExceeded` instead of reporting the bound only
    pub require_exact: bool,
}

impl Default for CertifyOptions {
    fn default() -> CertifyOptions {
        CertifyOptions {
            budget: DEFAULT_BUDGET,
            exact_distance: true,
            oracle_deltas: true,
            cross_check: true,
            require_exact: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn eq<T: PartialEq + std::fmt::Display>(name: &str, got: T, want: T) -> Check {
        Check { name: name.into(), passed: got == want, detail: format!("{got} (expected {want})") }
    }

    fn ge(name: &str, got: u64, bound: u64) -> Check {
        Check { name: name.into(), passed: got >= bound, detail: format!("{got} >= {bound}") }
    }

    fn failed(name: &str, detail: String) -> Check {
        Check { name: name.into(), passed: false, detail }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DistanceReport {
    Exact { value: u64 },
    BoundOnly { reason: String },
    NotRequested,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    /// parameters re-derived from the matrices; `None` if construction failed
    pub params: Option<EaqeccParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tl: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta1: Option<Delta>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta2: Option<Delta>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a0_fallback: Option<bool>,
    pub distance: DistanceReport,
    pub checks: Vec<Check>,
}

impl Certification {
    pub fn passed(&self) -> bool {
        self.params.is_some() && self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn empty() -> Certification {
        Certification {
            params: None,
            r: None,
            t: None,
            tl: None,
            delta1: None,
            delta2: None,
            a0_fallback: None,
            distance: DistanceReport::NotRequested,
            checks: Vec::new(),
        }
    }
}

fn words(q: u64, k: usize) -> u128 {
    (q as u128).saturating_pow(k as u32)
}

fn over_budget(q: u64, e: usize, budget: u64) -> String {
    format!("{q}^{e} codewords exceed the budget of {budget}")
}

pub(crate) fn certify(
    codes: &CosetCodes,
    f: &Formula,
    opts: &CertifyOptions,
) -> Result<(Certification, Option<EnlargedCode>), ConstructionError> {
    match &f.plan {
        Plan::Css { cosets } => certify_css(codes, cosets, f, opts).map(|c| (c, None)),
        Plan::Case1 { br, bt } => certify_split(codes, br, bt, None, f, opts),
        Plan::Case2 { br, bt_l, bt_q } => certify_split(codes, br, bt_l, Some(bt_q), f, opts),
    }
}

fn certify_css(
    codes: &CosetCodes,
    cosets: &[usize],
    f: &Formula,
    opts: &CertifyOptions,
) -> Result<Certification, ConstructionError> {
    let mut cert = Certification::empty();
    let code = LinearCode::from_span(&codes.generator(cosets));
    let expected_dim: usize = cosets.iter().map(|&i| codes.table().coset(i).size()).sum();
    cert.checks.push(Check::eq("dim_c", code.dim(), expected_dim));
    let budget = if opts.exact_distance { opts.budget } else { 0 };
    let p = match css_params(&code, &code, f.params.d_lower, budget) {
        Ok(p) => p,
        Err(e) => {
            cert.checks.push(Check::failed("css", e.to_string()));
            return Ok(cert);
        }
    };
    // css_params already compares rank(H H^T) with dim C - dim(C ∩ C^perp)
    cert.checks.push(Check { name: "c_rank_eq_dimension".into(), passed: true, detail: format!("c = {}", p.c) });
    cert.checks.push(Check::eq("c", p.c, f.params.c));
    cert.checks.push(Check::eq("k", p.k, f.params.k));
    cert.distance = match p.d_exact {
        Some(d) => {
            cert.checks.push(Check::ge("d_exact_ge_bound", d, f.params.d_lower));
            DistanceReport::Exact { value: d }
        }
        None if !opts.exact_distance => DistanceReport::NotRequested,
        None => {
            let e = code.len() - code.dim();
            if opts.require_exact {
                return Err(ConstructionError::BudgetExceeded(words(p.q, e)));
            }
            DistanceReport::BoundOnly { reason: over_budget(p.q, e, opts.budget) }
        }
    };
    cert.params = Some(p);
    Ok(cert)
}

fn certify_split(
    codes: &CosetCodes,
    br: &[usize],
    bt_first: &[usize],
    bt_rest: Option<&Vec<usize>>,
    f: &Formula,
    opts: &CertifyOptions,
) -> Result<(Certification, Option<EnlargedCode>), ConstructionError> {
    let mut cert = Certification::empty();
    let (d1, d2) = f.deltas.expect("split constructions carry delta bounds");
    let bt_cosets: Vec<usize> = bt_first.iter().chain(bt_rest.into_iter().flatten()).copied().collect();
    let src = match SplitCode::new(codes.generator(br), codes.generator(&bt_cosets)) {
        Ok(s) => s,
        Err(e) => {
            cert.checks.push(Check::failed("split", e.to_string()));
            return Ok((cert, None));
        }
    };
    cert.r = Some(src.r());
    cert.t = Some(src.t());

    if opts.cross_check {
        let code = src.code();
        let by_dim = code.dim() - code.intersection_dim(&code.dual());
        cert.checks.push(Check::eq("c_rank_eq_dimension", src.c(), by_dim));
    }

    let (b1, b2) = (Delta::bound(d1), Delta::bound(d2));
    let built = match bt_rest {
        None => enlarge_case1(&src, b1, b2).map(|e| (e, None)),
        Some(_) => {
            let tl: usize = bt_first.iter().map(|&i| codes.table().coset(i).size()).sum();
            cert.tl = Some(tl);
            enlarge_case2(&src, tl, f.style, b1, b2).map(|c| {
                let fallback = c.a0_fallback;
                (c.code, Some(fallback))
            })
        }
    };
    let e = match built {
        Ok((e, fallback)) => {
            cert.a0_fallback = fallback;
            e
        }
        Err(err) => {
            cert.checks.push(Check::failed("enlarge", err.to_string()));
            return Ok((cert, None));
        }
    };

    cert.checks.push(Check::eq("rank_da", e.da.rank(), src.t() + 2 * src.r()));
    cert.checks.push(Check::eq("c_gram", e.c_prime(), f.params.c));
    cert.checks.push(Check::eq("k", e.params.k, f.params.k));
    if f.d_exact_match {
        cert.checks.push(Check::eq("d_bound", e.params.d_lower, f.params.d_lower));
    } else {
        cert.checks.push(Check::ge("d_bound", e.params.d_lower, f.params.d_lower));
    }
    if opts.cross_check {
        match e.c_prime_by_dimension() {
            Ok(c) => cert.checks.push(Check::eq("c_symplectic_dimension", c, e.c_prime())),
            Err(err) => cert.checks.push(Check::failed("c_symplectic_dimension", err.to_string())),
        }
    }

    cert.delta1 = Some(b1);
    cert.delta2 = Some(b2);
    if opts.oracle_deltas {
        match src.oracle_deltas(opts.budget) {
            Ok((o1, o2)) => {
                cert.checks.push(Check::ge("delta1_oracle_ge_bound", o1.value, d1));
                cert.checks.push(Check::ge("delta2_oracle_ge_bound", o2.value, d2));
                cert.delta1 = Some(o1);
                cert.delta2 = Some(o2);
            }
            Err(EnlargeError::Weight(WeightError::Exceeded(_))) => {}
            Err(err) => cert.checks.push(Check::failed("delta_oracle", err.to_string())),
        }
    }

    let mut e = e;
    cert.distance = if opts.exact_distance || opts.require_exact {
        let n = src.n();
        let (q, dual_dim) = (src.field().order() as u64, 2 * n - e.da.rows());
        let need = words(q, dual_dim);
        if need > opts.budget as u128 {
            if opts.require_exact {
                return Err(ConstructionError::BudgetExceeded(need));
            }
            DistanceReport::BoundOnly { reason: over_budget(q, dual_dim, opts.budget) }
        } else {
            e = e.with_exact_distance(opts.budget).map_err(crate::Error::from)?;
            match e.params.d_exact {
                Some(d) => {
                    cert.checks.push(Check::ge("d_exact_ge_bound", d, f.params.d_lower));
                    DistanceReport::Exact { value: d }
                }
                None => DistanceReport::BoundOnly { reason: "no codeword outside the intersection".into() },
            }
        }
    } else {
        DistanceReport::NotRequested
    };
    cert.params = Some(e.params);
    Ok((cert, Some(e)))
}
