//! EAQECCs from BCH codes: closed-form parameters for each construction,
//! matrix-level certification, and the reference tables.

mod certify;
mod tables;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::CosetCodes;
use crate::cosets::CosetTable;
use crate::enlarge::{a0_polynomial, enlarged_distance_bound, A0Style, EaqeccParams, EnlargedCode};
use crate::galois::Field;

pub use certify::{Certification, CertifyOptions, Check, DistanceReport};
pub use tables::{
    reproduce_table, reproduce_table_with, table_certify_options, table_rows, RowReport, RowStatus, TableReport,
    TableRow, TableTheorem,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("exact distance needs at least {0} codewords, over the enumeration budget")]
    BudgetExceeded(u128),
    #[error(transparent)]
    Library(#[from] crate::Error),
}

fn invalid(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::InvalidRequest(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// CSS code of the BCH code `Delta(l)` with itself
    Bch,
    /// enlargement with `B_r = Delta(l1)`, `B_t` = cosets `l1+1..=l2`, `c = 1`
    BchCase1,
    /// `BchCase1` at `(l1, l2) = (0, 1)`
    CorThree,
    /// `BchCase1` at `(l - 1, l)`, with the weaker bound `a_{l+1}`
    CorOne,
    /// as `BchCase1` but `B_r = Delta(l1, R)`
    Reciprocal,
    /// `a_{l2} = p^{m/2} - 1` is symmetric and is paired with itself
    BchCase2,
    /// `C = Delta(l2, R)`, `B_r = Delta(l1, R)`
    Reciprocal2i,
    /// `Reciprocal2i` with the symmetric coset `p^{m/2} - 1` on top
    Reciprocal2ii,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::Bch,
        Theorem::BchCase1,
        Theorem::CorThree,
        Theorem::CorOne,
        Theorem::Reciprocal,
        Theorem::BchCase2,
        Theorem::Reciprocal2i,
        Theorem::Reciprocal2ii,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Bch => "bch",
            Theorem::BchCase1 => "bchcase1",
            Theorem::CorThree => "corthree",
            Theorem::CorOne => "corone",
            Theorem::Reciprocal => "reciprocal",
            Theorem::BchCase2 => "bchcase2",
            Theorem::Reciprocal2i => "reciprocal2i",
            Theorem::Reciprocal2ii => "reciprocal2ii",
        }
    }

    /// Whether the construction uses the case-2 enlargement (and so `A_0`).
    pub fn is_case_two(self) -> bool {
        matches!(self, Theorem::BchCase2 | Theorem::Reciprocal2i | Theorem::Reciprocal2ii)
    }

    /// Number of coset indices the caller supplies.
    pub fn arity(self) -> usize {
        match self {
            Theorem::CorThree => 0,
            Theorem::Bch | Theorem::CorOne | Theorem::BchCase2 | Theorem::Reciprocal2ii => 1,
            Theorem::BchCase1 | Theorem::Reciprocal | Theorem::Reciprocal2i => 2,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Theorem, String> {
        let key = s.to_ascii_lowercase().replace(['-', '_'], "");
        Theorem::ALL.into_iter().find(|t| t.name() == key).ok_or_else(|| {
            let names: Vec<&str> = Theorem::ALL.iter().map(|t| t.name()).collect();
            format!("unknown theorem `{s}` (expected one of {})", names.join(", "))
        })
    }
}

/// A construction request. Cosets are named by their minimal representatives.
///
/// `a_l1` is `a_l` for the single-index constructions (`Bch`, `CorOne`) and
/// `a_{l1}` otherwise. `a_l2` is only read by the two-index constructions;
/// `BchCase2`/`Reciprocal2ii` derive it and reject a conflicting value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRequest {
    pub p: u64,
    pub m: u32,
    pub s: u32,
    pub theorem: Theorem,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_l1: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_l2: Option<u64>,
    #[serde(default)]
    pub a0_style: A0Style,
    #[serde(default)]
    pub certify: bool,
}

impl ConstructionRequest {
    pub fn new(p: u64, m: u32, s: u32, theorem: Theorem) -> ConstructionRequest {
        ConstructionRequest { p, m, s, theorem, a_l1: None, a_l2: None, a0_style: A0Style::Standard, certify: false }
    }

    pub fn reps(mut self, a_l1: Option<u64>, a_l2: Option<u64>) -> ConstructionRequest {
        self.a_l1 = a_l1;
        self.a_l2 = a_l2;
        self
    }

    /// Same as [`reps`](Self::reps) but from positions in the list of minimal
    /// representatives.
    pub fn indices(self, l1: Option<usize>, l2: Option<usize>) -> Result<ConstructionRequest, ConstructionError> {
        let table = CosetTable::new(self.p, self.m, self.s).map_err(|e| invalid(e.to_string()))?;
        let rep = |l: usize| {
            if l > table.z() {
                Err(invalid(format!("index {l} exceeds z = {}", table.z())))
            } else {
                Ok(table.rep(l))
            }
        };
        let a1 = l1.map(rep).transpose()?;
        let a2 = l2.map(rep).transpose()?;
        Ok(self.reps(a1, a2))
    }

    pub fn style(mut self, style: A0Style) -> ConstructionRequest {
        self.a0_style = style;
        self
    }

    pub fn certify(mut self, certify: bool) -> ConstructionRequest {
        self.certify = certify;
        self
    }
}

/// Which cosets go where in the certifying construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Plan {
    /// CSS code of `C x C` with `C` spanned by these cosets
    Css {
        cosets: Vec<usize>,
    },
    Case1 {
        br: Vec<usize>,
        bt: Vec<usize>,
    },
    /// `bt_l` rows come first in `B_t`
    Case2 {
        br: Vec<usize>,
        bt_l: Vec<usize>,
        bt_q: Vec<usize>,
    },
}

/// Closed-form parameters together with the data needed to certify them.
#[derive(Debug, Clone)]
pub(crate) struct Formula {
    pub params: EaqeccParams,
    pub l1: Option<usize>,
    pub l2: Option<usize>,
    /// `(delta_1, delta_2)` bounds fed to the enlargement, `None` for `Bch`
    pub deltas: Option<(u64, u64)>,
    /// the certified `d_lower` must equal `params.d_lower` (else only `>=`)
    pub d_exact_match: bool,
    pub style: A0Style,
    pub plan: Plan,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub request: ConstructionRequest,
    /// resolved positions of `a_l1`, `a_l2` among the minimal representatives
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l2: Option<usize>,
    /// values from the closed formulas
    pub params: EaqeccParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification: Option<Certification>,
    /// the enlarged code built during certification
    #[serde(skip)]
    pub code: Option<EnlargedCode>,
}

impl ConstructionResult {
    /// All certification checks passed (vacuously true when not certified).
    pub fn certified_ok(&self) -> bool {
        self.certification.as_ref().is_none_or(|c| c.passed())
    }
}

fn resolve(table: &CosetTable, a: Option<u64>, what: &str) -> Result<usize, ConstructionError> {
    let a = a.ok_or_else(|| invalid(format!("{what} is required")))?;
    table
        .index_of(a)
        .ok_or_else(|| invalid(format!("{what} = {a} is not a minimal coset representative mod {}", table.n())))
}

fn range(lo: usize, hi: usize) -> Vec<usize> {
    (lo..=hi).collect()
}

/// `Delta(l, R)` coset indices.
fn with_reciprocals(table: &CosetTable, cosets: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for i in cosets {
        out.push(i);
        let r = table.reciprocal_index(i);
        if r != i {
            out.push(r);
        }
    }
    out
}

/// Index of the symmetric coset `p^{m/2} - 1` when `m` and `m/s` are even.
fn symmetric_top(table: &CosetTable) -> Result<usize, ConstructionError> {
    let (m, s) = (table.m(), table.s());
    if m % 2 != 0 || (m / s) % 2 != 0 {
        return Err(invalid(format!("needs m and m/s even, got m = {m}, m/s = {}", m / s)));
    }
    let a = table.p().pow(m / 2) - 1;
    table.index_of(a).ok_or_else(|| invalid(format!("{a} is not a minimal representative")))
}

fn check_style(theorem: Theorem, style: A0Style, tl: usize, q_field: &Field) -> Result<(), ConstructionError> {
    if !theorem.is_case_two() {
        if style != A0Style::Standard {
            return Err(invalid(format!("a0 style only applies to case-2 constructions, not {theorem}")));
        }
        return Ok(());
    }
    a0_polynomial(tl, q_field, style).map(|_| ()).map_err(|e| invalid(e.to_string()))
}

/// Evaluates the closed formulas after checking the construction's hypotheses.
pub(crate) fn formula(table: &CosetTable, req: &ConstructionRequest) -> Result<Formula, ConstructionError> {
    let th = req.theorem;
    let z = table.z();
    let n = table.n() as usize;
    let big_m = table.relative_degree();
    let q = table.alphabet();
    let b = table.bound_b();
    let a = |i: usize| table.rep(i);
    let size = |i: usize| table.coset(i).size();
    let below_b = |l: usize| {
        if a(l) < b {
            Ok(())
        } else {
            Err(invalid(format!("a_l2 = {} is not below B(p,m,s) = {b}", a(l))))
        }
    };
    let ordered = |l1: usize, l2: usize| {
        if l1 < l2 && l2 < z {
            Ok(())
        } else {
            Err(invalid(format!("need l1 < l2 < z, got l1 = {l1}, l2 = {l2}, z = {z}")))
        }
    };
    if th.arity() < 2 && req.a_l2.is_some() && !matches!(th, Theorem::BchCase2 | Theorem::Reciprocal2ii) {
        return Err(invalid(format!("{th} takes a single coset; a_l2 must be omitted")));
    }
    if th.arity() == 0 && req.a_l1.is_some() {
        return Err(invalid(format!("{th} takes no coset arguments")));
    }
    let small = Field::gf(table.p(), table.s()).map_err(crate::Error::from)?;
    let params = |k: usize, d: u64, c: usize| EaqeccParams { q, n, k, d_lower: d, d_exact: None, c };

    let f = match th {
        Theorem::Bch => {
            let l = resolve(table, req.a_l1, "a_l")?;
            if l >= z {
                return Err(invalid(format!("need l < z = {z}, got {l}")));
            }
            let ds = table.delta(l).map_err(crate::Error::from)?;
            let c = ds.delta_l_size(table);
            let k = (n + c)
                .checked_sub(2 * ds.len())
                .ok_or_else(|| invalid("Delta(l) is too large: k would be negative"))?;
            Formula {
                params: params(k, a(l + 1) + 1, c),
                l1: Some(l),
                l2: None,
                deltas: None,
                style: req.a0_style,
                d_exact_match: true,
                plan: Plan::Css { cosets: ds.cosets },
            }
        }
        Theorem::BchCase1 | Theorem::CorThree | Theorem::CorOne => {
            let (l1, l2) = match th {
                Theorem::BchCase1 => (resolve(table, req.a_l1, "a_l1")?, resolve(table, req.a_l2, "a_l2")?),
                Theorem::CorThree => (0, 1),
                _ => {
                    let l = resolve(table, req.a_l1, "a_l")?;
                    if l == 0 {
                        return Err(invalid("needs l >= 1"));
                    }
                    (l - 1, l)
                }
            };
            ordered(l1, l2)?;
            below_b(l2)?;
            let (d1, d2) = (a(l2 + 1) + 1, a(l1 + 1) + 1);
            let d = match th {
                Theorem::BchCase1 => enlarged_distance_bound(q, d1, d2),
                Theorem::CorThree => 3,
                _ => a(l2 + 1),
            };
            let k = n - big_m * (l1 + l2) - 1;
            Formula {
                params: params(k, d, 1),
                l1: Some(l1),
                l2: Some(l2),
                deltas: Some((d1, d2)),
                style: req.a0_style,
                d_exact_match: th == Theorem::BchCase1,
                plan: Plan::Case1 { br: range(0, l1), bt: range(l1 + 1, l2) },
            }
        }
        Theorem::Reciprocal => {
            let (l1, l2) = (resolve(table, req.a_l1, "a_l1")?, resolve(table, req.a_l2, "a_l2")?);
            ordered(l1, l2)?;
            below_b(l2)?;
            let (d1, d2) = (a(l1 + 1) + a(l2 + 1), 2 * a(l1 + 1));
            let k = n - big_m * (l1 + l2) - 1;
            Formula {
                params: params(k, enlarged_distance_bound(q, d1, d2), 1 + 2 * big_m * l1),
                l1: Some(l1),
                l2: Some(l2),
                deltas: Some((d1, d2)),
                style: req.a0_style,
                d_exact_match: true,
                plan: Plan::Case1 { br: with_reciprocals(table, 0..=l1), bt: range(l1 + 1, l2) },
            }
        }
        Theorem::BchCase2 | Theorem::Reciprocal2ii => {
            let l2 = symmetric_top(table)?;
            if let Some(given) = req.a_l2 {
                if given != a(l2) {
                    return Err(invalid(format!("a_l2 must be p^(m/2) - 1 = {}, got {given}", a(l2))));
                }
            }
            let l1 = resolve(table, req.a_l1, "a_l1")?;
            ordered(l1, l2)?;
            let half = big_m / 2;
            let (mut k, mut c, d1, d2, plan, tl);
            if th == Theorem::BchCase2 {
                k = n + half - big_m * (l1 + l2) - 1;
                c = half + 1;
                d1 = a(l2 + 1) + 1;
                d2 = a(l1 + 1) + 1;
                tl = size(l2);
                plan = Plan::Case2 { br: range(0, l1), bt_l: vec![l2], bt_q: range(l1 + 1, l2 - 1) };
            } else {
                // (m/s)(l1 + l2 - 1/2) = m/s (l1 + l2) - half
                let sub = big_m * (l1 + l2) - half;
                k = n - sub - 1;
                c = 1 + sub;
                d1 = a(l2 + 1) + a(l2) - 1;
                d2 = 2 * a(l1 + 1);
                let mut bt_l = with_reciprocals(table, l1 + 1..l2);
                bt_l.push(l2);
                tl = bt_l.iter().map(|&i| size(i)).sum();
                plan = Plan::Case2 { br: with_reciprocals(table, 0..=l1), bt_l, bt_q: Vec::new() };
            }
            check_style(th, req.a0_style, tl, &small)?;
            if req.a0_style == A0Style::Eta {
                k -= 1;
                c -= 1;
            }
            Formula {
                params: params(k, enlarged_distance_bound(q, d1, d2), c),
                l1: Some(l1),
                l2: Some(l2),
                deltas: Some((d1, d2)),
                style: req.a0_style,
                d_exact_match: true,
                plan,
            }
        }
        Theorem::Reciprocal2i => {
            let (l1, l2) = (resolve(table, req.a_l1, "a_l1")?, resolve(table, req.a_l2, "a_l2")?);
            ordered(l1, l2)?;
            below_b(l2)?;
            let bt_l = with_reciprocals(table, l1 + 1..=l2);
            let tl: usize = bt_l.iter().map(|&i| size(i)).sum();
            check_style(th, req.a0_style, tl, &small)?;
            let eta = usize::from(req.a0_style == A0Style::Eta);
            let (d1, d2) = (2 * a(l2 + 1), 2 * a(l1 + 1));
            let sub = big_m * (l1 + l2);
            Formula {
                params: params(n - sub - 1 - eta, enlarged_distance_bound(q, d1, d2), 1 + sub - eta),
                l1: Some(l1),
                l2: Some(l2),
                deltas: Some((d1, d2)),
                style: req.a0_style,
                d_exact_match: true,
                plan: Plan::Case2 { br: with_reciprocals(table, 0..=l1), bt_l, bt_q: Vec::new() },
            }
        }
    };
    if !th.is_case_two() {
        check_style(th, req.a0_style, 0, &small)?;
    }
    Ok(f)
}

/// Evaluates a request, certifying it with the given options when
/// `req.certify` is set.
pub fn construct(req: &ConstructionRequest, opts: &CertifyOptions) -> Result<ConstructionResult, ConstructionError> {
    construct_with(req, opts, None)
}

/// As [`construct`], reusing `codes` when it matches `(p, m, s)`.
pub fn construct_with(
    req: &ConstructionRequest,
    opts: &CertifyOptions,
    codes: Option<&CosetCodes>,
) -> Result<ConstructionResult, ConstructionError> {
    let table = CosetTable::new(req.p, req.m, req.s).map_err(|e| invalid(e.to_string()))?;
    let f = formula(&table, req)?;
    let certification = if req.certify || opts.require_exact {
        let owned;
        let codes = match codes {
            Some(c) if (c.table().p(), c.table().m(), c.table().s()) == (req.p, req.m, req.s) => c,
            _ => {
                owned = CosetCodes::new(req.p, req.m, req.s)?;
                &owned
            }
        };
        let (cert, code) = certify::certify(codes, &f, opts)?;
        (Some(cert), code)
    } else {
        (None, None)
    };
    let (certification, code) = certification;
    Ok(ConstructionResult { request: req.clone(), l1: f.l1, l2: f.l2, params: f.params, certification, code })
}

fn run(req: ConstructionRequest) -> Result<ConstructionResult, ConstructionError> {
    construct(&req, &CertifyOptions::default())
}

/// CSS code from the BCH code of `Delta(l)`.
pub fn thm_bch(p: u64, m: u32, s: u32, l: usize, certify: bool) -> Result<ConstructionResult, ConstructionError> {
    run(ConstructionRequest::new(p, m, s, Theorem::Bch).indices(Some(l), None)?.certify(certify))
}

pub fn thm_bchcase1(
    p: u64,
    m: u32,
    s: u32,
    l1: usize,
    l2: usize,
    certify: bool,
) -> Result<ConstructionResult, ConstructionError> {
    run(ConstructionRequest::new(p, m, s, Theorem::BchCase1).indices(Some(l1), Some(l2))?.certify(certify))
}

pub fn cor_three(p: u64, m: u32, s: u32, certify: bool) -> Result<ConstructionResult, ConstructionError> {
    run(ConstructionRequest::new(p, m, s, Theorem::CorThree).certify(certify))
}

pub fn cor_one(p: u64, m: u32, s: u32, l: usize, certify: bool) -> Result<ConstructionResult, ConstructionError> {
    run(ConstructionRequest::new(p, m, s, Theorem::CorOne).indices(Some(l), None)?.certify(certify))
}

pub fn thm_reciprocal(
    p: u64,
    m: u32,
    s: u32,
    l1: usize,
    l2: usize,
    certify: bool,
) -> Result<ConstructionResult, ConstructionError> {
    run(ConstructionRequest::new(p, m, s, Theorem::Reciprocal).indices(Some(l1), Some(l2))?.certify(certify))
}

pub fn thm_bchcase2(
    p: u64,
    m: u32,
    s: u32,
    l1: usize,
    style: A0Style,
    certify: bool,
) -> Result<ConstructionResult, ConstructionError> {
    run(ConstructionRequest::new(p, m, s, Theorem::BchCase2).indices(Some(l1), None)?.style(style).certify(certify))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    I,
    Ii,
}

/// `l2` is ignored for variant `Ii`.
#[allow(clippy::too_many_arguments)]
pub fn thm_reciprocal2(
    p: u64,
    m: u32,
    s: u32,
    variant: Variant,
    l1: usize,
    l2: Option<usize>,
    style: A0Style,
    certify: bool,
) -> Result<ConstructionResult, ConstructionError> {
    let req = match variant {
        Variant::I => ConstructionRequest::new(p, m, s, Theorem::Reciprocal2i).indices(Some(l1), l2)?,
        Variant::Ii => ConstructionRequest::new(p, m, s, Theorem::Reciprocal2ii).indices(Some(l1), None)?,
    };
    run(req.style(style).certify(certify))
}
