//! The check catalogue and its JSON reports.
//!
//! Identities quantified over a monomial basis are checked exhaustively up
//! to the requested degree. Properties quantified over triples (star
//! associativity) or over arbitrary elements (round trips, rewrite
//! confluence) are sampled from a ChaCha stream seeded by the spec, so the
//! same spec always yields the same report.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::duflo::{Containment, Defect, StarFlavor, Workbench};
use crate::envalg::{EnvElement, FreeWordExpression, RewriteStrategy};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, q, Q};
use crate::liealg::{self, StructureConstants};
use crate::sympoly::{
    adjoint_action, apply_operator, component_dim, poisson_bracket, Monomial, PolyJson, SymPolynomial,
};

/// Minimum sample count for any sampled property.
pub const MIN_SAMPLES: usize = 50;
/// Sample count used for the PBW round-trip and confluence properties.
pub const PBW_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    Jacobi,
    PbwRoundtrip,
    PbwModuleMap,
    StarAssoc,
    StarFirstOrder,
    DufloHom,
    H0Compat,
    ExtractC,
    Commutant,
    SemisimpleDecomp,
    OddTraces,
    CoinvariantDims,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::Jacobi,
        CheckId::PbwRoundtrip,
        CheckId::PbwModuleMap,
        CheckId::StarAssoc,
        CheckId::StarFirstOrder,
        CheckId::DufloHom,
        CheckId::H0Compat,
        CheckId::ExtractC,
        CheckId::Commutant,
        CheckId::SemisimpleDecomp,
        CheckId::OddTraces,
        CheckId::CoinvariantDims,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Jacobi => "jacobi",
            CheckId::PbwRoundtrip => "pbw-roundtrip",
            CheckId::PbwModuleMap => "pbw-module-map",
            CheckId::StarAssoc => "star-assoc",
            CheckId::StarFirstOrder => "star-first-order",
            CheckId::DufloHom => "duflo-hom",
            CheckId::H0Compat => "h0-compat",
            CheckId::ExtractC => "extract-c",
            CheckId::Commutant => "commutant",
            CheckId::SemisimpleDecomp => "semisimple-decomp",
            CheckId::OddTraces => "odd-traces",
            CheckId::CoinvariantDims => "coinvariant-dims",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSpec {
    pub check: CheckId,
    /// Catalog name or path to an algebra JSON file.
    pub algebra: String,
    pub max_degree: u32,
    pub seed: u64,
}

impl CheckSpec {
    pub fn new(check: CheckId, algebra: impl Into<String>, max_degree: u32) -> Self {
        CheckSpec { check, algebra: algebra.into(), max_degree, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Flag,
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Flag => "flag",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    pub label: String,
    pub outcome: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<PolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<PolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<PolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub containment: Option<Containment>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CaseRecord {
    fn new(label: impl Into<String>, ok: bool) -> Self {
        CaseRecord {
            label: label.into(),
            outcome: Status::from_bool(ok),
            alpha: None,
            beta: None,
            c: None,
            witness: None,
            containment: None,
            detail: None,
        }
    }

    fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub flag: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: CheckId,
    pub algebra: String,
    pub max_degree: u32,
    pub seed: u64,
    pub status: Status,
    /// Number of seeded-random samples drawn, for sampled checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub counts: Counts,
    pub cases: Vec<CaseRecord>,
    /// Kept out of the JSON so reports stay byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl Report {
    fn assemble(spec: &CheckSpec, algebra: &str, samples: Option<usize>, cases: Vec<CaseRecord>) -> Self {
        let mut counts = Counts::default();
        for c in &cases {
            match c.outcome {
                Status::Pass => counts.pass += 1,
                Status::Flag => counts.flag += 1,
                Status::Fail => counts.fail += 1,
            }
        }
        let status = cases.iter().map(|c| c.outcome).max().unwrap_or(Status::Pass);
        Report {
            check: spec.check,
            algebra: algebra.to_string(),
            max_degree: spec.max_degree,
            seed: spec.seed,
            status,
            samples,
            counts,
            cases,
            wall_time: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| c.outcome != Status::Pass)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report json")
    }

    /// One line: `check algebra d=.. status (pass/flag/fail counts)`.
    pub fn summary(&self) -> String {
        format!(
            "{:<18} {:<16} d={:<2} {:<4} ({} pass, {} flag, {} fail{})",
            self.check.as_str(),
            self.algebra,
            self.max_degree,
            self.status,
            self.counts.pass,
            self.counts.flag,
            self.counts.fail,
            self.samples.map(|s| format!(", {s} samples")).unwrap_or_default()
        )
    }
}

/// Resolves the spec's algebra and runs the check.
///
/// Every check except `jacobi` needs a valid Lie algebra and reports an
/// [`Error::InvalidAlgebra`] otherwise; `jacobi` turns the violation into a
/// failing report.
pub fn run_check(spec: &CheckSpec) -> Result<Report> {
    let sc = liealg::resolve(&spec.algebra)?;
    if spec.check != CheckId::Jacobi {
        let v = sc.validate();
        if !v.passed() {
            return Err(Error::InvalidAlgebra(v.describe(&sc)));
        }
    }
    run_check_on(&Workbench::new(sc), spec)
}

/// Runs a check against an existing workbench, reusing its caches. The
/// spec's `algebra` field is only echoed.
pub fn run_check_on(wb: &Workbench, spec: &CheckSpec) -> Result<Report> {
    let start = Instant::now();
    let d = spec.max_degree;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (samples, cases) = match spec.check {
        CheckId::Jacobi => (None, check_jacobi(wb.structure())),
        CheckId::PbwRoundtrip => (Some(3 * PBW_SAMPLES), check_pbw_roundtrip(wb, d, &mut rng)?),
        CheckId::PbwModuleMap => (None, check_pbw_module_map(wb, d)?),
        CheckId::StarAssoc => (Some(2 * MIN_SAMPLES), check_star_assoc(wb, d, &mut rng)?),
        CheckId::StarFirstOrder => (None, check_star_first_order(wb, d)?),
        CheckId::DufloHom => (None, check_duflo_hom(wb, d)?),
        CheckId::H0Compat => (None, check_defects(wb, d, true)?),
        CheckId::ExtractC => (None, check_defects(wb, d, false)?),
        CheckId::Commutant => (None, check_commutant(wb, d)?),
        CheckId::SemisimpleDecomp => (None, check_semisimple(wb, d)?),
        CheckId::OddTraces => (None, check_odd_traces(wb, d)?),
        CheckId::CoinvariantDims => (None, check_coinvariant_dims(wb, d)?),
    };
    let mut report = Report::assemble(spec, &spec.algebra, samples, cases);
    report.wall_time = start.elapsed();
    Ok(report)
}

fn check_jacobi(sc: &StructureConstants) -> Vec<CaseRecord> {
    let v = sc.validate();
    vec![
        CaseRecord::new("antisymmetry", v.antisymmetry_ok()),
        CaseRecord::new("jacobi", v.jacobi_ok()).detail(v.describe(sc)),
    ]
}

fn mono_poly(m: &Monomial) -> SymPolynomial {
    SymPolynomial::from_monomial(m.clone(), Q::from_integer(1.into()))
}

fn label(wb: &Workbench, f: &SymPolynomial) -> String {
    f.display(wb.names())
}

/// A sparse polynomial with up to three terms of degree at most `max_deg`
/// and small nonzero integer coefficients.
fn random_poly(rng: &mut ChaCha8Rng, monomials: &[Monomial], dim: usize) -> SymPolynomial {
    let mut f = SymPolynomial::zero(dim);
    let n_terms = rng.gen_range(1..=3);
    for _ in 0..n_terms {
        let m = monomials.choose(rng).expect("nonempty monomial list");
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        f.add_term(m.clone(), q(c));
    }
    f
}

fn random_element(rng: &mut ChaCha8Rng, monomials: &[Monomial], dim: usize) -> EnvElement {
    let f = random_poly(rng, monomials, dim);
    EnvElement::from_terms(dim, f.terms().map(|(m, c)| (m.letters(), c.clone()))).expect("ordered words")
}

fn check_pbw_roundtrip(wb: &Workbench, d: u32, rng: &mut ChaCha8Rng) -> Result<Vec<CaseRecord>> {
    let n = wb.dim();
    let env = wb.enveloping();
    let monomials = Monomial::all_up_to_degree(n, d);

    // sampled inputs are drawn up front so the rng stream is independent of
    // the evaluation order
    let polys: Vec<SymPolynomial> = (0..PBW_SAMPLES).map(|_| random_poly(rng, &monomials, n)).collect();
    let elems: Vec<EnvElement> = (0..PBW_SAMPLES).map(|_| random_element(rng, &monomials, n)).collect();
    let words: Vec<Vec<usize>> = (0..PBW_SAMPLES)
        .map(|_| {
            let len = rng.gen_range(0..=d as usize + 1);
            (0..len).map(|_| rng.gen_range(0..n)).collect()
        })
        .collect();

    let mut cases: Vec<CaseRecord> = monomials
        .par_iter()
        .map(|m| -> Result<CaseRecord> {
            let f = mono_poly(m);
            let image = env.pbw_symmetrize(&f)?;
            let ok = env.pbw_inverse(&image)? == f && image.top_symbol() == f;
            Ok(CaseRecord::new(format!("monomial {}", label(wb, &f)), ok))
        })
        .collect::<Result<_>>()?;
    cases.extend(
        polys
            .par_iter()
            .map(|f| -> Result<CaseRecord> {
                let ok = env.pbw_inverse(&env.pbw_symmetrize(f)?)? == *f;
                Ok(CaseRecord::new(format!("inverse after symmetrize: {}", label(wb, f)), ok))
            })
            .collect::<Result<Vec<_>>>()?,
    );
    cases.extend(
        elems
            .par_iter()
            .map(|u| -> Result<CaseRecord> {
                let ok = env.pbw_symmetrize(&env.pbw_inverse(u)?)? == *u;
                Ok(CaseRecord::new(format!("symmetrize after inverse: {}", u.display(wb.names())), ok))
            })
            .collect::<Result<Vec<_>>>()?,
    );
    cases.extend(
        words
            .par_iter()
            .map(|w| -> Result<CaseRecord> {
                let expr = FreeWordExpression::word(n, w)?;
                let left = env.rewrite(&expr, RewriteStrategy::LeftmostInversion)?;
                let right = env.rewrite(&expr, RewriteStrategy::RightmostInversion)?;
                let fast = env.normal_form(&expr)?;
                let names: Vec<&str> = w.iter().map(|&i| wb.names()[i].as_str()).collect();
                Ok(CaseRecord::new(format!("confluence: {}", names.join("*")), left == right && right == fast))
            })
            .collect::<Result<Vec<_>>>()?,
    );
    Ok(cases)
}

fn check_pbw_module_map(wb: &Workbench, d: u32) -> Result<Vec<CaseRecord>> {
    let n = wb.dim();
    let env = wb.enveloping();
    let pairs: Vec<(usize, Monomial)> = Monomial::all_up_to_degree(n, d)
        .into_iter()
        .flat_map(|m| (0..n).map(move |i| (i, m.clone())))
        .collect();
    pairs
        .par_iter()
        .map(|(i, m)| {
            let f = mono_poly(m);
            let lhs = env.pbw_symmetrize(&adjoint_action(wb.structure(), *i, &f)?)?;
            let rhs = env.module_action(*i, &env.pbw_symmetrize(&f)?)?;
            Ok(CaseRecord::new(format!("{} . {}", wb.names()[*i], label(wb, &f)), lhs == rhs))
        })
        .collect()
}

fn check_star_assoc(wb: &Workbench, d: u32, rng: &mut ChaCha8Rng) -> Result<Vec<CaseRecord>> {
    let n = wb.dim();
    let monomials = Monomial::all_up_to_degree(n, d);
    let mut triples = Vec::new();
    for flavor in [StarFlavor::Gutt, StarFlavor::Duflo] {
        for _ in 0..MIN_SAMPLES {
            let a = random_poly(rng, &monomials, n);
            let b = random_poly(rng, &monomials, n);
            let c = random_poly(rng, &monomials, n);
            triples.push((flavor, a, b, c));
        }
    }
    triples
        .par_iter()
        .map(|(flavor, a, b, c)| {
            let left = wb.star_product(&wb.star_product(a, b, *flavor)?, c, *flavor)?;
            let right = wb.star_product(a, &wb.star_product(b, c, *flavor)?, *flavor)?;
            let lbl = format!("{flavor:?}: ({}) ({}) ({})", label(wb, a), label(wb, b), label(wb, c));
            Ok(CaseRecord::new(lbl, left == right))
        })
        .collect()
}

fn monomial_pairs(n: usize, d: u32, include_diagonal: bool) -> Vec<(Monomial, Monomial)> {
    let monomials = Monomial::all_up_to_degree(n, d);
    let mut pairs = Vec::new();
    for (i, a) in monomials.iter().enumerate() {
        let start = if include_diagonal { i } else { i + 1 };
        for b in &monomials[start..] {
            pairs.push((a.clone(), b.clone()));
        }
    }
    pairs
}

fn check_star_first_order(wb: &Workbench, d: u32) -> Result<Vec<CaseRecord>> {
    let pairs = monomial_pairs(wb.dim(), d, true);
    let jobs: Vec<(StarFlavor, &(Monomial, Monomial))> = [StarFlavor::Gutt, StarFlavor::Duflo]
        .into_iter()
        .flat_map(|f| pairs.iter().map(move |p| (f, p)))
        .collect();
    jobs.par_iter()
        .map(|(flavor, (ma, mb))| {
            let (a, b) = (mono_poly(ma), mono_poly(mb));
            let ab = wb.star_product(&a, &b, *flavor)?;
            let ba = wb.star_product(&b, &a, *flavor)?;
            let top = ma.degree() + mb.degree();
            let mut ok = ab.homogeneous_component(top) == a.mul(&b)?;
            if top >= 1 {
                let first = ab.sub(&ba)?.homogeneous_component(top - 1);
                ok &= first == poisson_bracket(wb.structure(), &a, &b)?;
            }
            Ok(CaseRecord::new(format!("{flavor:?}: {} , {}", label(wb, &a), label(wb, &b)), ok))
        })
        .collect()
}

/// Invariant basis polynomials of every degree up to `d`.
fn invariant_basis_up_to(wb: &Workbench, d: u32) -> Result<Vec<SymPolynomial>> {
    let mut out = Vec::new();
    for k in 0..=d {
        out.extend(wb.subspaces().invariants(k)?.basis_polynomials());
    }
    Ok(out)
}

fn degree_of(f: &SymPolynomial) -> u32 {
    f.degree().unwrap_or(0)
}

fn check_duflo_hom(wb: &Workbench, d: u32) -> Result<Vec<CaseRecord>> {
    let inv = invariant_basis_up_to(wb, d)?;
    let mut pairs = Vec::new();
    for a in &inv {
        for b in &inv {
            if degree_of(a) + degree_of(b) <= d {
                pairs.push((a, b));
            }
        }
    }
    pairs
        .par_iter()
        .map(|(a, b)| {
            let lhs = wb.enveloping().product(&wb.duflo_map(a)?, &wb.duflo_map(b)?)?;
            let rhs = wb.duflo_map(&a.mul(b)?)?;
            let mut case = CaseRecord::new(format!("({}) , ({})", label(wb, a), label(wb, b)), lhs == rhs);
            case.alpha = Some(a.to_json());
            case.beta = Some(b.to_json());
            Ok(case)
        })
        .collect()
}

fn witness_json(defect: &Defect) -> Vec<(String, String)> {
    defect
        .witness_terms()
        .into_iter()
        .map(|(l, c)| (l, format_rational(&c)))
        .collect()
}

/// The `extract-c` grid: every invariant basis element `α` and every
/// monomial `β` of degree at most `d`. With `compat`, additionally checks the
/// coinvariant identity and recomputes both sides of
/// `φ_D(α·β + c) = φ_D(α) φ_D(β)` along independent paths.
fn check_defects(wb: &Workbench, d: u32, compat: bool) -> Result<Vec<CaseRecord>> {
    let inv = invariant_basis_up_to(wb, d)?;
    let betas = Monomial::all_up_to_degree(wb.dim(), d);
    let grid: Vec<(&SymPolynomial, &Monomial)> =
        inv.iter().flat_map(|a| betas.iter().map(move |b| (a, b))).collect();
    grid.par_iter()
        .map(|(alpha, mb)| {
            let beta = mono_poly(mb);
            let defect = wb.extract_c(alpha, &beta)?;
            let containment = defect.containment();
            let mut outcome = match containment {
                Containment::GSpan if defect.reconstructs() => Status::Pass,
                Containment::SSpan if defect.reconstructs() => Status::Flag,
                _ => Status::Fail,
            };
            let mut notes = Vec::new();
            if compat {
                let product = alpha.mul(&beta)?;
                let star = product.add(&defect.c)?;
                for (k, part) in star.components() {
                    let lhs = wb.subspaces().coinvariant_class(&part, k)?;
                    let rhs = wb.subspaces().coinvariant_class(&product.homogeneous_component(k), k)?;
                    if lhs != rhs {
                        outcome = Status::Fail;
                        notes.push(format!("coinvariant classes differ in degree {k}"));
                    }
                }
                let left = wb.duflo_map(&star)?;
                let right = wb.enveloping().product(&wb.duflo_map(alpha)?, &wb.duflo_map(&beta)?)?;
                if left != right {
                    outcome = Status::Fail;
                    notes.push("phi_D(a.b + c) != phi_D(a) phi_D(b)".to_string());
                }
            }
            let mut case = CaseRecord::new(format!("({}) , {}", label(wb, alpha), label(wb, &beta)), true);
            case.outcome = outcome;
            case.alpha = Some(alpha.to_json());
            case.beta = Some(beta.to_json());
            case.c = Some(defect.c.to_json());
            case.witness = Some(witness_json(&defect));
            case.containment = Some(containment);
            if !notes.is_empty() {
                case.detail = Some(notes.join("; "));
            }
            Ok(case)
        })
        .collect()
}

fn check_commutant(wb: &Workbench, d: u32) -> Result<Vec<CaseRecord>> {
    let pairs = monomial_pairs(wb.dim(), d, false);
    let jobs: Vec<(StarFlavor, &(Monomial, Monomial))> = [StarFlavor::Gutt, StarFlavor::Duflo]
        .into_iter()
        .flat_map(|f| pairs.iter().map(move |p| (f, p)))
        .collect();
    jobs.par_iter()
        .map(|(flavor, (ma, mb))| {
            let (a, b) = (mono_poly(ma), mono_poly(mb));
            let comm = wb.star_commutator(&a, &b, *flavor)?;
            let mut ok = true;
            let mut missing = Vec::new();
            for (k, part) in comm.components() {
                if !wb.subspaces().full_span(k)?.contains(&part)? {
                    ok = false;
                    missing.push(k.to_string());
                }
            }
            let case = CaseRecord::new(format!("{flavor:?}: [{} , {}]", label(wb, &a), label(wb, &b)), ok);
            Ok(if missing.is_empty() {
                case
            } else {
                case.detail(format!("outside the bracket span in degrees {}", missing.join(", ")))
            })
        })
        .collect()
}

fn check_semisimple(wb: &Workbench, d: u32) -> Result<Vec<CaseRecord>> {
    (0..=d)
        .into_par_iter()
        .map(|k| {
            let spaces = wb.subspaces();
            let inv = spaces.invariants(k)?;
            let g_span = spaces.g_span(k)?;
            let full = spaces.full_span(k)?;
            let total = component_dim(wb.dim(), k);
            let meet_g = inv.basis().intersection_dim(g_span.basis())?;
            let meet_full = inv.basis().intersection_dim(full.basis())?;
            let ok = inv.dim() + g_span.dim() == total
                && meet_g == 0
                && inv.dim() + full.dim() == total
                && meet_full == 0;
            Ok(CaseRecord::new(format!("degree {k}"), ok).detail(format!(
                "dim S^k = {total}, invariants = {}, {{g,S}} = {}, {{S,S}} = {}, intersections = {meet_g}/{meet_full}",
                inv.dim(),
                g_span.dim(),
                full.dim()
            )))
        })
        .collect()
}

fn check_odd_traces(wb: &Workbench, d: u32) -> Result<Vec<CaseRecord>> {
    let inv = invariant_basis_up_to(wb, d)?;
    let mut cases = Vec::new();
    for k in (1..=5).step_by(2) {
        let tr = wb.trace(k)?;
        for f in &inv {
            let image = apply_operator(&tr, f)?;
            let case = CaseRecord::new(format!("Tr_{k} on {}", label(wb, f)), image.is_zero());
            cases.push(if image.is_zero() {
                case
            } else {
                case.detail(format!("counterexample: Tr_{k} gives {}", label(wb, &image)))
            });
        }
    }
    Ok(cases)
}

fn check_coinvariant_dims(wb: &Workbench, d: u32) -> Result<Vec<CaseRecord>> {
    (0..=d)
        .into_par_iter()
        .map(|k| {
            let spaces = wb.subspaces();
            let inv = spaces.invariants(k)?;
            let g_span = spaces.g_span(k)?;
            let full = spaces.full_span(k)?;
            let total = component_dim(wb.dim(), k);
            let contained = full.basis().intersection_dim(g_span.basis())? == g_span.dim();
            let mut central = true;
            for f in inv.basis_polynomials() {
                for i in 0..wb.dim() {
                    central &= adjoint_action(wb.structure(), i, &f)?.is_zero();
                }
            }
            Ok(CaseRecord::new(format!("degree {k}"), contained && central).detail(format!(
                "dim S^k = {total}, invariants = {}, {{g,S}} = {}, {{S,S}} = {}, coinvariants = {}",
                inv.dim(),
                g_span.dim(),
                full.dim(),
                total - g_span.dim()
            )))
        })
        .collect()
}

/// The acceptance battery for a suite run at degree `d` (default 4): PBW
/// checks at `d + 1`, star checks at `d − 1`, defect grids at `d`, the
/// Duflo homomorphism at `2d` on sl2 and `d` elsewhere, the semisimple
/// decomposition and odd traces at `d + 2`.
pub fn suite_specs(d: u32, seed: u64) -> Vec<CheckSpec> {
    let mut specs = Vec::new();
    for &alg in liealg::SUITE_CATALOG {
        let star = d.saturating_sub(1);
        let hom = if alg == "sl2" { 2 * d } else { d };
        for (check, degree) in [
            (CheckId::Jacobi, d),
            (CheckId::PbwRoundtrip, d + 1),
            (CheckId::PbwModuleMap, d + 1),
            (CheckId::StarAssoc, star),
            (CheckId::StarFirstOrder, star),
            (CheckId::Commutant, star),
            (CheckId::DufloHom, hom),
            (CheckId::H0Compat, d),
            (CheckId::OddTraces, d + 2),
            (CheckId::CoinvariantDims, d),
        ] {
            specs.push(CheckSpec::new(check, alg, degree).with_seed(seed));
        }
        if alg == "sl2" {
            specs.push(CheckSpec::new(CheckId::SemisimpleDecomp, alg, d + 2).with_seed(seed));
        }
    }
    specs
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub max_degree: u32,
    pub seed: u64,
    pub status: Status,
    pub reports: Vec<Report>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite json")
    }
}

/// Runs [`suite_specs`], one workbench per algebra, algebras in parallel.
pub fn run_suite(d: u32, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let specs = suite_specs(d, seed);
    let per_algebra: Vec<Vec<Report>> = liealg::SUITE_CATALOG
        .par_iter()
        .map(|&alg| {
            let wb = Workbench::new(liealg::catalog(alg)?);
            specs
                .iter()
                .filter(|s| s.algebra == alg)
                .map(|s| run_check_on(&wb, s))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let reports: Vec<Report> = per_algebra.into_iter().flatten().collect();
    let status = reports.iter().map(|r| r.status).max().unwrap_or(Status::Pass);
    Ok(SuiteReport { max_degree: d, seed, status, reports, wall_time: start.elapsed() })
}
