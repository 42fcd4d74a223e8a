//! The Duflo map and the star products it transports.
//!
//! `φ_D = φ_PBW ∘ φ_strange` with `φ_strange = exp(Σ_k α_2k Tr_2k)`, where
//! the `α_2k` are the Taylor coefficients of `½ log(sinh(x/2) / (x/2))` and
//! `Tr_2k` is the invariant polynomial `g ↦ tr (ad g)^{2k}` acting on `S(g)`
//! as a constant-coefficient differential operator. Every `Tr_2k` lowers
//! degree by `2k`, so all the exponentials below are finite sums.
//!
//! The star products on `S(g)` are defined by transport:
//! `a ⋆ b = T⁻¹(T(a) T(b))` with `T = φ_PBW` (Gutt) or `T = φ_D` (Duflo).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::envalg::{EnvElement, Enveloping};
use crate::error::{check_dim, Error, Result};
use crate::exactlin::Q;
use crate::liealg::StructureConstants;
use crate::sympoly::{
    adjoint_action, apply_operator, DualPolynomial, Monomial, SubspaceCache, SymPolynomial, Witness,
};

/// `α_2k` for `2k ≤ max_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DufloCoefficients {
    pub max_k: u32,
    pub alpha: BTreeMap<u32, Q>,
}

impl DufloCoefficients {
    pub fn get(&self, k: u32) -> Option<&Q> {
        self.alpha.get(&k)
    }
}

/// Coefficients of `½ log(sinh(x/2) / (x/2))` up to `x^max_k`.
///
/// `s(x) = Σ_m x^{2m} / (4^m (2m+1)!)` and `L = log s` solves `s L' = s'`,
/// i.e. `n L_n = n s_n − Σ_{j=1}^{n-1} j L_j s_{n−j}`.
pub fn duflo_coefficients(max_k: u32) -> Result<DufloCoefficients> {
    if max_k < 2 || !max_k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("max_k must be an even number >= 2, got {max_k}")));
    }
    let n = max_k as usize;
    let mut s = vec![Q::zero(); n + 1];
    let mut fact = BigInt::one();
    let mut four_pow = BigInt::one();
    for m in 0..=n / 2 {
        if m > 0 {
            fact *= BigInt::from(2 * m) * BigInt::from(2 * m + 1);
            four_pow *= 4;
        }
        s[2 * m] = Q::new(BigInt::one(), &four_pow * &fact);
    }
    let mut log = vec![Q::zero(); n + 1];
    for i in 1..=n {
        let mut acc = Q::from_integer(BigInt::from(i)) * &s[i];
        for j in 1..i {
            acc -= Q::from_integer(BigInt::from(j)) * &log[j] * &s[i - j];
        }
        log[i] = acc / Q::from_integer(BigInt::from(i));
    }
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let alpha = (1..=n)
        .filter(|i| i % 2 == 0)
        .map(|i| (i as u32, &log[i] * &half))
        .collect();
    debug_assert!((1..=n).filter(|i| i % 2 == 1).all(|i| log[i].is_zero()));
    Ok(DufloCoefficients { max_k, alpha })
}

/// `Tr_k`: the degree-`k` polynomial `t ↦ tr((Σ_i t_i ad x_i)^k)` on `g`,
/// as an element of `S^k(g*)`.
pub fn trace_element(sc: &StructureConstants, k: u32) -> Result<DualPolynomial> {
    if k == 0 {
        return Err(Error::InvalidParameter("trace elements start at k = 1".into()));
    }
    let n = sc.dim();
    // ad(t) has linear entries: (ad t)[r][c] = Σ_i t_i c_ic^r
    let mut linear: Vec<Vec<(usize, Q)>> = vec![Vec::new(); n * n];
    for i in 0..n {
        for c in 0..n {
            for (r, v) in sc.bracket(i, c) {
                linear[r * n + c].push((i, v.clone()));
            }
        }
    }
    let mut power: Vec<DualPolynomial> = (0..n * n)
        .map(|rc| {
            let mut p = DualPolynomial::zero(n);
            for (i, v) in &linear[rc] {
                p.add_term(Monomial::var(n, *i), v.clone());
            }
            p
        })
        .collect();
    for _ in 1..k {
        let mut next = vec![DualPolynomial::zero(n); n * n];
        for r in 0..n {
            for m in 0..n {
                let left = &power[r * n + m];
                if left.is_zero() {
                    continue;
                }
                for c in 0..n {
                    for (i, v) in &linear[m * n + c] {
                        let target = &mut next[r * n + c];
                        for (mono, coeff) in left.terms() {
                            target.add_term(mono.with_var(*i), coeff * v);
                        }
                    }
                }
            }
        }
        power = next;
    }
    let mut tr = DualPolynomial::zero(n);
    for i in 0..n {
        tr = tr.add(&power[i * n + i])?;
    }
    Ok(tr)
}

/// Which linear isomorphism `S(g) → U(g)` a star product is transported along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StarFlavor {
    Gutt,
    Duflo,
}

impl std::str::FromStr for StarFlavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gutt" => Ok(StarFlavor::Gutt),
            "duflo" => Ok(StarFlavor::Duflo),
            other => Err(Error::InvalidParameter(format!("unknown star flavor `{other}`"))),
        }
    }
}

/// Where a graded component of the defect was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Containment {
    /// In `{g, S(g)}`.
    #[serde(rename = "g-span")]
    GSpan,
    /// Only in `{S(g), S(g)}`.
    #[serde(rename = "S-span")]
    SSpan,
    #[serde(rename = "none")]
    None,
}

#[derive(Clone, Debug)]
pub struct DefectComponent {
    pub degree: u32,
    pub part: SymPolynomial,
    pub containment: Containment,
    /// Coefficients over the generators of the span named by `containment`.
    pub witness: Option<Witness>,
    /// Whether the witness was checked to rebuild `part` exactly.
    pub reconstructs: bool,
}

/// `c(α, β) = α ⋆ β − α·β` with per-degree bracket witnesses.
#[derive(Clone, Debug)]
pub struct Defect {
    pub c: SymPolynomial,
    pub components: Vec<DefectComponent>,
}

impl Defect {
    /// The weakest containment over all components; `GSpan` when `c = 0`.
    pub fn containment(&self) -> Containment {
        self.components.iter().map(|c| c.containment).max().unwrap_or(Containment::GSpan)
    }

    pub fn reconstructs(&self) -> bool {
        self.components.iter().all(|c| c.reconstructs)
    }

    /// All witness terms as `(generator label, coefficient)`, by degree.
    pub fn witness_terms(&self) -> Vec<(String, Q)> {
        self.components
            .iter()
            .filter_map(|c| c.witness.as_ref())
            .flat_map(|w| w.terms.iter().map(|t| (t.label.clone(), t.coeff.clone())))
            .collect()
    }
}

/// One Lie algebra together with `U(g)`, its graded subspaces and the
/// caches the Duflo pipeline needs. Safe to share across threads.
#[derive(Debug)]
pub struct Workbench {
    sc: Arc<StructureConstants>,
    env: Enveloping,
    spaces: SubspaceCache,
    traces: RwLock<HashMap<u32, Arc<DualPolynomial>>>,
    coefficients: Mutex<Option<DufloCoefficients>>,
    duflo_images: RwLock<HashMap<Monomial, Arc<EnvElement>>>,
}

impl Workbench {
    pub fn new(sc: StructureConstants) -> Self {
        let sc = Arc::new(sc);
        Workbench {
            env: Enveloping::new(Arc::clone(&sc)),
            spaces: SubspaceCache::new(Arc::clone(&sc)),
            sc,
            traces: RwLock::new(HashMap::new()),
            coefficients: Mutex::new(None),
            duflo_images: RwLock::new(HashMap::new()),
        }
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn dim(&self) -> usize {
        self.sc.dim()
    }

    pub fn names(&self) -> &[String] {
        self.sc.basis_names()
    }

    pub fn enveloping(&self) -> &Enveloping {
        &self.env
    }

    pub fn subspaces(&self) -> &SubspaceCache {
        &self.spaces
    }

    pub fn trace(&self, k: u32) -> Result<Arc<DualPolynomial>> {
        if let Some(t) = self.traces.read().expect("trace cache").get(&k) {
            return Ok(Arc::clone(t));
        }
        let t = Arc::new(trace_element(&self.sc, k)?);
        let mut w = self.traces.write().expect("trace cache");
        Ok(Arc::clone(w.entry(k).or_insert(t)))
    }

    pub fn coefficient(&self, two_k: u32) -> Result<Q> {
        let mut guard = self.coefficients.lock().expect("coefficient cache");
        if guard.as_ref().is_none_or(|c| c.max_k < two_k) {
            *guard = Some(duflo_coefficients(two_k.max(16))?);
        }
        Ok(guard.as_ref().and_then(|c| c.get(two_k)).cloned().unwrap_or_else(Q::zero))
    }

    /// `Σ_{2k ≤ degree} α_2k Tr_2k`: everything that can act nontrivially on
    /// polynomials of the given degree.
    pub fn strange_exponent(&self, degree: u32) -> Result<DualPolynomial> {
        let mut op = DualPolynomial::zero(self.dim());
        for two_k in (2..=degree).step_by(2) {
            let alpha = self.coefficient(two_k)?;
            op = op.add(&self.trace(two_k)?.scale(&alpha))?;
        }
        Ok(op)
    }

    fn exp_operator(&self, f: &SymPolynomial, sign: &Q) -> Result<SymPolynomial> {
        check_dim(self.dim(), f.dim())?;
        let Some(degree) = f.degree() else {
            return Ok(f.clone());
        };
        let op = self.strange_exponent(degree)?.scale(sign);
        if op.is_zero() {
            return Ok(f.clone());
        }
        let mut out = f.clone();
        let mut term = f.clone();
        let mut n = 1i64;
        loop {
            term = apply_operator(&op, &term)?.scale(&Q::new(BigInt::one(), BigInt::from(n)));
            if term.is_zero() {
                return Ok(out);
            }
            out = out.add(&term)?;
            n += 1;
        }
    }

    pub fn strange_map(&self, f: &SymPolynomial) -> Result<SymPolynomial> {
        self.exp_operator(f, &Q::one())
    }

    pub fn strange_inverse(&self, f: &SymPolynomial) -> Result<SymPolynomial> {
        self.exp_operator(f, &-Q::one())
    }

    fn duflo_monomial(&self, m: &Monomial) -> Result<Arc<EnvElement>> {
        if let Some(hit) = self.duflo_images.read().expect("duflo cache").get(m) {
            return Ok(Arc::clone(hit));
        }
        let f = SymPolynomial::from_monomial(m.clone(), Q::one());
        let image = Arc::new(self.env.pbw_symmetrize(&self.strange_map(&f)?)?);
        let mut w = self.duflo_images.write().expect("duflo cache");
        Ok(Arc::clone(w.entry(m.clone()).or_insert(image)))
    }

    /// `φ_D = φ_PBW ∘ φ_strange`.
    pub fn duflo_map(&self, f: &SymPolynomial) -> Result<EnvElement> {
        check_dim(self.dim(), f.dim())?;
        let mut out = EnvElement::zero(self.dim());
        for (m, c) in f.terms() {
            out = out.add(&self.duflo_monomial(m)?.scale(c))?;
        }
        Ok(out)
    }

    pub fn duflo_inverse(&self, u: &EnvElement) -> Result<SymPolynomial> {
        self.strange_inverse(&self.env.pbw_inverse(u)?)
    }

    pub fn pbw_map(&self, f: &SymPolynomial) -> Result<EnvElement> {
        self.env.pbw_symmetrize(f)
    }

    pub fn pbw_inverse(&self, u: &EnvElement) -> Result<SymPolynomial> {
        self.env.pbw_inverse(u)
    }

    pub fn transport(&self, f: &SymPolynomial, flavor: StarFlavor) -> Result<EnvElement> {
        match flavor {
            StarFlavor::Gutt => self.env.pbw_symmetrize(f),
            StarFlavor::Duflo => self.duflo_map(f),
        }
    }

    pub fn transport_back(&self, u: &EnvElement, flavor: StarFlavor) -> Result<SymPolynomial> {
        match flavor {
            StarFlavor::Gutt => self.env.pbw_inverse(u),
            StarFlavor::Duflo => self.duflo_inverse(u),
        }
    }

    /// `a ⋆ b = T⁻¹(T(a) · T(b))`.
    pub fn star_product(&self, a: &SymPolynomial, b: &SymPolynomial, flavor: StarFlavor) -> Result<SymPolynomial> {
        let prod = self.env.product(&self.transport(a, flavor)?, &self.transport(b, flavor)?)?;
        self.transport_back(&prod, flavor)
    }

    pub fn star_commutator(&self, a: &SymPolynomial, b: &SymPolynomial, flavor: StarFlavor) -> Result<SymPolynomial> {
        self.star_product(a, b, flavor)?.sub(&self.star_product(b, a, flavor)?)
    }

    /// Errors with [`Error::NotInvariant`] unless every `{x_i, α}` vanishes.
    pub fn require_invariant(&self, alpha: &SymPolynomial) -> Result<()> {
        for i in 0..self.dim() {
            if !adjoint_action(&self.sc, i, alpha)?.is_zero() {
                return Err(Error::NotInvariant { generator: i });
            }
        }
        Ok(())
    }

    /// The defect `c(α, β) = α ⋆ β − α·β` of the Duflo star product, with a
    /// witness per graded component: first over `{x_i, m}` generators, and
    /// only if that fails over `{m_1, m_2}` generators.
    pub fn extract_c(&self, alpha: &SymPolynomial, beta: &SymPolynomial) -> Result<Defect> {
        self.require_invariant(alpha)?;
        let star = self.star_product(alpha, beta, StarFlavor::Duflo)?;
        let c = star.sub(&alpha.mul(beta)?)?;
        let mut components = Vec::new();
        for (degree, part) in c.components() {
            let g_span = self.spaces.g_span(degree)?;
            let component = if let Some(w) = g_span.membership(&part)? {
                DefectComponent {
                    degree,
                    reconstructs: g_span.reconstruct(&w) == part,
                    containment: Containment::GSpan,
                    witness: Some(w),
                    part,
                }
            } else {
                let full = self.spaces.full_span(degree)?;
                match full.membership(&part)? {
                    Some(w) => DefectComponent {
                        degree,
                        reconstructs: full.reconstruct(&w) == part,
                        containment: Containment::SSpan,
                        witness: Some(w),
                        part,
                    },
                    None => DefectComponent {
                        degree,
                        reconstructs: false,
                        containment: Containment::None,
                        witness: None,
                        part,
                    },
                }
            };
            components.push(component);
        }
        Ok(Defect { c, components })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, q};
    use crate::liealg::{abelian, aff1, heisenberg3, sl2};

    fn casimir() -> SymPolynomial {
        SymPolynomial::from_terms(3, [
            (Monomial::new(vec![0, 2, 0]), q(1)),
            (Monomial::new(vec![1, 0, 1]), q(4)),
        ])
        .unwrap()
    }

    #[test]
    fn first_coefficients() {
        let c = duflo_coefficients(4).unwrap();
        assert_eq!(c.get(2), Some(&frac(1, 48)));
        assert_eq!(c.get(4), Some(&frac(-1, 5760)));
        assert_eq!(c.alpha.len(), 2);
        assert!(duflo_coefficients(3).is_err());
        assert!(duflo_coefficients(0).is_err());
    }

    #[test]
    fn traces_of_small_algebras() {
        for k in 1..5 {
            assert!(trace_element(&abelian(3), k).unwrap().is_zero());
            assert!(trace_element(&heisenberg3(), k).unwrap().is_zero());
        }
        let x = Monomial::var(2, 0);
        assert_eq!(trace_element(&aff1(), 1).unwrap(), DualPolynomial::from_monomial(x.clone(), q(1)));
        assert_eq!(trace_element(&aff1(), 2).unwrap(), DualPolynomial::from_monomial(x.mul(&x), q(1)));

        let killing = DualPolynomial::from_terms(3, [
            (Monomial::new(vec![0, 2, 0]), q(8)),
            (Monomial::new(vec![1, 0, 1]), q(8)),
        ])
        .unwrap();
        assert_eq!(trace_element(&sl2(), 2).unwrap(), killing);
    }

    #[test]
    fn strange_map_on_casimir() {
        let wb = Workbench::new(sl2());
        let expected = casimir().add(&SymPolynomial::one(3)).unwrap();
        assert_eq!(wb.strange_map(&casimir()).unwrap(), expected);
        assert_eq!(wb.strange_inverse(&expected).unwrap(), casimir());
    }

    #[test]
    fn strange_map_is_identity_without_traces() {
        let wb = Workbench::new(heisenberg3());
        let f = SymPolynomial::from_monomial(Monomial::new(vec![2, 1, 3]), q(5));
        assert_eq!(wb.strange_map(&f).unwrap(), f);
    }

    #[test]
    fn golden_casimir_image() {
        let wb = Workbench::new(sl2());
        let expected = EnvElement::from_terms(3, [
            (vec![1, 1], q(1)),
            (vec![0, 2], q(4)),
            (vec![1], q(-2)),
            (vec![], q(1)),
        ])
        .unwrap();
        let image = wb.duflo_map(&casimir()).unwrap();
        assert_eq!(image, expected);
        assert_eq!(wb.duflo_inverse(&image).unwrap(), casimir());
    }

    #[test]
    fn low_degree_duflo_is_pbw() {
        let wb = Workbench::new(sl2());
        for i in 0..3 {
            let x = SymPolynomial::var(3, i);
            assert_eq!(wb.duflo_map(&x).unwrap(), EnvElement::generator(3, i));
        }
        assert_eq!(wb.duflo_map(&SymPolynomial::one(3)).unwrap(), EnvElement::one(3));
    }

    #[test]
    fn gutt_commutator_of_generators() {
        let wb = Workbench::new(sl2());
        let e = SymPolynomial::var(3, 0);
        let f = SymPolynomial::var(3, 2);
        let h = SymPolynomial::var(3, 1);
        assert_eq!(wb.star_commutator(&e, &f, StarFlavor::Gutt).unwrap(), h);
    }

    #[test]
    fn abelian_star_is_commutative_product() {
        let wb = Workbench::new(abelian(2));
        let a = SymPolynomial::from_monomial(Monomial::new(vec![2, 1]), q(3));
        let b = SymPolynomial::var(2, 1).add(&SymPolynomial::one(2)).unwrap();
        for flavor in [StarFlavor::Gutt, StarFlavor::Duflo] {
            assert_eq!(wb.star_product(&a, &b, flavor).unwrap(), a.mul(&b).unwrap());
        }
    }

    #[test]
    fn defect_of_unit_is_zero() {
        let wb = Workbench::new(sl2());
        let beta = SymPolynomial::from_monomial(Monomial::new(vec![1, 1, 0]), q(1));
        let d = wb.extract_c(&SymPolynomial::one(3), &beta).unwrap();
        assert!(d.c.is_zero());
        assert!(d.witness_terms().is_empty());
        assert_eq!(d.containment(), Containment::GSpan);
    }

    #[test]
    fn casimir_times_e_defect_has_witness() {
        let wb = Workbench::new(sl2());
        let e = SymPolynomial::var(3, 0);
        let d = wb.extract_c(&casimir(), &e).unwrap();
        assert!(!d.c.is_zero());
        assert_eq!(d.containment(), Containment::GSpan);
        assert!(d.reconstructs());
    }

    #[test]
    fn non_invariant_alpha_is_rejected() {
        let wb = Workbench::new(sl2());
        let e = SymPolynomial::var(3, 0);
        assert!(matches!(wb.extract_c(&e, &e), Err(Error::NotInvariant { .. })));
    }

    #[test]
    fn flavor_parsing() {
        assert_eq!("gutt".parse::<StarFlavor>().unwrap(), StarFlavor::Gutt);
        assert!("moyal".parse::<StarFlavor>().is_err());
    }
}
