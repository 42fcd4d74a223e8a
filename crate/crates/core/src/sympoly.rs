//! The symmetric algebra `S(g)` with its Kostant–Kirillov Poisson bracket,
//! constant-coefficient operators from `S(g*)`, and the graded subspaces
//! (invariants, bracket spans, coinvariant quotients) used by the checks.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::marker::PhantomData;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::exactlin::{format_rational, kernel_basis, parse_rational, RationalMatrix, SubspaceBasis, Q};
use crate::liealg::StructureConstants;

/// Exponent vector over the algebra's basis.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors compared lexicographically, so `x_0 > x_1 > ...` within a degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(dim: usize) -> Self {
        Monomial { exps: vec![0; dim], degree: 0 }
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut exps = vec![0; dim];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn with_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.degree += 1;
        m
    }

    /// `self / x_i`, if `x_i` divides it.
    pub fn without_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.degree -= 1;
        Some(m)
    }

    /// Generator indices with multiplicity, weakly increasing.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for (i, &e) in self.exps.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, e as usize));
        }
        out
    }

    pub fn from_letters(dim: usize, letters: &[usize]) -> Monomial {
        let mut exps = vec![0; dim];
        for &l in letters {
            exps[l] += 1;
        }
        Monomial::new(exps)
    }

    /// All monomials of degree `k`, in descending order.
    pub fn all_of_degree(dim: usize, k: u32) -> Vec<Monomial> {
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(Monomial::new(cur.clone()));
                cur[pos] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        if dim == 0 {
            return if k == 0 { vec![Monomial::one(0)] } else { Vec::new() };
        }
        let mut out = Vec::new();
        rec(0, k, &mut vec![0; dim], &mut out);
        out
    }

    /// All monomials of degree at most `k`, ascending.
    pub fn all_up_to_degree(dim: usize, k: u32) -> Vec<Monomial> {
        (0..=k)
            .flat_map(|d| Monomial::all_of_degree(dim, d).into_iter().rev())
            .collect()
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.degree == 0 {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// Marker for polynomials on `g*`, i.e. elements of `S(g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primal {}

/// Marker for elements of `S(g*)`, acting on `S(g)` as differential operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dual {}

/// Sparse polynomial with exact coefficients and no stored zeros.
pub struct Polynomial<V> {
    dim: usize,
    terms: BTreeMap<Monomial, Q>,
    _space: PhantomData<V>,
}

pub type SymPolynomial = Polynomial<Primal>;
pub type DualPolynomial = Polynomial<Dual>;

impl<V> Clone for Polynomial<V> {
    fn clone(&self) -> Self {
        Polynomial { dim: self.dim, terms: self.terms.clone(), _space: PhantomData }
    }
}

impl<V> PartialEq for Polynomial<V> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.terms == other.terms
    }
}

impl<V> Eq for Polynomial<V> {}

impl<V> fmt::Debug for Polynomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.dim).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

impl<V> Polynomial<V> {
    pub fn zero(dim: usize) -> Self {
        Polynomial { dim, terms: BTreeMap::new(), _space: PhantomData }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Q::one())
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        Self::from_monomial(Monomial::one(dim), c)
    }

    pub fn var(dim: usize, i: usize) -> Self {
        Self::from_monomial(Monomial::var(dim, i), Q::one())
    }

    pub fn from_monomial(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero(m.dim());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            check_dim(dim, m.dim())?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Highest total degree present; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    pub fn homogeneous_component(&self, k: u32) -> Self {
        let mut p = Self::zero(self.dim);
        for (m, c) in &self.terms {
            if m.degree() == k {
                p.terms.insert(m.clone(), c.clone());
            }
        }
        p
    }

    /// Nonzero graded components keyed by degree.
    pub fn components(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Self::zero(self.dim))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), -c.clone());
        }
        Ok(p)
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
            _space: PhantomData,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// Commutative product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut p = Self::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(p)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.dim);
        for _ in 0..n {
            out = out.mul(self).expect("same dimension");
        }
        out
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut p = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if let Some(lower) = m.without_var(i) {
                p.terms.insert(lower, c * Q::from_integer(BigInt::from(e)));
            }
        }
        p
    }

    /// Coordinates in the monomial basis of a graded component.
    pub fn coordinates(&self, basis: &MonomialBasis) -> Result<Vec<Q>> {
        check_dim(basis.dim, self.dim)?;
        let mut v = vec![Q::zero(); basis.len()];
        for (m, c) in &self.terms {
            let idx = basis.index_of(m).ok_or(Error::NotHomogeneous(basis.degree))?;
            v[idx] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coordinates(basis: &MonomialBasis, coords: &[Q]) -> Self {
        let mut p = Self::zero(basis.dim);
        for (m, c) in basis.monomials.iter().zip(coords) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Human-readable form using the given generator names, highest terms first.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.display(names);
            if m.degree() == 0 {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", format_rational(&abs), mono));
            }
        }
        out
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { exps: m.exps.clone(), coeff: format_rational(c) })
                .collect(),
        }
    }

    pub fn from_json(dim: usize, json: &PolyJson) -> Result<Self> {
        let mut p = Self::zero(dim);
        for t in &json.terms {
            check_dim(dim, t.exps.len())?;
            p.add_term(Monomial::new(t.exps.clone()), parse_rational(&t.coeff)?);
        }
        Ok(p)
    }

    pub fn from_json_str(dim: usize, s: &str) -> Result<Self> {
        Self::from_json(dim, &serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("polynomial json")
    }
}

/// On-disk form of a polynomial; exponents are over the algebra's basis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

/// The monomial basis of one graded component, in descending order.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    dim: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(dim: usize, degree: u32) -> Self {
        let monomials = Monomial::all_of_degree(dim, degree);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialBasis { dim, degree, monomials, index }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// `dim S^k(g) = C(n + k − 1, k)`.
pub fn component_dim(n: usize, k: u32) -> usize {
    if n == 0 {
        return usize::from(k == 0);
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 + i) / (i + 1);
    }
    acc as usize
}

/// Kostant–Kirillov bracket
/// `{f, h} = Σ_{i,j} [x_i, x_j] ∂_i f ∂_j h`.
pub fn poisson_bracket(
    sc: &StructureConstants,
    f: &SymPolynomial,
    h: &SymPolynomial,
) -> Result<SymPolynomial> {
    let n = sc.dim();
    check_dim(n, f.dim())?;
    check_dim(n, h.dim())?;
    let df: Vec<SymPolynomial> = (0..n).map(|i| f.partial(i)).collect();
    let dh: Vec<SymPolynomial> = (0..n).map(|j| h.partial(j)).collect();
    let mut out = SymPolynomial::zero(n);
    for i in 0..n {
        if df[i].is_zero() {
            continue;
        }
        for j in 0..n {
            let br = sc.bracket(i, j);
            if br.is_empty() || dh[j].is_zero() {
                continue;
            }
            let prod = df[i].mul(&dh[j])?;
            for (k, c) in br {
                for (m, v) in prod.terms() {
                    out.add_term(m.with_var(*k), c * v);
                }
            }
        }
    }
    Ok(out)
}

/// `{x_i, f} = Σ_j [x_i, x_j] ∂_j f`.
pub fn adjoint_action(sc: &StructureConstants, i: usize, f: &SymPolynomial) -> Result<SymPolynomial> {
    let n = sc.dim();
    check_dim(n, f.dim())?;
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, dim: n });
    }
    let mut out = SymPolynomial::zero(n);
    for (m, c) in f.terms() {
        for j in 0..n {
            let e = m.exps()[j];
            if e == 0 {
                continue;
            }
            let br = sc.bracket(i, j);
            if br.is_empty() {
                continue;
            }
            let lower = m.without_var(j).expect("exponent checked");
            let scale = c * Q::from_integer(BigInt::from(e));
            for (k, ck) in br {
                out.add_term(lower.with_var(*k), &scale * ck);
            }
        }
    }
    Ok(out)
}

/// Whether every adjoint action on `f` vanishes.
pub fn is_invariant(sc: &StructureConstants, f: &SymPolynomial) -> Result<bool> {
    for i in 0..sc.dim() {
        if !adjoint_action(sc, i, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Applies a constant-coefficient operator: the dual monomial
/// `Π (x_i*)^{a_i}` acts as `Π ∂_i^{a_i}`.
pub fn apply_operator(op: &DualPolynomial, f: &SymPolynomial) -> Result<SymPolynomial> {
    check_dim(op.dim(), f.dim())?;
    let mut out = SymPolynomial::zero(f.dim());
    for (a, ca) in op.terms() {
        for (b, cb) in f.terms() {
            if b.degree() < a.degree() {
                continue;
            }
            let mut falling = BigInt::one();
            let mut exps = Vec::with_capacity(b.dim());
            let mut divisible = true;
            for (&ai, &bi) in a.exps().iter().zip(b.exps()) {
                if ai > bi {
                    divisible = false;
                    break;
                }
                for t in 0..ai {
                    falling *= bi - t;
                }
                exps.push(bi - ai);
            }
            if divisible {
                out.add_term(Monomial::new(exps), ca * cb * Q::from_integer(falling));
            }
        }
    }
    Ok(out)
}

/// Which subspace of a graded component a [`GradedSubspace`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubspaceFlavor {
    Invariants,
    /// `{g, S(g)}`: spanned by `{x_i, m}`.
    GBracketSpan,
    /// `{S(g), S(g)}`: spanned by `{m_1, m_2}`.
    FullBracketSpan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BracketFlavor {
    G,
    Full,
}

impl From<BracketFlavor> for SubspaceFlavor {
    fn from(f: BracketFlavor) -> Self {
        match f {
            BracketFlavor::G => SubspaceFlavor::GBracketSpan,
            BracketFlavor::Full => SubspaceFlavor::FullBracketSpan,
        }
    }
}

/// A subspace of `S^k(g)` together with the labelled generators it was
/// built from.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    pub degree: u32,
    pub flavor: SubspaceFlavor,
    coords: Arc<MonomialBasis>,
    labels: Vec<String>,
    generators: Vec<SymPolynomial>,
    basis: SubspaceBasis,
}

impl GradedSubspace {
    fn build(
        degree: u32,
        flavor: SubspaceFlavor,
        coords: Arc<MonomialBasis>,
        labelled: Vec<(String, SymPolynomial)>,
    ) -> Result<Self> {
        let mut labels = Vec::with_capacity(labelled.len());
        let mut generators = Vec::with_capacity(labelled.len());
        let mut vectors = Vec::with_capacity(labelled.len());
        for (label, g) in labelled {
            vectors.push(g.coordinates(&coords)?);
            labels.push(label);
            generators.push(g);
        }
        let basis = SubspaceBasis::from_spanning_set(coords.len(), vectors)?;
        Ok(GradedSubspace { degree, flavor, coords, labels, generators, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn monomial_basis(&self) -> &MonomialBasis {
        &self.coords
    }

    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, &SymPolynomial)> {
        self.labels.iter().map(String::as_str).zip(&self.generators)
    }

    /// The RREF basis rows as polynomials.
    pub fn basis_polynomials(&self) -> Vec<SymPolynomial> {
        self.basis
            .basis_rows()
            .iter()
            .map(|row| SymPolynomial::from_coordinates(&self.coords, row))
            .collect()
    }

    pub fn contains(&self, f: &SymPolynomial) -> Result<bool> {
        if !f.is_homogeneous(self.degree) {
            return Err(Error::NotHomogeneous(self.degree));
        }
        self.basis.contains(&f.coordinates(&self.coords)?)
    }

    /// Nonzero coefficients over the labelled generators reconstructing `f`.
    pub fn membership(&self, f: &SymPolynomial) -> Result<Option<Witness>> {
        if !f.is_homogeneous(self.degree) {
            return Err(Error::NotHomogeneous(self.degree));
        }
        let Some(w) = self.basis.membership(&f.coordinates(&self.coords)?)? else {
            return Ok(None);
        };
        let terms = w
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| WitnessTerm { generator: i, label: self.labels[i].clone(), coeff: c })
            .collect();
        Ok(Some(Witness { terms }))
    }

    /// `Σ coeff · generator` for a witness of this subspace.
    pub fn reconstruct(&self, witness: &Witness) -> SymPolynomial {
        let mut out = SymPolynomial::zero(self.coords.dim);
        for t in &witness.terms {
            for (m, c) in self.generators[t.generator].terms() {
                out.add_term(m.clone(), c * &t.coeff);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTerm {
    pub generator: usize,
    pub label: String,
    pub coeff: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Witness {
    pub terms: Vec<WitnessTerm>,
}

/// Joint kernel of the adjoint actions on `S^k(g)`.
pub fn invariants_basis(sc: &StructureConstants, k: u32) -> Result<GradedSubspace> {
    let n = sc.dim();
    let coords = Arc::new(MonomialBasis::new(n, k));
    let width = coords.len();
    let mut stacked = RationalMatrix::zeros(n * width, width);
    for (col, m) in coords.monomials().iter().enumerate() {
        let f = SymPolynomial::from_monomial(m.clone(), Q::one());
        for i in 0..n {
            let image = adjoint_action(sc, i, &f)?;
            for (mm, c) in image.terms() {
                let row = coords.index_of(mm).expect("adjoint action preserves degree");
                stacked.set(i * width + row, col, c.clone());
            }
        }
    }
    let kernel = kernel_basis(&stacked);
    let labelled = kernel
        .basis_rows()
        .iter()
        .enumerate()
        .map(|(t, row)| (format!("inv{k}[{t}]"), SymPolynomial::from_coordinates(&coords, row)))
        .collect();
    GradedSubspace::build(k, SubspaceFlavor::Invariants, coords, labelled)
}

/// Span of brackets landing in `S^k(g)`: `{x_i, m}` with `deg m = k` for the
/// g-flavor, `{m_1, m_2}` with `deg m_1 + deg m_2 = k + 1` for the full one.
pub fn bracket_span(sc: &StructureConstants, k: u32, flavor: BracketFlavor) -> Result<GradedSubspace> {
    let n = sc.dim();
    let names = sc.basis_names();
    let coords = Arc::new(MonomialBasis::new(n, k));
    let mut labelled = Vec::new();
    match flavor {
        BracketFlavor::G => {
            for m in Monomial::all_of_degree(n, k) {
                let f = SymPolynomial::from_monomial(m.clone(), Q::one());
                for i in 0..n {
                    let g = adjoint_action(sc, i, &f)?;
                    if !g.is_zero() {
                        labelled.push((format!("{{{}, {}}}", names[i], m.display(names)), g));
                    }
                }
            }
        }
        BracketFlavor::Full => {
            for d1 in 1..=k.div_ceil(2) {
                let d2 = k + 1 - d1;
                let left = Monomial::all_of_degree(n, d1);
                let right = Monomial::all_of_degree(n, d2);
                for (a, m1) in left.iter().enumerate() {
                    // antisymmetry: only unordered pairs when the degrees agree
                    let start = if d1 == d2 { a + 1 } else { 0 };
                    for m2 in &right[start.min(right.len())..] {
                        let f = SymPolynomial::from_monomial(m1.clone(), Q::one());
                        let h = SymPolynomial::from_monomial(m2.clone(), Q::one());
                        let g = poisson_bracket(sc, &f, &h)?;
                        if !g.is_zero() {
                            let label = format!("{{{}, {}}}", m1.display(names), m2.display(names));
                            labelled.push((label, g));
                        }
                    }
                }
            }
        }
    }
    GradedSubspace::build(k, flavor.into(), coords, labelled)
}

/// Residue class of a homogeneous polynomial in the coinvariants
/// `S^k(g) / {g, S(g)}`, written on the non-pivot monomials of the bracket span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinvariantClass {
    pub degree: u32,
    pub complement: Vec<Monomial>,
    pub coords: Vec<Q>,
}

impl CoinvariantClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn representative(&self, dim: usize) -> SymPolynomial {
        let mut p = SymPolynomial::zero(dim);
        for (m, c) in self.complement.iter().zip(&self.coords) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

/// Projects `f` onto the canonical complement of `span` (which should be the
/// g-flavor bracket span of degree `k`).
pub fn coinvariant_projection(span: &GradedSubspace, f: &SymPolynomial) -> Result<CoinvariantClass> {
    let k = span.degree;
    if !f.is_homogeneous(k) {
        return Err(Error::NotHomogeneous(k));
    }
    let residue = span.basis.reduce(&f.coordinates(&span.coords)?)?;
    let mut is_pivot = vec![false; span.ambient_dim()];
    for &p in span.basis.pivot_cols() {
        is_pivot[p] = true;
    }
    let mut complement = Vec::new();
    let mut coords = Vec::new();
    for (i, m) in span.coords.monomials().iter().enumerate() {
        if !is_pivot[i] {
            complement.push(m.clone());
            coords.push(residue[i].clone());
        }
    }
    Ok(CoinvariantClass { degree: k, complement, coords })
}

/// Build-once cache of graded subspaces for one algebra.
#[derive(Debug)]
pub struct SubspaceCache {
    sc: Arc<StructureConstants>,
    spaces: RwLock<HashMap<(u32, SubspaceFlavor), Arc<GradedSubspace>>>,
}

impl SubspaceCache {
    pub fn new(sc: Arc<StructureConstants>) -> Self {
        SubspaceCache { sc, spaces: RwLock::new(HashMap::new()) }
    }

    pub fn get(&self, k: u32, flavor: SubspaceFlavor) -> Result<Arc<GradedSubspace>> {
        if let Some(s) = self.spaces.read().expect("subspace cache").get(&(k, flavor)) {
            return Ok(Arc::clone(s));
        }
        let built = Arc::new(match flavor {
            SubspaceFlavor::Invariants => invariants_basis(&self.sc, k)?,
            SubspaceFlavor::GBracketSpan => bracket_span(&self.sc, k, BracketFlavor::G)?,
            SubspaceFlavor::FullBracketSpan => bracket_span(&self.sc, k, BracketFlavor::Full)?,
        });
        let mut w = self.spaces.write().expect("subspace cache");
        Ok(Arc::clone(w.entry((k, flavor)).or_insert(built)))
    }

    pub fn invariants(&self, k: u32) -> Result<Arc<GradedSubspace>> {
        self.get(k, SubspaceFlavor::Invariants)
    }

    pub fn g_span(&self, k: u32) -> Result<Arc<GradedSubspace>> {
        self.get(k, SubspaceFlavor::GBracketSpan)
    }

    pub fn full_span(&self, k: u32) -> Result<Arc<GradedSubspace>> {
        self.get(k, SubspaceFlavor::FullBracketSpan)
    }

    /// Coinvariant class of a homogeneous polynomial of degree `k`.
    pub fn coinvariant_class(&self, f: &SymPolynomial, k: u32) -> Result<CoinvariantClass> {
        coinvariant_projection(&*self.g_span(k)?, f)
    }
}
