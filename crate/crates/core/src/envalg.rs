//! The universal enveloping algebra `U(g)` on its PBW basis.
//!
//! Elements are combinations of weakly increasing generator words. Arbitrary
//! words are brought to that form by the rewriting rule
//! `x_j x_i → x_i x_j + [x_j, x_i]` for `j > i`, which terminates because
//! every step lowers either the word length or its inversion count.
//!
//! Two routes to the normal form exist. [`Enveloping::rewrite`] applies the
//! rule literally with an explicit choice of redex and is kept as the
//! reference. [`Enveloping::normal_form`] builds words right to left by
//! inserting one generator at a time into an already ordered word, memoising
//! each `(generator, word)` insertion; this is what every product uses.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::exactlin::{format_rational, parse_rational, Q};
use crate::liealg::StructureConstants;
use crate::sympoly::{Monomial, SymPolynomial};

/// A generator word, ordered by length and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn to_monomial(&self, dim: usize) -> Monomial {
        Monomial::from_letters(dim, &self.0)
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for run in self.0.chunk_by(|a, b| a == b) {
            let name = &names[run[0]];
            parts.push(if run.len() == 1 { name.clone() } else { format!("{}^{}", name, run.len()) });
        }
        parts.join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn add_into(terms: &mut BTreeMap<Word, Q>, w: Word, c: Q) {
    if c.is_zero() {
        return;
    }
    match terms.entry(w) {
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

/// A formal combination of arbitrary words, before normal ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeWordExpression {
    dim: usize,
    terms: BTreeMap<Word, Q>,
}

impl FreeWordExpression {
    pub fn new(dim: usize) -> Self {
        FreeWordExpression { dim, terms: BTreeMap::new() }
    }

    pub fn word(dim: usize, letters: &[usize]) -> Result<Self> {
        let mut e = Self::new(dim);
        e.add_term(letters, Q::one())?;
        Ok(e)
    }

    pub fn add_term(&mut self, letters: &[usize], c: Q) -> Result<()> {
        if let Some(&bad) = letters.iter().find(|&&l| l >= self.dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim: self.dim });
        }
        add_into(&mut self.terms, Word(letters.to_vec()), c);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }
}

/// Element of `U(g)` in PBW normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct EnvElement {
    dim: usize,
    terms: BTreeMap<Word, Q>,
}

impl fmt::Debug for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.dim).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

impl EnvElement {
    pub fn zero(dim: usize) -> Self {
        EnvElement { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, Q::one())
    }

    pub fn scalar(dim: usize, c: Q) -> Self {
        let mut e = Self::zero(dim);
        add_into(&mut e.terms, Word::empty(), c);
        e
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.terms.insert(Word(vec![i]), Q::one());
        e
    }

    /// Builds an element from already ordered words.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<usize>, Q)>) -> Result<Self> {
        let mut e = Self::zero(dim);
        for (letters, c) in terms {
            let w = Word(letters);
            if !w.is_ordered() {
                return Err(Error::Parse(format!("word {w:?} is not weakly increasing")));
            }
            if let Some(&bad) = w.0.iter().find(|&&l| l >= dim) {
                return Err(Error::IndexOutOfRange { index: bad, dim });
            }
            add_into(&mut e.terms, w, c);
        }
        Ok(e)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Q)> + ExactSizeIterator {
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

    pub fn coeff(&self, letters: &[usize]) -> Q {
        self.terms.get(&Word(letters.to_vec())).cloned().unwrap_or_else(Q::zero)
    }

    /// Filtration degree: the longest word present.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut e = self.clone();
        e.add_scaled(other, &Q::one());
        Ok(e)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut e = self.clone();
        e.add_scaled(other, &-Q::one());
        Ok(e)
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut e = Self::zero(self.dim);
        e.add_scaled(self, s);
        e
    }

    fn add_scaled(&mut self, other: &Self, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            add_into(&mut self.terms, w.clone(), c * s);
        }
    }

    /// Top-degree part read as a polynomial: the principal symbol.
    pub fn top_symbol(&self) -> SymPolynomial {
        let mut p = SymPolynomial::zero(self.dim);
        if let Some(d) = self.degree() {
            for (w, c) in self.terms.iter().filter(|(w, _)| w.len() == d) {
                p.add_term(w.to_monomial(self.dim), c.clone());
            }
        }
        p
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&w.display(names));
            } else {
                out.push_str(&format!("{}*{}", format_rational(&abs), w.display(names)));
            }
        }
        out
    }

    pub fn to_json(&self) -> EnvJson {
        EnvJson {
            words: self
                .terms
                .iter()
                .map(|(w, c)| WordJson { word: w.0.clone(), coeff: format_rational(c) })
                .collect(),
        }
    }

    pub fn from_json(dim: usize, json: &EnvJson) -> Result<Self> {
        let terms = json
            .words
            .iter()
            .map(|t| Ok((t.word.clone(), parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(dim, terms)
    }

    pub fn from_json_str(dim: usize, s: &str) -> Result<Self> {
        Self::from_json(dim, &serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("element json")
    }
}

/// On-disk form of an element of `U(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvJson {
    pub words: Vec<WordJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordJson {
    pub word: Vec<usize>,
    pub coeff: String,
}

/// Which inversion the reference rewriter resolves first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    LeftmostInversion,
    RightmostInversion,
}

/// `U(g)` for one algebra, with its memo tables.
#[derive(Debug)]
pub struct Enveloping {
    sc: Arc<StructureConstants>,
    inserts: RwLock<HashMap<(usize, Word), Arc<EnvElement>>>,
    symmetrized: RwLock<HashMap<Monomial, Arc<EnvElement>>>,
}

impl Enveloping {
    pub fn new(sc: Arc<StructureConstants>) -> Self {
        Enveloping {
            sc,
            inserts: RwLock::new(HashMap::new()),
            symmetrized: RwLock::new(HashMap::new()),
        }
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn dim(&self) -> usize {
        self.sc.dim()
    }

    pub fn one(&self) -> EnvElement {
        EnvElement::one(self.dim())
    }

    pub fn generator(&self, i: usize) -> Result<EnvElement> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange { index: i, dim: self.dim() });
        }
        Ok(EnvElement::generator(self.dim(), i))
    }

    /// Normal form of `x_a · w` for an ordered word `w`.
    fn insert(&self, a: usize, w: &Word) -> Arc<EnvElement> {
        if w.0.first().is_none_or(|&first| a <= first) {
            let mut letters = Vec::with_capacity(w.len() + 1);
            letters.push(a);
            letters.extend_from_slice(&w.0);
            let mut e = EnvElement::zero(self.dim());
            e.terms.insert(Word(letters), Q::one());
            return Arc::new(e);
        }
        let key = (a, w.clone());
        if let Some(hit) = self.inserts.read().expect("insert memo").get(&key) {
            return Arc::clone(hit);
        }
        // x_a x_b rest = x_b (x_a rest) + [x_a, x_b] rest, with b = w[0] < a
        let b = w.0[0];
        let rest = Word(w.0[1..].to_vec());
        let moved = self.insert(a, &rest);
        let mut out = self.left_mul_generator(b, &moved);
        for (k, c) in self.sc.bracket(a, b) {
            out.add_scaled(&self.insert(*k, &rest), c);
        }
        let out = Arc::new(out);
        self.inserts
            .write()
            .expect("insert memo")
            .entry(key)
            .or_insert_with(|| Arc::clone(&out));
        out
    }

    /// `x_a · u` in normal form.
    pub fn left_mul_generator(&self, a: usize, u: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero(self.dim());
        for (w, c) in &u.terms {
            let part = self.insert(a, w);
            if part.terms.len() == 1 {
                let (pw, pc) = part.terms.iter().next().expect("one term");
                add_into(&mut out.terms, pw.clone(), pc * c);
            } else {
                out.add_scaled(&part, c);
            }
        }
        out
    }

    fn word_times(&self, letters: &[usize], u: &EnvElement) -> EnvElement {
        letters.iter().rev().fold(u.clone(), |acc, &a| self.left_mul_generator(a, &acc))
    }

    /// PBW normal form of an arbitrary word combination.
    pub fn normal_form(&self, expr: &FreeWordExpression) -> Result<EnvElement> {
        check_dim(self.dim(), expr.dim)?;
        let one = self.one();
        let mut out = EnvElement::zero(self.dim());
        for (w, c) in &expr.terms {
            out.add_scaled(&self.word_times(&w.0, &one), c);
        }
        Ok(out)
    }

    /// Literal application of the rewriting rule with the given redex choice.
    ///
    /// Words are processed largest first; each rewrite only produces smaller
    /// words, so every word is expanded at most once.
    pub fn rewrite(&self, expr: &FreeWordExpression, strategy: RewriteStrategy) -> Result<EnvElement> {
        check_dim(self.dim(), expr.dim)?;
        let mut pending = expr.terms.clone();
        let mut out = EnvElement::zero(self.dim());
        while let Some((w, c)) = pending.pop_last() {
            let inversions = (0..w.len().saturating_sub(1)).filter(|&p| w.0[p] > w.0[p + 1]);
            let pos = match strategy {
                RewriteStrategy::LeftmostInversion => inversions.min(),
                RewriteStrategy::RightmostInversion => inversions.max(),
            };
            let Some(p) = pos else {
                add_into(&mut out.terms, w, c);
                continue;
            };
            let (j, i) = (w.0[p], w.0[p + 1]);
            let mut swapped = w.0.clone();
            swapped.swap(p, p + 1);
            add_into(&mut pending, Word(swapped), c.clone());
            for (k, ck) in self.sc.bracket(j, i) {
                let mut shorter = Vec::with_capacity(w.len() - 1);
                shorter.extend_from_slice(&w.0[..p]);
                shorter.push(*k);
                shorter.extend_from_slice(&w.0[p + 2..]);
                add_into(&mut pending, Word(shorter), &c * ck);
            }
        }
        Ok(out)
    }

    pub fn product(&self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        check_dim(self.dim(), a.dim)?;
        check_dim(self.dim(), b.dim)?;
        let mut out = EnvElement::zero(self.dim());
        for (w, c) in &a.terms {
            out.add_scaled(&self.word_times(&w.0, b), c);
        }
        Ok(out)
    }

    pub fn commutator(&self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        self.product(a, b)?.sub(&self.product(b, a)?)
    }

    /// `x_i · u − u · x_i`.
    pub fn module_action(&self, i: usize, u: &EnvElement) -> Result<EnvElement> {
        self.commutator(&self.generator(i)?, u)
    }

    /// Symmetrization of a single monomial, using
    /// `sym(m) = Σ_i (a_i / k) · x_i · sym(m / x_i)`.
    fn symmetrize_monomial(&self, m: &Monomial) -> Arc<EnvElement> {
        if m.degree() <= 1 {
            let mut e = EnvElement::zero(self.dim());
            e.terms.insert(Word(m.letters()), Q::one());
            return Arc::new(e);
        }
        if let Some(hit) = self.symmetrized.read().expect("symmetrization memo").get(m) {
            return Arc::clone(hit);
        }
        let k = BigInt::from(m.degree());
        let mut out = EnvElement::zero(self.dim());
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let lower = self.symmetrize_monomial(&m.without_var(i).expect("x_i divides m"));
            let weight = Q::new(BigInt::from(e), k.clone());
            out.add_scaled(&self.left_mul_generator(i, &lower), &weight);
        }
        let out = Arc::new(out);
        self.symmetrized
            .write()
            .expect("symmetrization memo")
            .entry(m.clone())
            .or_insert_with(|| Arc::clone(&out));
        out
    }

    /// PBW symmetrization: a monomial `g_1 ⋯ g_k` maps to the average of
    /// its `k!` orderings, brought to normal form.
    pub fn pbw_symmetrize(&self, f: &SymPolynomial) -> Result<EnvElement> {
        check_dim(self.dim(), f.dim())?;
        let mut out = EnvElement::zero(self.dim());
        for (m, c) in f.terms() {
            out.add_scaled(&self.symmetrize_monomial(m), c);
        }
        Ok(out)
    }

    /// Inverse of [`Self::pbw_symmetrize`] by filtration recursion: peel off
    /// the top symbol, subtract its symmetrization, repeat.
    pub fn pbw_inverse(&self, u: &EnvElement) -> Result<SymPolynomial> {
        check_dim(self.dim(), u.dim)?;
        let mut rest = u.clone();
        let mut out = SymPolynomial::zero(self.dim());
        while !rest.is_zero() {
            let symbol = rest.top_symbol();
            rest = rest.sub(&self.pbw_symmetrize(&symbol)?)?;
            out = out.add(&symbol)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, q};
    use crate::liealg::{abelian, heisenberg3, sl2};

    const E: usize = 0;
    const H: usize = 1;
    const F: usize = 2;

    fn env(sc: StructureConstants) -> Enveloping {
        Enveloping::new(Arc::new(sc))
    }

    fn elem(dim: usize, terms: &[(&[usize], i64)]) -> EnvElement {
        EnvElement::from_terms(dim, terms.iter().map(|(w, c)| (w.to_vec(), q(*c)))).unwrap()
    }

    #[test]
    fn ordered_word_is_fixed() {
        let u = env(sl2());
        let w = FreeWordExpression::word(3, &[E, H, H, F]).unwrap();
        assert_eq!(u.normal_form(&w).unwrap(), elem(3, &[(&[E, H, H, F], 1)]));
    }

    #[test]
    fn fe_rewrites_once() {
        let u = env(sl2());
        let w = FreeWordExpression::word(3, &[F, E]).unwrap();
        let expected = elem(3, &[(&[E, F], 1), (&[H], -1)]);
        assert_eq!(u.normal_form(&w).unwrap(), expected);
        assert_eq!(u.rewrite(&w, RewriteStrategy::LeftmostInversion).unwrap(), expected);
    }

    #[test]
    fn strategies_agree_on_fhe() {
        let u = env(sl2());
        let w = FreeWordExpression::word(3, &[F, H, E]).unwrap();
        let left = u.rewrite(&w, RewriteStrategy::LeftmostInversion).unwrap();
        let right = u.rewrite(&w, RewriteStrategy::RightmostInversion).unwrap();
        assert_eq!(left, right);
        assert_eq!(u.normal_form(&w).unwrap(), left);
        // by hand: h e = e h + 2e, f e = e f - h, f h = h f + 2f
        assert_eq!(left, elem(3, &[(&[E, H, F], 1), (&[H, H], -1), (&[E, F], 4), (&[H], -2)]));
    }

    #[test]
    fn products_and_commutators() {
        let u = env(sl2());
        let e = u.generator(E).unwrap();
        let f = u.generator(F).unwrap();
        let h = u.generator(H).unwrap();
        assert_eq!(u.product(&u.one(), &e).unwrap(), e);
        assert_eq!(u.commutator(&e, &f).unwrap(), h);
        assert_eq!(u.commutator(&h, &e).unwrap(), e.scale(&q(2)));
        assert!(u.commutator(&h, &h).unwrap().is_zero());
        assert_eq!(u.module_action(E, &f).unwrap(), h);
    }

    #[test]
    fn abelian_product_is_polynomial() {
        let u = env(abelian(2));
        let a = elem(2, &[(&[0], 1), (&[1], 1)]);
        assert_eq!(u.product(&a, &a).unwrap(), elem(2, &[(&[0, 0], 1), (&[0, 1], 2), (&[1, 1], 1)]));
        assert!(u.module_action(0, &a).unwrap().is_zero());
    }

    #[test]
    fn heisenberg_center() {
        let u = env(heisenberg3());
        let z3 = elem(3, &[(&[2, 2, 2], 1)]);
        for i in 0..3 {
            assert!(u.module_action(i, &z3).unwrap().is_zero());
        }
    }

    #[test]
    fn symmetrization_examples() {
        let u = env(sl2());
        // φ(e f) = (ef + fe)/2 = ef - h/2
        let ef = SymPolynomial::from_monomial(Monomial::new(vec![1, 0, 1]), q(1));
        let expected = EnvElement::from_terms(3, [(vec![E, F], q(1)), (vec![H], frac(-1, 2))]).unwrap();
        assert_eq!(u.pbw_symmetrize(&ef).unwrap(), expected);
        assert_eq!(u.pbw_symmetrize(&ef.scale(&q(4))).unwrap(), elem(3, &[(&[E, F], 4), (&[H], -2)]));
        let h2 = SymPolynomial::from_monomial(Monomial::new(vec![0, 2, 0]), q(1));
        assert_eq!(u.pbw_symmetrize(&h2).unwrap(), elem(3, &[(&[H, H], 1)]));
    }

    #[test]
    fn inverse_of_ef() {
        let u = env(sl2());
        let inv = u.pbw_inverse(&elem(3, &[(&[E, F], 1)])).unwrap();
        let expected = SymPolynomial::from_terms(3, [
            (Monomial::new(vec![1, 0, 1]), q(1)),
            (Monomial::new(vec![0, 1, 0]), frac(1, 2)),
        ])
        .unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn rejects_unordered_words() {
        assert!(EnvElement::from_terms(3, [(vec![F, E], q(1))]).is_err());
        let bad = r#"{"words":[{"word":[2,0],"coeff":"1"}]}"#;
        assert!(EnvElement::from_json_str(3, bad).is_err());
        let ok = r#"{"words":[{"word":[0,2],"coeff":"-1/2"}]}"#;
        let e = EnvElement::from_json_str(3, ok).unwrap();
        assert_eq!(EnvElement::from_json_str(3, &e.to_json_string()).unwrap(), e);
    }

    #[test]
    fn dimension_mismatch() {
        let u = env(sl2());
        assert!(u.product(&EnvElement::one(2), &EnvElement::one(3)).is_err());
        assert!(u.module_action(3, &u.one()).is_err());
    }
}
