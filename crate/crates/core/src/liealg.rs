//! Finite-dimensional Lie algebras given by rational structure constants.
//!
//! Only the brackets `[x_i, x_j]` with `i < j` are supplied; the rest of the
//! table is derived by antisymmetry when the algebra is built. Indices follow
//! the input basis order, which is also the canonical order for monomials and
//! PBW words everywhere downstream.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, q, RationalMatrix, Q};

/// A linear combination `Σ_k c^k x_k`, sparse and sorted by `k`.
pub type LinearCombination = Vec<(usize, Q)>;

#[derive(Clone, PartialEq, Eq)]
pub struct StructureConstants {
    name: String,
    basis: Vec<String>,
    upper: BTreeMap<(usize, usize), LinearCombination>,
    /// Full `dim × dim` table derived from `upper`.
    table: Vec<LinearCombination>,
}

impl StructureConstants {
    /// Builds an algebra from its brackets with `i < j`. Repeated pairs are
    /// summed; zero coefficients are dropped.
    pub fn new<I>(name: impl Into<String>, basis: Vec<String>, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, LinearCombination)>,
    {
        let dim = basis.len();
        let mut seen = std::collections::HashSet::new();
        for b in &basis {
            if b.is_empty() || !seen.insert(b.as_str()) {
                return Err(Error::Parse(format!("basis names must be distinct and non-empty: `{b}`")));
            }
        }
        let mut upper: BTreeMap<(usize, usize), BTreeMap<usize, Q>> = BTreeMap::new();
        for (i, j, combo) in brackets {
            if i >= j {
                return Err(Error::Parse(format!("bracket ({i}, {j}) violates the i < j convention")));
            }
            if j >= dim {
                return Err(Error::IndexOutOfRange { index: j, dim });
            }
            let entry = upper.entry((i, j)).or_default();
            for (k, c) in combo {
                if k >= dim {
                    return Err(Error::IndexOutOfRange { index: k, dim });
                }
                *entry.entry(k).or_insert_with(Q::zero) += c;
            }
        }
        let upper: BTreeMap<_, LinearCombination> = upper
            .into_iter()
            .map(|(ij, m)| (ij, m.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>()))
            .filter(|(_, v)| !v.is_empty())
            .collect();

        let mut table = vec![Vec::new(); dim * dim];
        for (&(i, j), combo) in &upper {
            table[i * dim + j] = combo.clone();
            table[j * dim + i] = combo.iter().map(|(k, c)| (*k, -c.clone())).collect();
        }
        Ok(StructureConstants {
            name: name.into(),
            basis,
            upper,
            table,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// `[x_i, x_j]` as a sparse combination of basis elements.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.table[i * self.dim() + j]
    }

    /// The single structure constant `c_ij^k`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Q {
        self.bracket(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(Q::zero, |(_, c)| c.clone())
    }

    /// The brackets with `i < j` as supplied.
    pub fn upper_brackets(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Q)])> + '_ {
        self.upper.iter().map(|(&(i, j), c)| (i, j, c.as_slice()))
    }

    pub fn is_abelian(&self) -> bool {
        self.upper.is_empty()
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.coefficient(j, i, k) != -self.coefficient(i, j, k) {
                        return ValidationReport {
                            violation: Some(Violation::Antisymmetry { i, j, k }),
                        };
                    }
                }
            }
        }
        // antisymmetry makes the cyclic sum alternating, so i < j < l suffices
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let sum = self.jacobi_sum(i, j, l);
                    if let Some((m, value)) = sum.into_iter().enumerate().find(|(_, v)| !v.is_zero()) {
                        return ValidationReport {
                            violation: Some(Violation::Jacobi { i, j, l, m, value }),
                        };
                    }
                }
            }
        }
        ValidationReport { violation: None }
    }

    /// Coordinates of `[[x_i,x_j],x_l] + [[x_j,x_l],x_i] + [[x_l,x_i],x_j]`.
    fn jacobi_sum(&self, i: usize, j: usize, l: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
            for (k, c1) in self.bracket(a, b) {
                for (m, c2) in self.bracket(*k, c) {
                    out[*m] += c1 * c2;
                }
            }
        }
        out
    }

    /// Matrix of `ad x_i`: column `j` holds the coordinates of `[x_i, x_j]`.
    pub fn ad_matrix(&self, i: usize) -> Result<AdMatrix> {
        let n = self.dim();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        let mut m = RationalMatrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in self.bracket(i, j) {
                m.set(*k, j, c.clone());
            }
        }
        Ok(AdMatrix { generator: i, matrix: m })
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            name: self.name.clone(),
            dim: self.dim(),
            basis: self.basis.clone(),
            brackets: self
                .upper
                .iter()
                .map(|(&(i, j), c)| (i, j, c.iter().map(|(k, v)| (*k, format_rational(v))).collect()))
                .collect(),
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        if json.dim != json.basis.len() {
            return Err(Error::Parse(format!(
                "dim {} does not match {} basis names",
                json.dim,
                json.basis.len()
            )));
        }
        let brackets = json
            .brackets
            .iter()
            .map(|(i, j, combo)| {
                let combo = combo
                    .iter()
                    .map(|(k, c)| Ok((*k, parse_rational(c)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok((*i, *j, combo))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.name.clone(), json.basis.clone(), brackets)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("algebra json")
    }
}

impl fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())?;
        for (&(i, j), combo) in &self.upper {
            let rhs: Vec<String> = combo
                .iter()
                .map(|(k, c)| format!("{}·{}", format_rational(c), self.basis[*k]))
                .collect();
            write!(f, "; [{},{}] = {}", self.basis[i], self.basis[j], rhs.join(" + "))?;
        }
        Ok(())
    }
}

/// On-disk form of an algebra. Coefficients are decimal-integer fraction
/// strings such as `"2"` or `"-1/3"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<(usize, usize, Vec<(usize, String)>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Antisymmetry { i: usize, j: usize, k: usize },
    /// Component `m` of the Jacobi sum for the triple `(i, j, l)` is `value`.
    Jacobi { i: usize, j: usize, l: usize, m: usize, value: Q },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    pub fn antisymmetry_ok(&self) -> bool {
        !matches!(self.violation, Some(Violation::Antisymmetry { .. }))
    }

    pub fn jacobi_ok(&self) -> bool {
        self.passed()
    }

    pub fn describe(&self, sc: &StructureConstants) -> String {
        let b = sc.basis_names();
        match &self.violation {
            None => "antisymmetry and Jacobi hold".to_string(),
            Some(Violation::Antisymmetry { i, j, k }) => {
                format!("antisymmetry fails at ({}, {}; {})", b[*i], b[*j], b[*k])
            }
            Some(Violation::Jacobi { i, j, l, m, value }) => format!(
                "Jacobi fails on ({}, {}, {}): component {} of the cyclic sum is {}",
                b[*i],
                b[*j],
                b[*l],
                b[*m],
                format_rational(value)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdMatrix {
    pub generator: usize,
    pub matrix: RationalMatrix,
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn abelian(n: usize) -> StructureConstants {
    StructureConstants::new(format!("abelian({n})"), names("a", n), []).expect("abelian")
}

/// `[x, y] = z`.
pub fn heisenberg3() -> StructureConstants {
    let basis = vec!["x".into(), "y".into(), "z".into()];
    StructureConstants::new("heisenberg3", basis, [(0, 1, vec![(2, q(1))])]).expect("heisenberg3")
}

/// The two-dimensional non-abelian algebra, `[x, y] = y`.
pub fn aff1() -> StructureConstants {
    let basis = vec!["x".into(), "y".into()];
    StructureConstants::new("aff1", basis, [(0, 1, vec![(1, q(1))])]).expect("aff1")
}

/// `sl_2` in the order `e < h < f`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> StructureConstants {
    let basis = vec!["e".into(), "h".into(), "f".into()];
    StructureConstants::new(
        "sl2",
        basis,
        [
            (0, 1, vec![(0, q(-2))]),
            (0, 2, vec![(1, q(1))]),
            (1, 2, vec![(2, q(-2))]),
        ],
    )
    .expect("sl2")
}

/// `gl_n` on the matrix units `E_ab` (row-major), with
/// `[E_ab, E_cd] = δ_bc E_ad − δ_da E_cb`.
pub fn gl(n: usize) -> Result<StructureConstants> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidParameter(format!("gl(n) is catalogued for 1 <= n <= 3, got {n}")));
    }
    let idx = |a: usize, b: usize| a * n + b;
    let mut basis = Vec::new();
    for a in 0..n {
        for b in 0..n {
            basis.push(format!("E{}{}", a + 1, b + 1));
        }
    }
    let mut brackets = Vec::new();
    for i in 0..n * n {
        for j in i + 1..n * n {
            let (a, b) = (i / n, i % n);
            let (c, d) = (j / n, j % n);
            let mut combo = Vec::new();
            if b == c {
                combo.push((idx(a, d), q(1)));
            }
            if d == a {
                combo.push((idx(c, b), q(-1)));
            }
            brackets.push((i, j, combo));
        }
    }
    StructureConstants::new(format!("gl({n})"), basis, brackets)
}

/// Block-diagonal sum; basis names of `b` that clash with `a` get primes.
pub fn direct_sum(a: &StructureConstants, b: &StructureConstants) -> StructureConstants {
    let off = a.dim();
    let mut basis = a.basis.clone();
    for name in &b.basis {
        let mut candidate = name.clone();
        while basis.contains(&candidate) {
            candidate.push('\'');
        }
        basis.push(candidate);
    }
    let brackets = a
        .upper_brackets()
        .map(|(i, j, c)| (i, j, c.to_vec()))
        .chain(b.upper_brackets().map(|(i, j, c)| {
            (i + off, j + off, c.iter().map(|(k, v)| (k + off, v.clone())).collect())
        }))
        .collect::<Vec<_>>();
    StructureConstants::new(format!("{}+{}", a.name, b.name), basis, brackets).expect("direct sum")
}

/// Names accepted by [`catalog`], in the order the verification suite uses.
pub const CATALOG: &[&str] = &[
    "abelian(1)",
    "abelian(2)",
    "abelian(3)",
    "heisenberg3",
    "aff1",
    "sl2",
    "gl(1)",
    "gl(2)",
    "gl(3)",
    "sl2+abelian(1)",
    "heisenberg3+aff1",
];

/// The algebras every property check in the acceptance battery runs over.
pub const SUITE_CATALOG: &[&str] = &[
    "abelian(1)",
    "abelian(2)",
    "abelian(3)",
    "heisenberg3",
    "aff1",
    "sl2",
    "gl(2)",
    "sl2+abelian(1)",
];

/// Looks up a catalog algebra by name, e.g. `abelian(3)`, `gl(2)`,
/// `sl2+abelian(1)` or `direct_sum(heisenberg3,aff1)`.
///
/// The result has passed [`StructureConstants::validate`].
pub fn catalog(name: &str) -> Result<StructureConstants> {
    let sc = parse_catalog(name.trim())?;
    let report = sc.validate();
    if !report.passed() {
        return Err(Error::InvalidAlgebra(report.describe(&sc)));
    }
    Ok(sc)
}

fn parse_catalog(name: &str) -> Result<StructureConstants> {
    if let Some(inner) = name.strip_prefix("direct_sum(").and_then(|s| s.strip_suffix(')')) {
        let (a, b) = split_top_level(inner, ',')
            .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))?;
        return Ok(direct_sum(&parse_catalog(a.trim())?, &parse_catalog(b.trim())?));
    }
    for sep in ['+', '⊕'] {
        if let Some((a, b)) = split_top_level(name, sep) {
            return Ok(direct_sum(&parse_catalog(a.trim())?, &parse_catalog(b.trim())?));
        }
    }
    let param = |prefix: &str| -> Option<Result<usize>> {
        let rest = name.strip_prefix(prefix)?;
        let digits = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
        Some(
            digits
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("bad parameter in `{name}`"))),
        )
    };
    match name {
        "heisenberg3" | "heisenberg" => return Ok(heisenberg3()),
        "aff1" | "aff(1)" => return Ok(aff1()),
        "sl2" | "sl(2)" => return Ok(sl2()),
        _ => {}
    }
    if let Some(n) = param("abelian") {
        let n = n?;
        if n == 0 {
            return Err(Error::InvalidParameter("abelian(n) needs n >= 1".into()));
        }
        return Ok(abelian(n));
    }
    if let Some(n) = param("gl") {
        return gl(n?);
    }
    Err(Error::UnknownAlgebra(name.to_string()))
}

/// Splits at the last separator that is not nested inside parentheses, so
/// that `a+b+c` associates as `(a+b)+c`.
fn split_top_level(s: &str, sep: char) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut split = None;
    for (pos, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => split = Some(pos),
            _ => {}
        }
    }
    split.map(|p| (&s[..p], &s[p + sep.len_utf8()..]))
}

/// Resolves `--algebra` style arguments: a catalog name, or else a path to
/// an algebra JSON file. Files are loaded without validation.
pub fn resolve(name_or_path: &str) -> Result<StructureConstants> {
    match catalog(name_or_path) {
        Err(Error::UnknownAlgebra(_)) if Path::new(name_or_path).is_file() => {
            StructureConstants::load(name_or_path)
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_zero_matrix(m: &RationalMatrix) -> bool {
        m.is_zero()
    }

    #[test]
    fn catalog_algebras_validate() {
        for name in CATALOG {
            let sc = catalog(name).unwrap();
            assert!(sc.validate().passed(), "{name}");
        }
    }

    #[test]
    fn abelian_is_trivial() {
        let a = catalog("abelian(2)").unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.is_abelian());
        for i in 0..3 {
            assert!(is_zero_matrix(&abelian(3).ad_matrix(i).unwrap().matrix));
        }
    }

    #[test]
    fn gl1_degenerates_to_abelian1() {
        let g = gl(1).unwrap();
        assert_eq!(g.dim(), 1);
        assert!(g.is_abelian());
    }

    #[test]
    fn flipped_sl2_fails_jacobi() {
        // [e,h] = +2e instead of -2e
        let bad = StructureConstants::new(
            "sl2-broken",
            vec!["e".into(), "h".into(), "f".into()],
            [
                (0, 1, vec![(0, q(2))]),
                (0, 2, vec![(1, q(1))]),
                (1, 2, vec![(2, q(-2))]),
            ],
        )
        .unwrap();
        let report = bad.validate();
        assert!(report.antisymmetry_ok());
        assert!(!report.jacobi_ok());
        // [[e,h],f] + [[h,f],e] + [[f,e],h] = 2h + 2h + 0
        assert_eq!(
            report.violation,
            Some(Violation::Jacobi { i: 0, j: 1, l: 2, m: 1, value: q(4) })
        );
    }

    #[test]
    fn aff1_ad_x() {
        let ad = aff1().ad_matrix(0).unwrap().matrix;
        assert_eq!(ad, RationalMatrix::from_i64(&[&[0, 0], &[0, 1]]));
    }

    #[test]
    fn heisenberg_ad_squares_vanish() {
        let h = heisenberg3();
        for i in 0..3 {
            let ad = h.ad_matrix(i).unwrap().matrix;
            assert!(is_zero_matrix(&ad.mul(&ad).unwrap()));
        }
    }

    #[test]
    fn sl2_ad_h_characteristic_polynomial() {
        // independent 3x3 cofactor expansion of det(tI - A) at t = -2..=2
        let a = sl2().ad_matrix(1).unwrap().matrix;
        let det3 = |m: &RationalMatrix| {
            let g = |r, c| m.get(r, c).clone();
            g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
                - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
        };
        for t in [-2i64, 0, 2] {
            let mut m = RationalMatrix::identity(3);
            for r in 0..3 {
                for c in 0..3 {
                    let diag = if r == c { q(t) } else { Q::zero() };
                    m.set(r, c, diag - a.get(r, c).clone());
                }
            }
            assert!(det3(&m).is_zero(), "eigenvalue {t}");
        }
        // t^3 - 4t at t = 1 is -3
        let mut m = RationalMatrix::identity(3);
        for r in 0..3 {
            for c in 0..3 {
                let diag = if r == c { q(1) } else { Q::zero() };
                m.set(r, c, diag - a.get(r, c).clone());
            }
        }
        assert_eq!(det3(&m), q(-3));
    }

    #[test]
    fn ad_out_of_range() {
        assert!(matches!(sl2().ad_matrix(3), Err(Error::IndexOutOfRange { index: 3, dim: 3 })));
    }

    #[test]
    fn direct_sums() {
        let s = direct_sum(&abelian(1), &abelian(1));
        assert_eq!(s.dim(), 2);
        assert!(s.is_abelian());

        let s = catalog("sl2+abelian(1)").unwrap();
        assert_eq!(s.dim(), 4);
        assert!(s.validate().passed());

        let s = catalog("direct_sum(heisenberg3,aff1)").unwrap();
        assert_eq!(s.dim(), 5);
        assert!(s.validate().passed());
        // clashing names from aff1 are primed
        assert_eq!(s.basis_names()[3], "x'");
        assert_eq!(s.bracket(3, 4), &[(4, q(1))]);
    }

    #[test]
    fn ad_is_a_lie_homomorphism() {
        for name in CATALOG {
            let sc = catalog(name).unwrap();
            let ads: Vec<_> = (0..sc.dim()).map(|i| sc.ad_matrix(i).unwrap().matrix).collect();
            for i in 0..sc.dim() {
                for j in 0..sc.dim() {
                    let mut lhs = RationalMatrix::zeros(sc.dim(), sc.dim());
                    for (k, c) in sc.bracket(i, j) {
                        for r in 0..sc.dim() {
                            for s in 0..sc.dim() {
                                let v = lhs.get(r, s) + c * ads[*k].get(r, s);
                                lhs.set(r, s, v);
                            }
                        }
                    }
                    let rhs = ads[i]
                        .mul(&ads[j])
                        .unwrap()
                        .sub(&ads[j].mul(&ads[i]).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "{name}: ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let sc = sl2();
        let back = StructureConstants::from_json_str(&sc.to_json_string()).unwrap();
        assert_eq!(back, sc);

        let reversed = r#"{"name":"bad","dim":2,"basis":["x","y"],"brackets":[[1,0,[[1,"1"]]]]}"#;
        assert!(StructureConstants::from_json_str(reversed).is_err());
        let float = r#"{"name":"bad","dim":2,"basis":["x","y"],"brackets":[[0,1,[[1,"1.5"]]]]}"#;
        assert!(StructureConstants::from_json_str(float).is_err());
        let number = r#"{"name":"bad","dim":2,"basis":["x","y"],"brackets":[[0,1,[[1,1]]]]}"#;
        assert!(StructureConstants::from_json_str(number).is_err());
        let frac = r#"{"name":"ok","dim":2,"basis":["x","y"],"brackets":[[0,1,[[1,"-3/6"]]]]}"#;
        let sc = StructureConstants::from_json_str(frac).unwrap();
        assert_eq!(sc.coefficient(0, 1, 1), crate::exactlin::frac(-1, 2));
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(catalog("so3"), Err(Error::UnknownAlgebra(_))));
        assert!(matches!(catalog("gl(4)"), Err(Error::InvalidParameter(_))));
        assert!(matches!(catalog("abelian(x)"), Err(Error::InvalidParameter(_))));
    }
}
