//! Free graded-commutative algebras over the rationals and their differentials.
//!
//! An [`Algebra`] is fixed by an ordered list of generators. Odd generators
//! anticommute and square to zero, even generators commute and are
//! polynomial. Monomials are stored with factors sorted by declaration
//! order; every product re-sorts its factors and picks up one sign per
//! transposition of two odd factors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{name}` has degree {degree}; degrees must be at least 1")]
    NonPositiveDegree { name: String, degree: i64 },
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("odd generator `{name}` raised to power {power}")]
    OddPower { name: String, power: u32 },
    #[error("expected {expected} differentials, got {found}")]
    DifferentialCount { expected: usize, found: usize },
    #[error("duplicate differential for generator `{0}`")]
    DuplicateDifferential(String),
    #[error("d({generator}) must be homogeneous of degree {expected}, got `{value}`")]
    WrongDegree {
        generator: String,
        expected: usize,
        value: String,
    },
    #[error("d(d({generator})) = {value}, expected 0")]
    NotSquareZero { generator: String, value: String },
}

/// A named generator with its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i64,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Self {
            name: name.into(),
            degree,
        }
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct AlgebraInner {
    generators: Vec<GeneratorSpec>,
    degrees: Vec<usize>,
    index: HashMap<String, usize>,
}

/// A free graded-commutative algebra on a fixed, ordered set of generators.
///
/// Cloning is cheap; clones compare equal and their elements mix freely.
#[derive(Clone)]
pub struct Algebra {
    inner: Arc<AlgebraInner>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.generators == other.inner.generators
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(
                self.inner
                    .generators
                    .iter()
                    .map(|g| format!("{}:{}", g.name, g.degree)),
            )
            .finish()
    }
}

impl Algebra {
    pub fn new(generators: Vec<GeneratorSpec>) -> Result<Self, AlgebraError> {
        let mut index = HashMap::with_capacity(generators.len());
        let mut degrees = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if !is_identifier(&g.name) {
                return Err(AlgebraError::InvalidName(g.name.clone()));
            }
            if g.degree < 1 {
                return Err(AlgebraError::NonPositiveDegree {
                    name: g.name.clone(),
                    degree: g.degree,
                });
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateGenerator(g.name.clone()));
            }
            degrees.push(g.degree as usize);
        }
        Ok(Self {
            inner: Arc::new(AlgebraInner {
                generators,
                degrees,
                index,
            }),
        })
    }

    /// Exterior algebra on degree-1 generators with the given names.
    pub fn exterior<S: AsRef<str>>(names: &[S]) -> Result<Self, AlgebraError> {
        Self::new(
            names
                .iter()
                .map(|n| GeneratorSpec::new(n.as_ref(), 1))
                .collect(),
        )
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.inner.generators
    }

    pub fn num_generators(&self) -> usize {
        self.inner.generators.len()
    }

    pub fn degree(&self, generator: usize) -> usize {
        self.inner.degrees[generator]
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.inner.generators[generator].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.index.get(name).copied()
    }

    pub fn is_odd(&self, generator: usize) -> bool {
        self.inner.degrees[generator] % 2 == 1
    }

    /// True when every generator is odd, so the algebra is finite dimensional.
    pub fn is_exterior(&self) -> bool {
        self.inner.degrees.iter().all(|d| d % 2 == 1)
    }

    /// Highest degree with a nonzero monomial, if finite.
    pub fn top_degree(&self) -> Option<usize> {
        self.is_exterior().then(|| self.inner.degrees.iter().sum())
    }

    /// Product of all generators in declaration order. Only defined for
    /// exterior algebras.
    pub fn orientation(&self) -> Option<Monomial> {
        self.is_exterior().then(|| Monomial {
            factors: (0..self.num_generators()).map(|i| (i, 1)).collect(),
        })
    }

    /// Admissible monomials of degree `k`, in monomial order.
    pub fn basis(&self, k: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.enumerate(0, k, &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate(
        &self,
        start: usize,
        remaining: usize,
        current: &mut Vec<(usize, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial {
                factors: current.clone(),
            });
            return;
        }
        for g in start..self.num_generators() {
            let deg = self.degree(g);
            let max_exp = if self.is_odd(g) { 1 } else { remaining / deg };
            for e in 1..=max_exp {
                if e * deg > remaining {
                    break;
                }
                current.push((g, e as u32));
                self.enumerate(g + 1, remaining - e * deg, current, out);
                current.pop();
            }
        }
    }

    pub fn zero(&self) -> Element {
        Element {
            algebra: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Element {
        self.monomial(Monomial::unit())
    }

    pub fn generator(&self, index: usize) -> Element {
        self.monomial(Monomial {
            factors: vec![(index, 1)],
        })
    }

    /// Generator by name.
    pub fn gen(&self, name: &str) -> Result<Element, AlgebraError> {
        self.index_of(name)
            .map(|i| self.generator(i))
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    pub fn monomial(&self, m: Monomial) -> Element {
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::one());
        Element {
            algebra: self.clone(),
            terms,
        }
    }

    /// Builds a monomial from unsorted `(generator, exponent)` pairs,
    /// returning the signed canonical element (zero on odd collisions).
    pub fn word(&self, factors: &[(usize, u32)]) -> Result<Element, AlgebraError> {
        let mut acc = self.one();
        for &(g, e) in factors {
            if g >= self.num_generators() {
                return Err(AlgebraError::UnknownGenerator(format!("#{g}")));
            }
            if e >= 2 && self.is_odd(g) {
                return Err(AlgebraError::OddPower {
                    name: self.name(g).to_string(),
                    power: e,
                });
            }
            if e == 0 {
                continue;
            }
            let factor = self.monomial(Monomial {
                factors: vec![(g, e)],
            });
            acc = acc.mul(&factor)?;
        }
        Ok(acc)
    }

    /// Element from coordinates relative to a list of monomials.
    pub fn from_coords(&self, basis: &[Monomial], coords: &[Rational]) -> Element {
        let mut terms = BTreeMap::new();
        for (m, c) in basis.iter().zip(coords) {
            if !c.is_zero() {
                terms.insert(m.clone(), c.clone());
            }
        }
        Element {
            algebra: self.clone(),
            terms,
        }
    }

    /// Product of two monomials: `None` if an odd generator collides,
    /// otherwise the canonical monomial and whether the sign is negative.
    pub fn mul_monomials(&self, u: &Monomial, v: &Monomial) -> Option<(Monomial, bool)> {
        // Parity of the degree of u's factors strictly after each position.
        let mut negative = false;
        for &(g, e) in &v.factors {
            if self.is_odd(g) && e % 2 == 1 {
                let mut parity = 0usize;
                for &(h, f) in u.factors.iter().rev() {
                    if h <= g {
                        break;
                    }
                    parity += self.degree(h) * f as usize;
                }
                if parity % 2 == 1 {
                    negative = !negative;
                }
            }
        }
        let mut factors = Vec::with_capacity(u.factors.len() + v.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < u.factors.len() || j < v.factors.len() {
            let next = match (u.factors.get(i), v.factors.get(j)) {
                (Some(&a), Some(&b)) if a.0 == b.0 => {
                    if self.is_odd(a.0) {
                        return None;
                    }
                    i += 1;
                    j += 1;
                    (a.0, a.1 + b.1)
                }
                (Some(&a), Some(&b)) if a.0 < b.0 => {
                    i += 1;
                    a
                }
                (Some(_), Some(&b)) => {
                    j += 1;
                    b
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            factors.push(next);
        }
        Some((Monomial { factors }, negative))
    }
}

/// A product of generator powers with factors sorted by generator index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    factors: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self, algebra: &Algebra) -> usize {
        self.factors
            .iter()
            .map(|&(g, e)| algebra.degree(g) * e as usize)
            .sum()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> usize {
        self.factors.iter().map(|&(_, e)| e as usize).sum()
    }

    pub(crate) fn from_sorted(factors: Vec<(usize, u32)>) -> Self {
        Self { factors }
    }
}

/// A rational linear combination of monomials, kept in canonical form.
#[derive(Clone)]
pub struct Element {
    algebra: Algebra,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", crate::model_io::render(self))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::model_io::render(self))
    }
}

impl Element {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree of a nonzero homogeneous element; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.degree(&self.algebra));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.degree(&self.algebra) == k)
    }

    fn check_same(&self, other: &Element) -> Result<(), AlgebraError> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(AlgebraError::MixedAlgebras)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Element {
        if q.is_zero() {
            return self.algebra.zero();
        }
        Element {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn mul(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.algebra.zero();
        for (mu, cu) in &self.terms {
            for (mv, cv) in &other.terms {
                if let Some((m, negative)) = self.algebra.mul_monomials(mu, mv) {
                    let c = cu * cv;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Coordinates against `basis`, or `None` if some term is not in it.
    pub fn coords(&self, index: &HashMap<Monomial, usize>, len: usize) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); len];
        for (m, c) in &self.terms {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Re-expresses this element in `target`, sending generator `i` to
    /// generator `map[i]`. The map must preserve relative order.
    pub(crate) fn transport(&self, target: &Algebra, map: &[usize]) -> Element {
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let factors = m.factors.iter().map(|&(g, e)| (map[g], e)).collect();
            out.add_term(Monomial::from_sorted(factors), c.clone());
        }
        out
    }
}

/// A free graded-commutative algebra with a square-zero degree +1 derivation.
#[derive(Clone, PartialEq, Eq)]
pub struct Dga {
    algebra: Algebra,
    differentials: Arc<Vec<Element>>,
}

impl fmt::Debug for Dga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::model_io::render_model(self))
    }
}

impl Dga {
    /// `differentials[i]` is the value of d on generator `i`.
    pub fn new(algebra: Algebra, differentials: Vec<Element>) -> Result<Self, AlgebraError> {
        if differentials.len() != algebra.num_generators() {
            return Err(AlgebraError::DifferentialCount {
                expected: algebra.num_generators(),
                found: differentials.len(),
            });
        }
        for (i, value) in differentials.iter().enumerate() {
            if value.algebra != algebra {
                return Err(AlgebraError::MixedAlgebras);
            }
            let expected = algebra.degree(i) + 1;
            if !value.is_homogeneous_of(expected) {
                return Err(AlgebraError::WrongDegree {
                    generator: algebra.name(i).to_string(),
                    expected,
                    value: value.to_string(),
                });
            }
        }
        let dga = Dga {
            algebra,
            differentials: Arc::new(differentials),
        };
        for (i, value) in dga.differentials.iter().enumerate() {
            let dd = dga.differential(value)?;
            if !dd.is_zero() {
                return Err(AlgebraError::NotSquareZero {
                    generator: dga.algebra.name(i).to_string(),
                    value: dd.to_string(),
                });
            }
        }
        Ok(dga)
    }

    /// Differentials by generator name; unnamed generators are closed.
    pub fn from_named<S: AsRef<str>>(
        algebra: Algebra,
        named: Vec<(S, Element)>,
    ) -> Result<Self, AlgebraError> {
        let mut slots: Vec<Option<Element>> = vec![None; algebra.num_generators()];
        for (name, value) in named {
            let i = algebra
                .index_of(name.as_ref())
                .ok_or_else(|| AlgebraError::UnknownGenerator(name.as_ref().to_string()))?;
            if slots[i].replace(value).is_some() {
                return Err(AlgebraError::DuplicateDifferential(
                    name.as_ref().to_string(),
                ));
            }
        }
        let differentials = slots
            .into_iter()
            .map(|s| s.unwrap_or_else(|| algebra.zero()))
            .collect();
        Self::new(algebra, differentials)
    }

    /// Zero differential.
    pub fn free(algebra: Algebra) -> Self {
        let differentials = vec![algebra.zero(); algebra.num_generators()];
        Dga {
            algebra,
            differentials: Arc::new(differentials),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn generator_differential(&self, generator: usize) -> &Element {
        &self.differentials[generator]
    }

    pub fn differential_values(&self) -> &[Element] {
        &self.differentials
    }

    /// Extends d to all of the algebra by the graded Leibniz rule.
    pub fn differential(&self, u: &Element) -> Result<Element, AlgebraError> {
        if u.algebra != self.algebra {
            return Err(AlgebraError::MixedAlgebras);
        }
        let mut out = self.algebra.zero();
        for (m, c) in &u.terms {
            let dm = self.differential_monomial(m);
            for (mm, cc) in dm.terms {
                out.add_term(mm, cc * c);
            }
        }
        Ok(out)
    }

    pub fn is_closed(&self, u: &Element) -> Result<bool, AlgebraError> {
        Ok(self.differential(u)?.is_zero())
    }

    fn differential_monomial(&self, m: &Monomial) -> Element {
        let alg = &self.algebra;
        let mut out = alg.zero();
        let mut prefix_degree = 0usize;
        for (pos, &(g, e)) in m.factors.iter().enumerate() {
            let dg = &self.differentials[g];
            if !dg.is_zero() {
                let prefix = alg.monomial(Monomial::from_sorted(m.factors[..pos].to_vec()));
                let suffix = alg.monomial(Monomial::from_sorted(m.factors[pos + 1..].to_vec()));
                // d(g^e) = e g^(e-1) dg; e = 1 for odd g.
                let mut block = dg.scale(&rat(e as i64));
                if e > 1 {
                    let rest = alg.monomial(Monomial::from_sorted(vec![(g, e - 1)]));
                    block = rest.mul(&block).expect("same algebra");
                }
                let mut term = prefix
                    .mul(&block)
                    .and_then(|t| t.mul(&suffix))
                    .expect("same algebra");
                if prefix_degree % 2 == 1 {
                    term = term.neg();
                }
                for (mm, cc) in term.terms {
                    out.add_term(mm, cc);
                }
            }
            prefix_degree += alg.degree(g) * e as usize;
        }
        out
    }

    /// True iff every generator differential is decomposable.
    pub fn is_minimal(&self) -> bool {
        self.differentials
            .iter()
            .all(|d| d.terms().all(|(m, _)| m.word_length() >= 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Algebra {
        Algebra::exterior(&["a", "b", "c"]).unwrap()
    }

    #[test]
    fn exterior_bases() {
        let alg = abc();
        let names: Vec<String> = alg
            .basis(2)
            .iter()
            .map(|m| alg.monomial(m.clone()).to_string())
            .collect();
        assert_eq!(names, ["a*b", "a*c", "b*c"]);
        assert_eq!(alg.basis(0), vec![Monomial::unit()]);
        let eight = Algebra::exterior(&["a", "b", "c", "d", "e", "f", "g", "h"]).unwrap();
        assert_eq!(eight.basis(4).len(), 70);
    }

    #[test]
    fn polynomial_basis() {
        let alg = Algebra::new(vec![GeneratorSpec::new("x", 2)]).unwrap();
        let b = alg.basis(4);
        assert_eq!(b.len(), 1);
        assert_eq!(alg.monomial(b[0].clone()).to_string(), "x^2");
        assert!(alg.basis(3).is_empty());
    }

    #[test]
    fn construction_errors() {
        let dup = Algebra::new(vec![GeneratorSpec::new("a", 1), GeneratorSpec::new("a", 1)]);
        assert_eq!(
            dup.unwrap_err(),
            AlgebraError::DuplicateGenerator("a".into())
        );
        let zero = Algebra::new(vec![GeneratorSpec::new("a", 0)]);
        assert!(matches!(zero, Err(AlgebraError::NonPositiveDegree { .. })));
        let neg = Algebra::new(vec![GeneratorSpec::new("a", -2)]);
        assert!(matches!(neg, Err(AlgebraError::NonPositiveDegree { .. })));
    }

    #[test]
    fn odd_products() {
        let alg = abc();
        let (a, b) = (alg.gen("a").unwrap(), alg.gen("b").unwrap());
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_string(), "a*b");
        assert_eq!(b.mul(&a).unwrap(), ab.neg());
        assert!(a.mul(&a).unwrap().is_zero());
    }

    #[test]
    fn koszul_sign_of_degree_two_product() {
        let alg = Algebra::exterior(&["a", "b", "c", "t1", "t2"]).unwrap();
        let g = |n: &str| alg.gen(n).unwrap();
        let u = g("a").mul(&g("t1")).unwrap();
        let v = g("b").mul(&g("t2")).unwrap();
        assert_eq!(u.mul(&v).unwrap().to_string(), "-a*b*t1*t2");
    }

    #[test]
    fn add_and_scale() {
        let alg = abc();
        let ab = alg.gen("a").unwrap().mul(&alg.gen("b").unwrap()).unwrap();
        assert!(ab.add(&ab.scale(&rat(-1))).unwrap().is_zero());
        let ac = alg.gen("a").unwrap().mul(&alg.gen("c").unwrap()).unwrap();
        let two_ac = ac.scale(&rat(2));
        assert_eq!(two_ac.num_terms(), 1);
        assert_eq!(two_ac.terms().next().unwrap().1, &rat(2));
        assert_eq!(two_ac.scale(&ratio(1, 2)), ac);
    }

    #[test]
    fn mixed_algebras_rejected() {
        let a = abc().gen("a").unwrap();
        let x = Algebra::exterior(&["x"]).unwrap().gen("x").unwrap();
        assert_eq!(a.mul(&x).unwrap_err(), AlgebraError::MixedAlgebras);
        assert_eq!(a.add(&x).unwrap_err(), AlgebraError::MixedAlgebras);
    }

    fn heisenberg() -> Dga {
        let alg = abc();
        let ab = alg.gen("a").unwrap().mul(&alg.gen("b").unwrap()).unwrap();
        Dga::from_named(alg, vec![("c", ab.neg())]).unwrap()
    }

    #[test]
    fn heisenberg_differential() {
        let dga = heisenberg();
        let alg = dga.algebra().clone();
        let (a, c) = (alg.gen("a").unwrap(), alg.gen("c").unwrap());
        assert!(dga.differential(&alg.one()).unwrap().is_zero());
        assert!(dga.is_closed(&a.mul(&c).unwrap()).unwrap());
        assert_eq!(dga.differential(&c).unwrap().to_string(), "-a*b");
        assert!(dga.is_minimal());
    }

    #[test]
    fn wrong_degree_rejected() {
        let alg = abc();
        let a = alg.gen("a").unwrap();
        let err = Dga::from_named(alg, vec![("c", a)]).unwrap_err();
        assert!(matches!(err, AlgebraError::WrongDegree { .. }));
    }

    #[test]
    fn square_zero_checked() {
        // d c = -ab, d e = a c: d(d e) = -a(-ab) = a a b = 0, so this is valid.
        let alg = Algebra::exterior(&["a", "b", "c", "e"]).unwrap();
        let g = |n: &str| alg.gen(n).unwrap();
        let ab = g("a").mul(&g("b")).unwrap();
        let ac = g("a").mul(&g("c")).unwrap();
        assert!(Dga::from_named(alg.clone(), vec![("c", ab.neg()), ("e", ac)]).is_ok());
        // d c = d f = ab, d e = c f: d(d e) = ab f - c ab = -abc + abf.
        let alg = Algebra::exterior(&["a", "b", "c", "e", "f"]).unwrap();
        let g = |n: &str| alg.gen(n).unwrap();
        let ab = g("a").mul(&g("b")).unwrap();
        let cf = g("c").mul(&g("f")).unwrap();
        let err = Dga::from_named(alg, vec![("c", ab.clone()), ("e", cf), ("f", ab)]).unwrap_err();
        match err {
            AlgebraError::NotSquareZero { generator, value } => {
                assert_eq!(generator, "e");
                assert_eq!(value, "-a*b*c + a*b*f");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn even_generator_leibniz() {
        // x even of degree 2, y of degree 3 with d y = x^2; d(x^3) = 0, d(x y) = x^3.
        let alg =
            Algebra::new(vec![GeneratorSpec::new("x", 2), GeneratorSpec::new("y", 3)]).unwrap();
        let x = alg.gen("x").unwrap();
        let x2 = x.mul(&x).unwrap();
        let dga = Dga::from_named(alg.clone(), vec![("y", x2.clone())]).unwrap();
        let y = alg.gen("y").unwrap();
        assert_eq!(
            dga.differential(&x.mul(&y).unwrap()).unwrap(),
            x2.mul(&x).unwrap()
        );
        assert!(dga.is_minimal());
    }
}
