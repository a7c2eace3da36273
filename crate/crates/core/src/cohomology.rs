//! Cohomology of a DGA: per-degree bases, cup products, the Poincaré
//! pairing and tensor products of models.
//!
//! [`Cohomology`] wraps a [`Dga`] and computes each degree lazily. Every
//! degree is computed once; later queries reuse the factored matrices.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Dga, Element, GeneratorSpec, Monomial, Rational};
use crate::linalg::{self, LinalgError, RatMatrix, Solver, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("`{0}` is not closed")]
    NotClosed(String),
    #[error("`{0}` is not homogeneous of a definite degree")]
    NotHomogeneous(String),
    #[error("degree {degree} is beyond the computed range 0..={limit}")]
    DegreeOutOfRange { degree: usize, limit: usize },
    #[error("the algebra has even generators; give an explicit degree limit")]
    Unbounded,
    #[error("no orientation: the algebra has even generators")]
    NoOrientation,
    #[error("top cohomology has dimension {0}, expected 1")]
    TopCohomology(usize),
    #[error("degrees {first} and {second} do not add up to {expected}")]
    DegreeMismatch {
        first: usize,
        second: usize,
        expected: usize,
    },
    #[error("class coordinate vector has length {found}, expected {expected}")]
    ClassLength { expected: usize, found: usize },
}

/// A cohomology class, as coordinates against the representatives of
/// [`CohomologyBasis`] in its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class {
    pub degree: usize,
    pub coords: Vec<Rational>,
}

impl Class {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// Monomial basis of one degree of the underlying algebra.
#[derive(Debug)]
pub struct Space {
    pub basis: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
}

impl Space {
    fn new(algebra: &Algebra, k: usize) -> Self {
        let basis = algebra.basis(k);
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self { basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Cocycle representatives of `H^k` and the linear map sending a cocycle to
/// its class coordinates.
#[derive(Debug)]
pub struct CohomologyBasis {
    degree: usize,
    representatives: Vec<Element>,
    cocycles: Subspace,
    coboundaries: Subspace,
    projection: RatMatrix,
    space: Arc<Space>,
    dga: Dga,
}

impl CohomologyBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Element] {
        &self.representatives
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    /// Class coordinates of a degree-`k` cocycle.
    pub fn coordinates(&self, u: &Element) -> Result<Vec<Rational>, CohomologyError> {
        if !u.is_homogeneous_of(self.degree) {
            return Err(CohomologyError::NotHomogeneous(u.to_string()));
        }
        if !self.dga.is_closed(u)? {
            return Err(CohomologyError::NotClosed(u.to_string()));
        }
        let v = u
            .coords(&self.space.index, self.space.dim())
            .ok_or(AlgebraError::MixedAlgebras)?;
        Ok(self.projection.mul_vec(&v)?)
    }

    /// The cocycle `sum coords[i] * representatives[i]`.
    pub fn element(&self, coords: &[Rational]) -> Result<Element, CohomologyError> {
        if coords.len() != self.dim() {
            return Err(CohomologyError::ClassLength {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        let mut out = self.dga.algebra().zero();
        for (c, r) in coords.iter().zip(&self.representatives) {
            if !c.is_zero() {
                out = out.add(&r.scale(c))?;
            }
        }
        Ok(out)
    }
}

/// Non-degeneracy data for the pairing `H^k x H^(n-k) -> Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityMatrix {
    pub degree: usize,
    pub matrix: RatMatrix,
    pub nondegenerate: bool,
}

/// Top monomial used to evaluate the pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub monomial: Monomial,
    pub degree: usize,
}

/// Lazily computed cohomology of a DGA in degrees `0..=limit`.
pub struct Cohomology {
    dga: Dga,
    limit: usize,
    // Every degree above `limit` is zero.
    finite: bool,
    spaces: Vec<OnceLock<Arc<Space>>>,
    differentials: Vec<OnceLock<Arc<RatMatrix>>>,
    solvers: Vec<OnceLock<Arc<Solver>>>,
    bases: Vec<OnceLock<Arc<CohomologyBasis>>>,
}

impl Cohomology {
    /// All degrees of a finite-dimensional (all generators odd) model.
    pub fn new(dga: &Dga) -> Result<Self, CohomologyError> {
        let top = dga
            .algebra()
            .top_degree()
            .ok_or(CohomologyError::Unbounded)?;
        Ok(Self::up_to(dga, top))
    }

    /// Degrees `0..=limit` only.
    pub fn up_to(dga: &Dga, limit: usize) -> Self {
        let finite = dga.algebra().top_degree().is_some_and(|t| limit >= t);
        Self {
            dga: dga.clone(),
            limit,
            finite,
            spaces: (0..=limit + 1).map(|_| OnceLock::new()).collect(),
            differentials: (0..=limit).map(|_| OnceLock::new()).collect(),
            solvers: (0..=limit).map(|_| OnceLock::new()).collect(),
            bases: (0..=limit).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn check_degree(&self, k: usize) -> Result<(), CohomologyError> {
        if k > self.limit && !self.finite {
            Err(CohomologyError::DegreeOutOfRange {
                degree: k,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// Monomial basis of degree `k`; available for `k <= limit + 1`.
    pub fn space(&self, k: usize) -> Result<Arc<Space>, CohomologyError> {
        if k > self.limit + 1 && !self.finite {
            return Err(CohomologyError::DegreeOutOfRange {
                degree: k,
                limit: self.limit + 1,
            });
        }
        cached(&self.spaces, k, || Ok(Space::new(self.dga.algebra(), k)))
    }

    /// Matrix of `d` from degree `k` to degree `k + 1` in monomial bases.
    pub fn differential_matrix(&self, k: usize) -> Result<Arc<RatMatrix>, CohomologyError> {
        self.check_degree(k)?;
        cached(&self.differentials, k, || {
            self.compute_differential_matrix(k)
        })
    }

    fn compute_differential_matrix(&self, k: usize) -> Result<RatMatrix, CohomologyError> {
        let source = self.space(k)?;
        let target = self.space(k + 1)?;
        let alg = self.dga.algebra();
        let mut m = RatMatrix::zeros(target.dim(), source.dim());
        for (j, mono) in source.basis.iter().enumerate() {
            let du = self.dga.differential(&alg.monomial(mono.clone()))?;
            for (t, c) in du.terms() {
                m.set(target.index[t], j, c.clone());
            }
        }
        Ok(m)
    }

    /// Solver for `d x = u` with `u` of degree `k >= 1`.
    fn solver(&self, k: usize) -> Result<Arc<Solver>, CohomologyError> {
        self.check_degree(k)?;
        cached(&self.solvers, k, || {
            Ok(Solver::new(self.differential_matrix(k - 1)?.as_ref()))
        })
    }

    /// Cocycle representatives and coordinate map of `H^k`.
    pub fn basis(&self, k: usize) -> Result<Arc<CohomologyBasis>, CohomologyError> {
        self.check_degree(k)?;
        cached(&self.bases, k, || self.compute_basis(k))
    }

    fn compute_basis(&self, k: usize) -> Result<CohomologyBasis, CohomologyError> {
        let space = self.space(k)?;
        let n = space.dim();
        let cocycles = linalg::kernel(self.differential_matrix(k)?.as_ref());
        let coboundaries = if k == 0 {
            Subspace::zero(n)
        } else {
            linalg::image(self.differential_matrix(k - 1)?.as_ref())
        };

        let mut span = coboundaries.clone();
        let mut columns: Vec<Vec<Rational>> = coboundaries.basis().to_vec();
        let mut reps = Vec::new();
        for z in cocycles.basis() {
            if span.insert(z)? {
                reps.push(z.clone());
                columns.push(z.clone());
            }
        }
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            if span.insert(&e)? {
                columns.push(e);
            }
        }
        let inverse = RatMatrix::from_columns(n, &columns)
            .inverse()
            .expect("columns form a basis");
        let offset = coboundaries.dim();
        let mut projection = RatMatrix::zeros(reps.len(), n);
        for i in 0..reps.len() {
            for j in 0..n {
                projection.set(i, j, inverse.get(offset + i, j).clone());
            }
        }
        let alg = self.dga.algebra();
        let representatives = reps
            .iter()
            .map(|r| alg.from_coords(&space.basis, r))
            .collect();
        Ok(CohomologyBasis {
            degree: k,
            representatives,
            cocycles,
            coboundaries,
            projection,
            space,
            dga: self.dga.clone(),
        })
    }

    /// Betti numbers `b_0..=b_limit`.
    pub fn betti(&self) -> Result<Vec<usize>, CohomologyError> {
        (0..=self.limit)
            .map(|k| self.basis(k).map(|b| b.dim()))
            .collect()
    }

    fn definite_degree(u: &Element) -> Result<usize, CohomologyError> {
        u.degree()
            .ok_or_else(|| CohomologyError::NotHomogeneous(u.to_string()))
    }

    /// Class of a cocycle of degree `k`.
    pub fn class_in(&self, u: &Element, k: usize) -> Result<Class, CohomologyError> {
        Ok(Class {
            degree: k,
            coords: self.basis(k)?.coordinates(u)?,
        })
    }

    /// Class of a nonzero homogeneous cocycle.
    pub fn class_of(&self, u: &Element) -> Result<Class, CohomologyError> {
        self.class_in(u, Self::definite_degree(u)?)
    }

    pub fn representative(&self, class: &Class) -> Result<Element, CohomologyError> {
        self.basis(class.degree)?.element(&class.coords)
    }

    /// A primitive `x` with `d x = u`, or `None` if `u` is not exact.
    /// The primitive has zero coordinates on all free monomials.
    pub fn primitive(&self, u: &Element, k: usize) -> Result<Option<Element>, CohomologyError> {
        self.check_degree(k)?;
        if !u.is_homogeneous_of(k) {
            return Err(CohomologyError::NotHomogeneous(u.to_string()));
        }
        if !self.dga.is_closed(u)? {
            return Err(CohomologyError::NotClosed(u.to_string()));
        }
        let alg = self.dga.algebra();
        if u.is_zero() {
            return Ok(Some(alg.zero()));
        }
        if k == 0 {
            return Ok(None);
        }
        let space = self.space(k)?;
        let v = u
            .coords(&space.index, space.dim())
            .ok_or(AlgebraError::MixedAlgebras)?;
        let source = self.space(k - 1)?;
        Ok(self
            .solver(k)?
            .solve(&v)?
            .map(|x| alg.from_coords(&source.basis, &x)))
    }

    /// Like [`Cohomology::primitive`], reading the degree off `u`.
    pub fn is_exact(&self, u: &Element) -> Result<Option<Element>, CohomologyError> {
        if u.is_zero() {
            return Ok(Some(self.dga.algebra().zero()));
        }
        self.primitive(u, Self::definite_degree(u)?)
    }

    /// `[u] ∪ [v]` for nonzero homogeneous cocycles.
    pub fn cup(&self, u: &Element, v: &Element) -> Result<Class, CohomologyError> {
        let p = Self::definite_degree(u)?;
        let q = Self::definite_degree(v)?;
        self.cup_in(u, p, v, q)
    }

    /// `[u] ∪ [v]` with explicit degrees, so zero inputs are allowed.
    pub fn cup_in(
        &self,
        u: &Element,
        p: usize,
        v: &Element,
        q: usize,
    ) -> Result<Class, CohomologyError> {
        for (x, k) in [(u, p), (v, q)] {
            if !x.is_homogeneous_of(k) {
                return Err(CohomologyError::NotHomogeneous(x.to_string()));
            }
            if !self.dga.is_closed(x)? {
                return Err(CohomologyError::NotClosed(x.to_string()));
            }
        }
        self.class_in(&u.mul(v)?, p + q)
    }

    pub fn cup_classes(&self, a: &Class, b: &Class) -> Result<Class, CohomologyError> {
        let u = self.representative(a)?;
        let v = self.representative(b)?;
        self.class_in(&u.mul(&v)?, a.degree + b.degree)
    }

    pub fn orientation(&self) -> Result<Orientation, CohomologyError> {
        let alg = self.dga.algebra();
        let monomial = alg.orientation().ok_or(CohomologyError::NoOrientation)?;
        Ok(Orientation {
            degree: monomial.degree(alg),
            monomial,
        })
    }

    fn checked_orientation(&self) -> Result<Orientation, CohomologyError> {
        let o = self.orientation()?;
        let top = self.basis(o.degree)?.dim();
        if top != 1 {
            return Err(CohomologyError::TopCohomology(top));
        }
        Ok(o)
    }

    /// Coefficient of the orientation monomial in `u ∧ v`, for cocycles of
    /// complementary degrees `p` and `q`.
    pub fn pairing_in(
        &self,
        u: &Element,
        p: usize,
        v: &Element,
        q: usize,
    ) -> Result<Rational, CohomologyError> {
        let o = self.checked_orientation()?;
        if p + q != o.degree {
            return Err(CohomologyError::DegreeMismatch {
                first: p,
                second: q,
                expected: o.degree,
            });
        }
        for (x, k) in [(u, p), (v, q)] {
            if !x.is_homogeneous_of(k) {
                return Err(CohomologyError::NotHomogeneous(x.to_string()));
            }
            if !self.dga.is_closed(x)? {
                return Err(CohomologyError::NotClosed(x.to_string()));
            }
        }
        Ok(u.mul(v)?.coefficient(&o.monomial))
    }

    /// Pairing of nonzero homogeneous cocycles.
    pub fn pairing(&self, u: &Element, v: &Element) -> Result<Rational, CohomologyError> {
        let p = Self::definite_degree(u)?;
        let q = Self::definite_degree(v)?;
        self.pairing_in(u, p, v, q)
    }

    pub fn pairing_classes(&self, a: &Class, b: &Class) -> Result<Rational, CohomologyError> {
        let u = self.representative(a)?;
        let v = self.representative(b)?;
        self.pairing_in(&u, a.degree, &v, b.degree)
    }

    /// Matrix of pairings between the bases of `H^k` and `H^(n-k)`.
    pub fn duality_matrix(&self, k: usize) -> Result<DualityMatrix, CohomologyError> {
        let o = self.checked_orientation()?;
        if k > o.degree {
            return Err(CohomologyError::DegreeMismatch {
                first: k,
                second: 0,
                expected: o.degree,
            });
        }
        let left = self.basis(k)?;
        let right = self.basis(o.degree - k)?;
        let mut matrix = RatMatrix::zeros(left.dim(), right.dim());
        for (i, u) in left.representatives().iter().enumerate() {
            for (j, v) in right.representatives().iter().enumerate() {
                matrix.set(i, j, u.mul(v)?.coefficient(&o.monomial));
            }
        }
        let nondegenerate = left.dim() == right.dim() && matrix.rank() == left.dim();
        Ok(DualityMatrix {
            degree: k,
            matrix,
            nondegenerate,
        })
    }
}

/// Cached value for slot `k`, or a fresh uncached value past the end.
fn cached<T>(
    slots: &[OnceLock<Arc<T>>],
    k: usize,
    compute: impl FnOnce() -> Result<T, CohomologyError>,
) -> Result<Arc<T>, CohomologyError> {
    match slots.get(k) {
        Some(slot) => {
            if let Some(v) = slot.get() {
                return Ok(v.clone());
            }
            let v = compute()?;
            Ok(slot.get_or_init(|| Arc::new(v)).clone())
        }
        None => Ok(Arc::new(compute()?)),
    }
}

/// Tensor product of two models; generators of `a` come first. Names of `b`
/// that collide are renamed to `name_1`, `name_2`, ...
pub fn tensor(a: &Dga, b: &Dga) -> Dga {
    let (alg_a, alg_b) = (a.algebra(), b.algebra());
    let mut used: HashSet<String> = alg_a.generators().iter().map(|g| g.name.clone()).collect();
    let mut gens: Vec<GeneratorSpec> = alg_a.generators().to_vec();
    for g in alg_b.generators() {
        let mut name = g.name.clone();
        let mut k = 1;
        while used.contains(&name) || (name != g.name && alg_b.index_of(&name).is_some()) {
            name = format!("{}_{k}", g.name);
            k += 1;
        }
        used.insert(name.clone());
        gens.push(GeneratorSpec::new(name, g.degree));
    }
    let product = Algebra::new(gens).expect("names made distinct");
    let left: Vec<usize> = (0..alg_a.num_generators()).collect();
    let right: Vec<usize> = (0..alg_b.num_generators())
        .map(|i| i + alg_a.num_generators())
        .collect();
    let differentials = a
        .differential_values()
        .iter()
        .map(|d| d.transport(&product, &left))
        .chain(
            b.differential_values()
                .iter()
                .map(|d| d.transport(&product, &right)),
        )
        .collect();
    Dga::new(product, differentials).expect("tensor of valid models is valid")
}

/// Sends an element of the left factor into `tensor(a, _)`.
pub fn include_left(product: &Dga, u: &Element) -> Element {
    let map: Vec<usize> = (0..u.algebra().num_generators()).collect();
    u.transport(product.algebra(), &map)
}

/// Sends an element of the right factor `b` into `tensor(_, b)`.
pub fn include_right(product: &Dga, u: &Element) -> Element {
    let offset = product.algebra().num_generators() - u.algebra().num_generators();
    let map: Vec<usize> = (0..u.algebra().num_generators())
        .map(|i| i + offset)
        .collect();
    u.transport(product.algebra(), &map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::model_io::{parse_element, parse_model, render};

    fn heisenberg() -> Dga {
        parse_model("gen a 1\ngen b 1\ngen c 1\nd a = 0\nd b = 0\nd c = -a*b").unwrap()
    }

    fn torus(n: usize) -> Dga {
        let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        Dga::free(Algebra::exterior(&names).unwrap())
    }

    fn reps(h: &Cohomology, k: usize) -> Vec<String> {
        h.basis(k)
            .unwrap()
            .representatives()
            .iter()
            .map(render)
            .collect()
    }

    #[test]
    fn heisenberg_bases() {
        let h = Cohomology::new(&heisenberg()).unwrap();
        assert_eq!(reps(&h, 1), ["a", "b"]);
        assert_eq!(reps(&h, 2), ["a*c", "b*c"]);
        assert_eq!(h.betti().unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(
            Cohomology::new(&torus(5)).unwrap().basis(2).unwrap().dim(),
            10
        );
    }

    #[test]
    fn exactness() {
        let dga = heisenberg();
        let h = Cohomology::new(&dga).unwrap();
        let e = |s: &str| parse_element(&dga, s).unwrap();
        assert_eq!(h.is_exact(&e("-a*b")).unwrap(), Some(e("c")));
        assert_eq!(h.is_exact(&e("a*c")).unwrap(), None);
        assert_eq!(h.is_exact(&e("0")).unwrap(), Some(e("0")));
        assert!(matches!(
            h.is_exact(&e("c")),
            Err(CohomologyError::NotClosed(_))
        ));
    }

    #[test]
    fn cup_products() {
        let dga = heisenberg();
        let h = Cohomology::new(&dga).unwrap();
        let e = |s: &str| parse_element(&dga, s).unwrap();
        assert!(h.cup(&e("a"), &e("b")).unwrap().is_zero());
        let abc = h.cup(&e("a"), &e("b*c")).unwrap();
        assert_eq!(abc.coords, vec![rat(1)]);
        assert_eq!(
            h.cup(&e("1"), &e("b*c")).unwrap(),
            h.class_of(&e("b*c")).unwrap()
        );
        assert!(h.cup(&e("c"), &e("a")).is_err());
    }

    #[test]
    fn pairing_basics() {
        let dga = heisenberg();
        let h = Cohomology::new(&dga).unwrap();
        let e = |s: &str| parse_element(&dga, s).unwrap();
        assert_eq!(h.pairing(&e("a*b*c"), &e("1")).unwrap(), rat(1));
        assert_eq!(h.pairing(&e("a"), &e("b*c")).unwrap(), rat(1));
        assert!(matches!(
            h.pairing(&e("a"), &e("b")),
            Err(CohomologyError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn duality() {
        let h = Cohomology::new(&heisenberg()).unwrap();
        let d1 = h.duality_matrix(1).unwrap();
        assert_eq!((d1.matrix.rows(), d1.matrix.cols()), (2, 2));
        assert!(d1.nondegenerate);
        let d0 = h.duality_matrix(0).unwrap();
        assert_eq!(d0.matrix, RatMatrix::from_i64(&[&[1]]));
        let t = Cohomology::new(&torus(5)).unwrap();
        assert!((0..=5).all(|k| t.duality_matrix(k).unwrap().nondegenerate));
    }

    #[test]
    fn top_cohomology_must_be_one_dimensional() {
        let dga = parse_model("gen a 1\ngen b 1\nd a = 0\nd b = 0").unwrap();
        let h = Cohomology::new(&dga).unwrap();
        assert!(h.duality_matrix(1).unwrap().nondegenerate);
        // A non-unimodular algebra: d b = a*b kills the top class.
        let dga = parse_model("gen a 1\ngen b 1\nd a = 0\nd b = a*b").unwrap();
        let h = Cohomology::new(&dga).unwrap();
        assert!(matches!(
            h.duality_matrix(1),
            Err(CohomologyError::TopCohomology(0))
        ));
    }

    #[test]
    fn even_generators_need_a_limit() {
        let dga = parse_model("gen x 2\nd x = 0").unwrap();
        assert!(matches!(
            Cohomology::new(&dga),
            Err(CohomologyError::Unbounded)
        ));
        let h = Cohomology::up_to(&dga, 6);
        assert_eq!(h.betti().unwrap(), vec![1, 0, 1, 0, 1, 0, 1]);
        assert!(matches!(
            h.orientation(),
            Err(CohomologyError::NoOrientation)
        ));
    }

    #[test]
    fn tensor_products() {
        let x = tensor(&heisenberg(), &torus(5));
        assert_eq!(x.algebra().num_generators(), 8);
        let nonzero: Vec<usize> = (0..8)
            .filter(|&i| !x.generator_differential(i).is_zero())
            .collect();
        assert_eq!(nonzero, vec![2]);
        let unit = Dga::free(Algebra::new(vec![]).unwrap());
        assert_eq!(tensor(&heisenberg(), &unit), heisenberg());
        let nn = tensor(&heisenberg(), &heisenberg());
        let names: Vec<&str> = nn
            .algebra()
            .generators()
            .iter()
            .map(|g| g.name.as_str())
            .collect();
        assert_eq!(names, ["a", "b", "c", "a_1", "b_1", "c_1"]);
        assert_eq!(render(nn.generator_differential(5)), "-a_1*b_1");
        let c = parse_element(&heisenberg(), "c").unwrap();
        assert_eq!(render(&include_right(&nn, &c)), "c_1");
        assert_eq!(render(&include_left(&nn, &c)), "c");
    }
}
