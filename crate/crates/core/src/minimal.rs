//! Minimality checks and minimal models of simply connected DGAs.
//!
//! The construction runs degree by degree. In degree `k` it first adds
//! closed generators hitting the classes of `H^k` missed so far, then adds
//! generators of degree `k` whose differentials kill the kernel of the
//! induced map on `H^(k+1)`. With no generators of degree 1, elements of
//! degree `k + 1` never involve the new degree-`k` generators, so a single
//! pass per degree suffices.

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Dga, Element, GeneratorSpec};
use crate::cohomology::{Cohomology, CohomologyError};
use crate::linalg::{self, RatMatrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinimalModelError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("H^0 has dimension {0}; the input must be connected")]
    NotConnected(usize),
    #[error(
        "H^1 has dimension {0} and the input is not minimal; \
         only simply connected inputs are supported"
    )]
    NotSimplyConnected(usize),
}

/// A minimal DGA with a morphism into the input, valid through `cutoff`.
#[derive(Debug, Clone)]
pub struct MinimalModelResult {
    pub model: Dga,
    /// Image of each model generator in `target`.
    pub morphism: Vec<Element>,
    pub target: Dga,
    pub cutoff: usize,
    /// The input was already minimal and `morphism` is the identity.
    pub already_minimal: bool,
}

impl MinimalModelResult {
    /// Applies the morphism to an element of the model.
    pub fn apply(&self, u: &Element) -> Result<Element, AlgebraError> {
        apply_morphism(self.target.algebra(), &self.morphism, u)
    }
}

pub fn is_minimal(dga: &Dga) -> bool {
    dga.is_minimal()
}

/// Extends generator images multiplicatively to `u`.
pub fn apply_morphism(
    target: &Algebra,
    images: &[Element],
    u: &Element,
) -> Result<Element, AlgebraError> {
    let mut out = target.zero();
    for (m, c) in u.terms() {
        let mut term = target.one().scale(c);
        for &(g, e) in m.factors() {
            for _ in 0..e {
                term = term.mul(&images[g])?;
            }
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

struct Builder {
    generators: Vec<GeneratorSpec>,
    differentials: Vec<Element>,
    images: Vec<Element>,
    per_degree: Vec<usize>,
}

impl Builder {
    fn algebra(&self) -> Result<Algebra, AlgebraError> {
        Algebra::new(self.generators.clone())
    }

    fn dga(&self) -> Result<Dga, AlgebraError> {
        let alg = self.algebra()?;
        let identity: Vec<usize> = (0..self.generators.len()).collect();
        let ds = self
            .differentials
            .iter()
            .map(|d| d.transport(&alg, &identity))
            .collect();
        Dga::new(alg, ds)
    }

    fn push(&mut self, degree: usize, differential: Element, image: Element) {
        if self.per_degree.len() <= degree {
            self.per_degree.resize(degree + 1, 0);
        }
        self.per_degree[degree] += 1;
        let name = format!("v{degree}_{}", self.per_degree[degree]);
        self.generators
            .push(GeneratorSpec::new(name, degree as i64));
        self.differentials.push(differential);
        self.images.push(image);
    }
}

/// Matrix of the map `H^k(model) -> H^k(target)` in the chosen bases, or
/// `None` if some image is not a cocycle.
fn induced_map(
    model: &Cohomology,
    target: &Cohomology,
    images: &[Element],
    k: usize,
) -> Result<Option<RatMatrix>, MinimalModelError> {
    let source = model.basis(k)?;
    let dest = target.basis(k)?;
    let talg = target.dga().algebra();
    let mut columns = Vec::with_capacity(source.dim());
    for rep in source.representatives() {
        let image = apply_morphism(talg, images, rep)?;
        match target.class_in(&image, k) {
            Ok(class) => columns.push(class.coords),
            Err(CohomologyError::NotClosed(_)) | Err(CohomologyError::NotHomogeneous(_)) => {
                return Ok(None)
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Some(RatMatrix::from_columns(dest.dim(), &columns)))
}

/// Minimal model of `dga` through degree `cutoff`.
///
/// Minimal inputs are returned unchanged with the identity morphism.
/// Otherwise the input must be connected and simply connected.
pub fn minimal_model(dga: &Dga, cutoff: usize) -> Result<MinimalModelResult, MinimalModelError> {
    let alg = dga.algebra();
    if dga.is_minimal() {
        return Ok(MinimalModelResult {
            model: dga.clone(),
            morphism: (0..alg.num_generators())
                .map(|i| alg.generator(i))
                .collect(),
            target: dga.clone(),
            cutoff,
            already_minimal: true,
        });
    }
    let target = Cohomology::up_to(dga, cutoff + 1);
    let b0 = target.basis(0)?.dim();
    if b0 != 1 {
        return Err(MinimalModelError::NotConnected(b0));
    }
    if cutoff >= 1 {
        let b1 = target.basis(1)?.dim();
        if b1 != 0 {
            return Err(MinimalModelError::NotSimplyConnected(b1));
        }
    }

    let mut builder = Builder {
        generators: Vec::new(),
        differentials: Vec::new(),
        images: Vec::new(),
        per_degree: Vec::new(),
    };
    for k in 2..=cutoff {
        // Surjectivity in degree k.
        let model = builder.dga()?;
        let hm = Cohomology::up_to(&model, k + 1);
        let map = induced_map(&hm, &target, &builder.images, k)?.expect("chain map");
        let mut hit = linalg::image(&map);
        let target_k = target.basis(k)?;
        for (i, rep) in target_k.representatives().iter().enumerate() {
            let mut e = vec![num_traits::Zero::zero(); target_k.dim()];
            e[i] = num_traits::One::one();
            if hit.insert(&e).map_err(CohomologyError::from)? {
                builder.push(k, model.algebra().zero(), rep.clone());
            }
        }

        // Injectivity in degree k + 1.
        let model = builder.dga()?;
        let hm = Cohomology::up_to(&model, k + 1);
        let map = induced_map(&hm, &target, &builder.images, k + 1)?.expect("chain map");
        let kernel: Subspace = linalg::kernel(&map);
        let source = hm.basis(k + 1)?;
        for v in kernel.basis() {
            let z = source.element(v)?;
            let image = apply_morphism(dga.algebra(), &builder.images, &z)?;
            let primitive = target
                .primitive(&image, k + 1)?
                .expect("kernel classes map to exact cocycles");
            builder.push(k, z, primitive);
        }
    }
    let model = builder.dga()?;
    Ok(MinimalModelResult {
        model,
        morphism: builder.images,
        target: dga.clone(),
        cutoff,
        already_minimal: false,
    })
}

/// True iff the morphism commutes with `d` on generators and induces
/// isomorphisms on `H^k` for every `k <= cutoff`.
pub fn check_quasi_iso(res: &MinimalModelResult) -> bool {
    check(res).unwrap_or(false)
}

fn check(res: &MinimalModelResult) -> Result<bool, MinimalModelError> {
    let talg = res.target.algebra();
    if res.morphism.len() != res.model.algebra().num_generators() {
        return Ok(false);
    }
    for (g, image) in res.morphism.iter().enumerate() {
        if image.algebra() != talg {
            return Ok(false);
        }
        let lhs = res.target.differential(image)?;
        let rhs = res.apply(res.model.generator_differential(g))?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    let hm = Cohomology::up_to(&res.model, res.cutoff);
    let ht = Cohomology::up_to(&res.target, res.cutoff);
    for k in 0..=res.cutoff {
        let Some(map) = induced_map(&hm, &ht, &res.morphism, k)? else {
            return Ok(false);
        };
        if map.rows() != map.cols() || map.rank() != map.rows() {
            return Ok(false);
        }
    }
    Ok(true)
}
