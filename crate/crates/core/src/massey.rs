//! Triple Massey products, their indeterminacy, and pairing certificates.
//!
//! For cocycles `a, b, c` of degrees `p, q, r` with `[a][b] = [b][c] = 0`,
//! pick primitives `d x = a b` and `d y = b c`. The representative is
//!
//! ```text
//! w = x c + (-1)^(p+1) a y
//! ```
//!
//! a cocycle of degree `p + q + r - 1`. Another choice of primitives moves
//! `[w]` inside the indeterminacy `[a] H^(q+r-1) + H^(p+q-1) [c]`, so the
//! product vanishes exactly when `[w]` lies in that subspace.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Element, Rational};
use crate::cohomology::{Class, Cohomology, CohomologyError};
use crate::linalg::Subspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MasseyError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("`{0}` is not closed")]
    NotClosed(String),
    #[error("Massey product undefined: [{left}]·[{right}] is not zero in cohomology")]
    Undefined { left: String, right: String },
    #[error("primitive `{primitive}` does not satisfy d({primitive}) = {expected}")]
    BadPrimitive { primitive: String, expected: String },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
}

/// Outcome of `<[a], [b], [c]>` for one choice of primitives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasseyResult {
    pub a: Element,
    pub b: Element,
    pub c: Element,
    /// Degrees `(p, q, r)` of the inputs.
    pub degrees: (usize, usize, usize),
    /// `d x = a b`
    pub x: Element,
    /// `d y = b c`
    pub y: Element,
    pub representative: Element,
    /// `p + q + r - 1`
    pub degree: usize,
    pub class: Class,
    /// Subspace of `H^degree` coordinates.
    pub indeterminacy: Subspace,
    pub vanishes: bool,
}

/// Pairings of a Massey representative and its indeterminacy against a dual
/// class of complementary degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingCertificate {
    pub dual: Element,
    pub dual_degree: usize,
    pub pairing: Rational,
    /// One entry per canonical basis vector of the indeterminacy.
    pub indeterminacy_pairings: Vec<Rational>,
    /// `pairing != 0` and every indeterminacy pairing is zero.
    pub certified: bool,
}

fn require_closed(h: &Cohomology, u: &Element, k: usize) -> Result<(), MasseyError> {
    if !u.is_homogeneous_of(k) {
        return Err(CohomologyError::NotHomogeneous(u.to_string()).into());
    }
    if !h.dga().is_closed(u).map_err(CohomologyError::from)? {
        return Err(MasseyError::NotClosed(u.to_string()));
    }
    Ok(())
}

fn degree_of(u: &Element) -> Result<usize, MasseyError> {
    u.degree()
        .ok_or_else(|| CohomologyError::NotHomogeneous(u.to_string()).into())
}

/// `<[a],[b],[c]>` for nonzero homogeneous cocycles, using canonical primitives.
pub fn triple_massey(
    h: &Cohomology,
    a: &Element,
    b: &Element,
    c: &Element,
) -> Result<MasseyResult, MasseyError> {
    triple_massey_in(
        h,
        (a, degree_of(a)?),
        (b, degree_of(b)?),
        (c, degree_of(c)?),
    )
}

/// As [`triple_massey`] with explicit degrees, which allows zero inputs.
pub fn triple_massey_in(
    h: &Cohomology,
    (a, p): (&Element, usize),
    (b, q): (&Element, usize),
    (c, r): (&Element, usize),
) -> Result<MasseyResult, MasseyError> {
    for (u, k) in [(a, p), (b, q), (c, r)] {
        require_closed(h, u, k)?;
    }
    let ab = a.mul(b).map_err(CohomologyError::from)?;
    let x = h
        .primitive(&ab, p + q)?
        .ok_or_else(|| MasseyError::Undefined {
            left: a.to_string(),
            right: b.to_string(),
        })?;
    let bc = b.mul(c).map_err(CohomologyError::from)?;
    let y = h
        .primitive(&bc, q + r)?
        .ok_or_else(|| MasseyError::Undefined {
            left: b.to_string(),
            right: c.to_string(),
        })?;
    massey_with_primitives(h, (a, p), (b, q), (c, r), &x, &y)
}

/// `<[a],[b],[c]>` computed from caller-supplied primitives.
pub fn massey_with_primitives(
    h: &Cohomology,
    (a, p): (&Element, usize),
    (b, q): (&Element, usize),
    (c, r): (&Element, usize),
    x: &Element,
    y: &Element,
) -> Result<MasseyResult, MasseyError> {
    let indeterminacy = indeterminacy(h, (a, p), (c, r), p + q + r - 1)?;
    massey_with_indeterminacy(h, (a, p), (b, q), (c, r), x, y, indeterminacy)
}

fn massey_with_indeterminacy(
    h: &Cohomology,
    (a, p): (&Element, usize),
    (b, q): (&Element, usize),
    (c, r): (&Element, usize),
    x: &Element,
    y: &Element,
    indeterminacy: Subspace,
) -> Result<MasseyResult, MasseyError> {
    let dga = h.dga();
    for (prim, left, right, k) in [(x, a, b, p + q - 1), (y, b, c, q + r - 1)] {
        let target = left.mul(right).map_err(CohomologyError::from)?;
        let dp = dga.differential(prim).map_err(CohomologyError::from)?;
        if dp != target || !prim.is_homogeneous_of(k) {
            return Err(MasseyError::BadPrimitive {
                primitive: prim.to_string(),
                expected: target.to_string(),
            });
        }
    }
    let xc = x.mul(c).map_err(CohomologyError::from)?;
    let ay = a.mul(y).map_err(CohomologyError::from)?;
    let ay = if p % 2 == 0 { ay.neg() } else { ay };
    let w = xc.add(&ay).map_err(CohomologyError::from)?;
    let degree = p + q + r - 1;
    let class = h.class_in(&w, degree)?;
    let vanishes = indeterminacy
        .contains(&class.coords)
        .map_err(CohomologyError::from)?;
    Ok(MasseyResult {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        degrees: (p, q, r),
        x: x.clone(),
        y: y.clone(),
        representative: w,
        degree,
        class,
        indeterminacy,
        vanishes,
    })
}

/// `[a] H^(m-p) + H^(m-r) [c]` as a subspace of `H^m` coordinates.
pub fn indeterminacy(
    h: &Cohomology,
    (a, p): (&Element, usize),
    (c, r): (&Element, usize),
    m: usize,
) -> Result<Subspace, MasseyError> {
    if m < p || m < r || m + 1 < p + r {
        return Err(MasseyError::DegreeMismatch(format!(
            "target degree {m} is incompatible with input degrees {p} and {r}"
        )));
    }
    require_closed(h, a, p)?;
    require_closed(h, c, r)?;
    let target = h.basis(m)?;
    let mut span = Subspace::zero(target.dim());
    for phi in h.basis(m - p)?.representatives() {
        let class = h.class_in(&a.mul(phi).map_err(CohomologyError::from)?, m)?;
        span.insert(&class.coords).map_err(CohomologyError::from)?;
    }
    for phi in h.basis(m - r)?.representatives() {
        let class = h.class_in(&phi.mul(c).map_err(CohomologyError::from)?, m)?;
        span.insert(&class.coords).map_err(CohomologyError::from)?;
    }
    Ok(span)
}

/// Pairs the representative and every indeterminacy basis vector with `dual`.
pub fn certify_nonvanishing(
    h: &Cohomology,
    res: &MasseyResult,
    dual: &Element,
) -> Result<PairingCertificate, MasseyError> {
    let top = h.orientation()?.degree;
    let dual_degree = match dual.degree() {
        Some(k) => k,
        None if dual.is_zero() && top >= res.degree => top - res.degree,
        None => return Err(CohomologyError::NotHomogeneous(dual.to_string()).into()),
    };
    if res.degree.checked_add(dual_degree) != Some(top) {
        return Err(MasseyError::DegreeMismatch(format!(
            "dual has degree {dual_degree}, expected {}",
            top.saturating_sub(res.degree)
        )));
    }
    let pairing = h.pairing_in(&res.representative, res.degree, dual, dual_degree)?;
    let basis = h.basis(res.degree)?;
    let mut indeterminacy_pairings = Vec::with_capacity(res.indeterminacy.dim());
    for v in res.indeterminacy.basis() {
        let u = basis.element(v)?;
        indeterminacy_pairings.push(h.pairing_in(&u, res.degree, dual, dual_degree)?);
    }
    let certified = !pairing.is_zero() && indeterminacy_pairings.iter().all(Zero::is_zero);
    Ok(PairingCertificate {
        dual: dual.clone(),
        dual_degree,
        pairing,
        indeterminacy_pairings,
        certified,
    })
}

/// Bounds on the number of basis classes a scan visits per degree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanLimits {
    pub max_classes: Option<usize>,
}

/// All triples of basis classes in degrees `(p, q, r)` whose Massey product
/// is defined and nonvanishing, in lexicographic order of basis indices.
pub fn scan_triple_massey(
    h: &Cohomology,
    (p, q, r): (usize, usize, usize),
    limits: ScanLimits,
) -> Result<Vec<MasseyResult>, MasseyError> {
    if p == 0 || q == 0 || r == 0 {
        return Err(MasseyError::DegreeMismatch(
            "scan degrees must be positive".into(),
        ));
    }
    let take = |k: usize| -> Result<Vec<Element>, MasseyError> {
        let reps = h.basis(k)?.representatives().to_vec();
        let n = limits.max_classes.map_or(reps.len(), |m| m.min(reps.len()));
        Ok(reps.into_iter().take(n).collect())
    };
    let (xs, ys, zs) = (take(p)?, take(q)?, take(r)?);
    let m = p + q + r - 1;
    h.basis(m)?;

    // Primitives of pairwise products, None when the cup product is nonzero.
    let primitives = |left: &[Element], lp: usize, right: &[Element], rp: usize| {
        left.par_iter()
            .map(|u| {
                right
                    .iter()
                    .map(|v| {
                        let uv = u.mul(v).map_err(CohomologyError::from)?;
                        Ok(h.primitive(&uv, lp + rp)?)
                    })
                    .collect::<Result<Vec<Option<Element>>, MasseyError>>()
            })
            .collect::<Result<Vec<_>, MasseyError>>()
    };
    let first = primitives(&xs, p, &ys, q)?;
    let second = primitives(&ys, q, &zs, r)?;

    let pairs: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..zs.len()).map(move |k| (i, k)))
        .collect();
    let needed: Vec<(usize, usize)> = pairs
        .into_iter()
        .filter(|&(i, k)| (0..ys.len()).any(|j| first[i][j].is_some() && second[j][k].is_some()))
        .collect();
    let indeterminacies: HashMap<(usize, usize), Subspace> = needed
        .par_iter()
        .map(|&(i, k)| Ok(((i, k), indeterminacy(h, (&xs[i], p), (&zs[k], r), m)?)))
        .collect::<Result<_, MasseyError>>()?;

    let (nx, ny, nz) = (xs.len(), ys.len(), zs.len());
    let triples: Vec<(usize, usize, usize)> = (0..nx)
        .flat_map(|i| (0..ny).flat_map(move |j| (0..nz).map(move |k| (i, j, k))))
        .collect();
    let results = triples
        .par_iter()
        .map(|&(i, j, k)| {
            let (Some(x), Some(y)) = (&first[i][j], &second[j][k]) else {
                return Ok(None);
            };
            let res = massey_with_indeterminacy(
                h,
                (&xs[i], p),
                (&ys[j], q),
                (&zs[k], r),
                x,
                y,
                indeterminacies[&(i, k)].clone(),
            )?;
            Ok((!res.vanishes).then_some(res))
        })
        .collect::<Result<Vec<Option<MasseyResult>>, MasseyError>>()?;
    Ok(results.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Algebra, Dga};
    use crate::model_io::{parse_element, parse_model, render};

    fn heisenberg() -> Dga {
        parse_model("gen a 1\ngen b 1\ngen c 1\nd a = 0\nd b = 0\nd c = -a*b").unwrap()
    }

    #[test]
    fn heisenberg_product() {
        let dga = heisenberg();
        let h = Cohomology::new(&dga).unwrap();
        let e = |s: &str| parse_element(&dga, s).unwrap();
        let res = triple_massey(&h, &e("a"), &e("b"), &e("a")).unwrap();
        assert_eq!(render(&res.x), "-c");
        assert_eq!(render(&res.y), "c");
        assert_eq!(render(&res.representative), "2*a*c");
        assert_eq!(res.indeterminacy.dim(), 0);
        assert!(!res.vanishes);
        assert_eq!(res.degree, 2);
    }

    #[test]
    fn undefined_and_not_closed() {
        let dga = heisenberg();
        let h = Cohomology::new(&dga).unwrap();
        let e = |s: &str| parse_element(&dga, s).unwrap();
        assert!(matches!(
            triple_massey(&h, &e("a"), &e("b*c"), &e("a")),
            Err(MasseyError::Undefined { .. })
        ));
        assert!(matches!(
            triple_massey(&h, &e("c"), &e("b"), &e("a")),
            Err(MasseyError::NotClosed(_))
        ));
    }

    #[test]
    fn bad_primitive_rejected() {
        let dga = heisenberg();
        let h = Cohomology::new(&dga).unwrap();
        let e = |s: &str| parse_element(&dga, s).unwrap();
        let err = massey_with_primitives(
            &h,
            (&e("a"), 1),
            (&e("b"), 1),
            (&e("a"), 1),
            &e("c"),
            &e("c"),
        )
        .unwrap_err();
        assert!(matches!(err, MasseyError::BadPrimitive { .. }));
    }

    #[test]
    fn trivially_vanishing_product() {
        // Zero products with zero cohomology in the middle degrees.
        let dga = parse_model("gen x 3\ngen y 3\nd x = 0\nd y = 0").unwrap();
        let h = Cohomology::new(&dga).unwrap();
        let x = parse_element(&dga, "x").unwrap();
        let zero = dga.algebra().zero();
        let res = triple_massey_in(&h, (&x, 3), (&zero, 3), (&x, 3)).unwrap();
        assert!(res.representative.is_zero());
        assert!(res.vanishes);
        assert_eq!(res.degree, 8);
    }

    #[test]
    fn indeterminacy_examples() {
        let dga = heisenberg();
        let h = Cohomology::new(&dga).unwrap();
        let a = parse_element(&dga, "a").unwrap();
        assert_eq!(indeterminacy(&h, (&a, 1), (&a, 1), 2).unwrap().dim(), 0);
        assert!(matches!(
            indeterminacy(&h, (&a, 1), (&a, 1), 0),
            Err(MasseyError::DegreeMismatch(_))
        ));
        // Exact inputs: the subspace is still the span of the products.
        let ab = parse_element(&dga, "a*b").unwrap();
        assert_eq!(indeterminacy(&h, (&ab, 2), (&ab, 2), 3).unwrap().dim(), 0);
    }

    #[test]
    fn certificate_degree_mismatch() {
        let dga = heisenberg();
        let h = Cohomology::new(&dga).unwrap();
        let e = |s: &str| parse_element(&dga, s).unwrap();
        let res = triple_massey(&h, &e("a"), &e("b"), &e("a")).unwrap();
        assert!(matches!(
            certify_nonvanishing(&h, &res, &e("1")),
            Err(MasseyError::DegreeMismatch(_))
        ));
        let cert = certify_nonvanishing(&h, &res, &e("b")).unwrap();
        assert_eq!(cert.pairing, rat(-2));
        assert!(cert.certified);
    }

    #[test]
    fn free_models_have_no_witnesses() {
        let dga = Dga::free(Algebra::exterior(&["t1", "t2", "t3"]).unwrap());
        let h = Cohomology::new(&dga).unwrap();
        assert!(scan_triple_massey(&h, (1, 1, 1), ScanLimits::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn scan_limits_cap_the_search() {
        let dga = heisenberg();
        let h = Cohomology::new(&dga).unwrap();
        let all = scan_triple_massey(&h, (1, 1, 1), ScanLimits::default()).unwrap();
        let capped = scan_triple_massey(
            &h,
            (1, 1, 1),
            ScanLimits {
                max_classes: Some(1),
            },
        )
        .unwrap();
        assert!(capped.len() <= all.len());
        assert!(all
            .iter()
            .any(|r| render(&r.a) == "a" && render(&r.b) == "b" && render(&r.c) == "a"));
    }
}
