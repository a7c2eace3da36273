//! Randomized algebraic laws. Every suite runs 1000 cases from a fixed seed.

use cdga::algebra::{rat, Algebra, Dga, Element, GeneratorSpec, Rational};
use cdga::cohomology::Cohomology;
use cdga::linalg::{image, kernel, RatMatrix};
use cdga::massey::{massey_with_primitives, triple_massey};
use cdga::model_io::{parse_element, parse_model, render};
use cdga::scenarios::{heisenberg_model, paper_x, torus_model};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const CASES: u32 = 1000;
const SEED: [u8; 32] = *b"cdga property suite fixed seed!!";

fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        rng_algorithm: RngAlgorithm::ChaCha,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn check<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>)
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).unwrap();
}

fn coefficient() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Random linear combination of the degree-`k` monomials.
fn element_of(alg: &Algebra, k: usize, max_terms: usize) -> impl Strategy<Value = Element> {
    let alg = alg.clone();
    let basis = alg.basis(k);
    let n = basis.len().max(1);
    prop::collection::vec((0..n, coefficient()), 0..=max_terms).prop_map(move |terms| {
        let mut out = alg.zero();
        for (i, c) in terms {
            if let Some(m) = basis.get(i) {
                out = out.add(&alg.monomial(m.clone()).scale(&c)).unwrap();
            }
        }
        out
    })
}

fn homogeneous(alg: &Algebra, max_degree: usize) -> impl Strategy<Value = (usize, Element)> {
    let alg = alg.clone();
    (0..=max_degree).prop_flat_map(move |k| (Just(k), element_of(&alg, k, 4)))
}

fn mixed(alg: &Algebra, max_degree: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec(homogeneous(alg, max_degree), 1..=3).prop_map(|parts| {
        parts
            .into_iter()
            .map(|(_, u)| u)
            .reduce(|x, y| x.add(&y).unwrap())
            .unwrap()
    })
}

/// Odd and even generators with a nontrivial differential on both kinds.
fn mixed_dga() -> Dga {
    parse_model(
        "gen a 1\ngen b 1\ngen c 1\ngen x 2\ngen y 3\ngen z 2\n\
         d a = 0\nd b = 0\nd c = -a*b\nd x = 0\nd y = x^2\nd z = a*b*c + x*a",
    )
    .unwrap()
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn graded_commutativity() {
    let alg = mixed_dga().algebra().clone();
    check(
        (homogeneous(&alg, 5), homogeneous(&alg, 5)),
        |((p, u), (q, v))| {
            let uv = u.mul(&v).unwrap();
            let vu = v.mul(&u).unwrap().scale(&sign(p * q));
            prop_assert_eq!(uv, vu);
            Ok(())
        },
    );
}

pub fn associativity_and_distributivity() {
    let alg = mixed_dga().algebra().clone();
    check(
        (mixed(&alg, 4), mixed(&alg, 4), mixed(&alg, 4)),
        |(u, v, w)| {
            let left = u.mul(&v).unwrap().mul(&w).unwrap();
            let right = u.mul(&v.mul(&w).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let split = u.mul(&v).unwrap().add(&u.mul(&w).unwrap()).unwrap();
            prop_assert_eq!(u.mul(&v.add(&w).unwrap()).unwrap(), split);
            Ok(())
        },
    );
}

pub fn leibniz_rule() {
    for dga in [mixed_dga(), paper_x(8).unwrap().dga] {
        let alg = dga.algebra().clone();
        check((homogeneous(&alg, 4), mixed(&alg, 4)), |((p, u), v)| {
            let lhs = dga.differential(&u.mul(&v).unwrap()).unwrap();
            let du_v = dga.differential(&u).unwrap().mul(&v).unwrap();
            let u_dv = u
                .mul(&dga.differential(&v).unwrap())
                .unwrap()
                .scale(&sign(p));
            prop_assert_eq!(lhs, du_v.add(&u_dv).unwrap());
            Ok(())
        });
    }
}

pub fn differential_squares_to_zero() {
    for dga in [mixed_dga(), paper_x(8).unwrap().dga] {
        let alg = dga.algebra().clone();
        check(mixed(&alg, 6), |u| {
            let du = dga.differential(&u).unwrap();
            prop_assert!(dga.differential(&du).unwrap().is_zero());
            if let Some(k) = u.degree() {
                prop_assert!(du.is_homogeneous_of(k + 1));
            }
            Ok(())
        });
    }
}

/// Random combination of the basis representatives of `H^k` plus a coboundary.
fn cocycle(h: &Cohomology, k: usize) -> impl Strategy<Value = (Vec<Rational>, Element)> {
    let basis = h.basis(k).unwrap();
    let alg = h.dga().algebra().clone();
    let dga = h.dga().clone();
    let dim = basis.dim();
    (
        prop::collection::vec(coefficient(), dim),
        element_of(&alg, k - 1, 3),
    )
        .prop_map(move |(coords, e)| {
            let z = basis.element(&coords).unwrap();
            let u = z.add(&dga.differential(&e).unwrap()).unwrap();
            (coords, u)
        })
}

pub fn cup_product_ignores_representatives() {
    let x = paper_x(7).unwrap();
    let h = Cohomology::new(&x.dga).unwrap();
    let alg = x.dga.algebra().clone();
    check(
        (
            cocycle(&h, 2),
            cocycle(&h, 3),
            element_of(&alg, 1, 3),
            element_of(&alg, 2, 3),
        ),
        |((cu, u), (cv, v), e, f)| {
            let u2 = u.add(&x.dga.differential(&e).unwrap()).unwrap();
            let v2 = v.add(&x.dga.differential(&f).unwrap()).unwrap();
            let first = h.cup(&u, &v).unwrap();
            prop_assert_eq!(&first, &h.cup(&u2, &v2).unwrap());
            prop_assert_eq!(h.class_of(&u).unwrap().coords, cu.clone());
            let cl_u = h.class_of(&u2).unwrap();
            let cl_v = h.class_of(&v2).unwrap();
            prop_assert_eq!(cl_v.coords.clone(), cv);
            prop_assert_eq!(h.cup_classes(&cl_u, &cl_v).unwrap(), first);
            Ok(())
        },
    );
}

pub fn massey_verdict_ignores_primitive_choice() {
    let x = paper_x(7).unwrap();
    let h = Cohomology::new(&x.dga).unwrap();
    let base = triple_massey(&h, &x.a1, &x.b2, &x.a3).unwrap();
    let torus = torus_model(3).unwrap();
    let ht = Cohomology::new(&torus).unwrap();
    let t1 = parse_element(&torus, "t1").unwrap();
    let tbase = triple_massey(&ht, &t1, &t1, &t1).unwrap();
    assert!(!base.vanishes && tbase.vanishes);

    let cases = [(&h, &base, (2, 2, 2), 3), (&ht, &tbase, (1, 1, 1), 1)];
    for (h, base, (p, q, r), k) in cases {
        check((cocycle(h, k), cocycle(h, k)), |((_, z), (_, z2))| {
            let x2 = base.x.add(&z).unwrap();
            let y2 = base.y.add(&z2).unwrap();
            let res = massey_with_primitives(h, (&base.a, p), (&base.b, q), (&base.c, r), &x2, &y2)
                .unwrap();
            prop_assert_eq!(res.vanishes, base.vanishes);
            prop_assert!(h.dga().is_closed(&res.representative).unwrap());
            let diff: Vec<Rational> = res
                .class
                .coords
                .iter()
                .zip(&base.class.coords)
                .map(|(s, t)| s - t)
                .collect();
            prop_assert!(base.indeterminacy.contains(&diff).unwrap());
            Ok(())
        });
    }
}

fn matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(|rows| {
            RatMatrix::from_rows(
                rows.into_iter()
                    .map(|row| row.into_iter().map(rat).collect())
                    .collect(),
            )
        })
    })
}

pub fn rank_nullity_and_kernel() {
    check(matrix(), |m| {
        let ker = kernel(&m);
        prop_assert_eq!(m.rank() + ker.dim(), m.cols());
        prop_assert_eq!(image(&m).dim(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
        for v in ker.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        Ok(())
    });
}

pub fn image_membership() {
    let strategy = matrix().prop_flat_map(|m| {
        let c = m.cols();
        (Just(m), prop::collection::vec(coefficient(), c))
    });
    check(strategy, |(m, v)| {
        let w = m.mul_vec(&v).unwrap();
        let im = image(&m);
        let coeffs = im.member(&w).unwrap();
        prop_assert!(coeffs.is_some());
        let mut back = vec![Rational::zero(); m.rows()];
        for (c, b) in coeffs.unwrap().iter().zip(im.basis()) {
            for (x, y) in back.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        prop_assert_eq!(&back, &w);
        let solution = cdga::linalg::solve(&m, &w).unwrap().unwrap();
        prop_assert_eq!(m.mul_vec(&solution).unwrap(), w);
        Ok(())
    });
}

pub fn rref_is_idempotent_and_normalized() {
    check(matrix(), |m| {
        let (r, pivots) = m.rref();
        let (again, pivots2) = r.rref();
        prop_assert_eq!(&again, &r);
        prop_assert_eq!(&pivots, &pivots2);
        for (i, &j) in pivots.iter().enumerate() {
            prop_assert!(r.get(i, j).is_one());
            for row in 0..r.rows() {
                if row != i {
                    prop_assert!(r.get(row, j).is_zero());
                }
            }
        }
        prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        Ok(())
    });
}

pub fn parse_render_round_trip() {
    let dgas = [mixed_dga(), paper_x(8).unwrap().dga, heisenberg_model()];
    for dga in dgas {
        let alg = dga.algebra().clone();
        check(mixed(&alg, 5), |u| {
            let text = render(&u);
            let back = parse_element(&dga, &text).unwrap();
            prop_assert_eq!(&back, &u);
            prop_assert_eq!(render(&back), text);
            Ok(())
        });
    }
}

pub fn coefficients_stay_in_lowest_terms() {
    let alg = Algebra::new(vec![GeneratorSpec::new("u", 2)]).unwrap();
    check((element_of(&alg, 2, 4), coefficient()), |(u, q)| {
        let scaled = u.scale(&q);
        for (_, c) in scaled.terms() {
            prop_assert!(!c.is_zero());
            prop_assert!(c.denom().is_positive());
        }
        Ok(())
    });
}

#[allow(dead_code)]
pub const ALL: &[(&str, fn())] = &[
    ("graded_commutativity", graded_commutativity),
    (
        "associativity_and_distributivity",
        associativity_and_distributivity,
    ),
    ("leibniz_rule", leibniz_rule),
    ("differential_squares_to_zero", differential_squares_to_zero),
    (
        "cup_product_ignores_representatives",
        cup_product_ignores_representatives,
    ),
    (
        "massey_verdict_ignores_primitive_choice",
        massey_verdict_ignores_primitive_choice,
    ),
    ("rank_nullity_and_kernel", rank_nullity_and_kernel),
    ("image_membership", image_membership),
    (
        "rref_is_idempotent_and_normalized",
        rref_is_idempotent_and_normalized,
    ),
    ("parse_render_round_trip", parse_render_round_trip),
    (
        "coefficients_stay_in_lowest_terms",
        coefficients_stay_in_lowest_terms,
    ),
];
