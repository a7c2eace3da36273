// Exact rational row reduction, kernels, images and subspace membership.
//
// Run with `cargo run --example exact_linalg`.

use std::error::Error;

use cdga::algebra::{rat, ratio};
use cdga::linalg::{image, kernel, solve, RatMatrix, Subspace};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let m = RatMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    let (r, pivots) = m.rref();
    let ker = kernel(&m);
    let im = image(&m);
    assert_eq!(ker.dim() + im.dim(), m.cols());

    let x = solve(&m, &[rat(6), rat(12), rat(2)])?.expect("consistent");
    assert_eq!(m.mul_vec(&x)?, vec![rat(6), rat(12), rat(2)]);

    let mut s = Subspace::zero(3);
    s.insert(&[rat(1), rat(1), rat(0)])?;
    s.insert(&[rat(0), rat(2), rat(1)])?;
    let v = [ratio(1, 2), ratio(3, 2), ratio(1, 2)];
    let coeffs = s.member(&v)?.expect("in span");

    let fmt = |xs: &[_]| {
        xs.iter()
            .map(|q: &cdga::Rational| q.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    for i in 0..r.rows() {
        out.push_str(&format!("[{}]\n", fmt(r.row(i))));
    }
    out.push_str(&format!(
        "pivots {pivots:?}, kernel dim {}, image dim {}\nsolution {}\nmember coefficients {}\n",
        ker.dim(),
        im.dim(),
        fmt(&x),
        fmt(&coeffs)
    ));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
