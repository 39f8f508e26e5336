//! Dense complex linear algebra used by the time evolution: the matrix
//! exponential and a right-eigenvector decomposition of non-normal matrices.

use nalgebra::{DMatrix, DVector, Schur, SVD};

use crate::C64;

/// Induced 1-norm (maximum absolute column sum).
pub fn norm1(a: &DMatrix<C64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// Largest 1-norms for which the [m/m] Padé approximant is accurate to unit
// roundoff in double precision.
const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
];
const THETA13: f64 = 5.371920351148152;

fn scaled(a: &DMatrix<C64>, s: f64) -> DMatrix<C64> {
    a.map(|z| z * s)
}

/// Odd/even parts `(U, V)` of the Padé numerator for degree 3..9.
fn pade_low(a: &DMatrix<C64>, b: &[f64]) -> (DMatrix<C64>, DMatrix<C64>) {
    let n = a.nrows();
    let ident = DMatrix::<C64>::identity(n, n);
    let a2 = a * a;
    let mut powers = vec![ident.clone(), a2.clone()];
    let m = b.len() - 1;
    while powers.len() <= m / 2 {
        let next = powers.last().unwrap() * &a2;
        powers.push(next);
    }
    let mut u_inner = DMatrix::<C64>::zeros(n, n);
    let mut v = DMatrix::<C64>::zeros(n, n);
    for (k, p) in powers.iter().enumerate() {
        u_inner += scaled(p, b[2 * k + 1]);
        v += scaled(p, b[2 * k]);
    }
    (a * u_inner, v)
}

fn pade13(a: &DMatrix<C64>) -> (DMatrix<C64>, DMatrix<C64>) {
    let b = &PADE13;
    let n = a.nrows();
    let ident = DMatrix::<C64>::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_hi = scaled(&a6, b[13]) + scaled(&a4, b[11]) + scaled(&a2, b[9]);
    let u_inner = &a6 * u_hi
        + scaled(&a6, b[7])
        + scaled(&a4, b[5])
        + scaled(&a2, b[3])
        + scaled(&ident, b[1]);
    let u = a * u_inner;
    let v_hi = scaled(&a6, b[12]) + scaled(&a4, b[10]) + scaled(&a2, b[8]);
    let v = &a6 * v_hi
        + scaled(&a6, b[6])
        + scaled(&a4, b[4])
        + scaled(&a2, b[2])
        + scaled(&ident, b[0]);
    (u, v)
}

/// Matrix exponential by Padé approximation with scaling and squaring.
///
/// Returns `None` if the Padé denominator is singular or the result is not
/// finite.
pub fn expm(a: &DMatrix<C64>) -> Option<DMatrix<C64>> {
    assert!(a.is_square(), "expm requires a square matrix");
    let n = a.nrows();
    if n == 0 {
        return Some(a.clone());
    }
    let norm = norm1(a);
    if !norm.is_finite() {
        return None;
    }

    let (u, v, squarings) = match THETA.iter().find(|(_, theta)| norm <= *theta) {
        Some(&(3, _)) => { let (u, v) = pade_low(a, &PADE3); (u, v, 0) }
        Some(&(5, _)) => { let (u, v) = pade_low(a, &PADE5); (u, v, 0) }
        Some(&(7, _)) => { let (u, v) = pade_low(a, &PADE7); (u, v, 0) }
        Some(_) => { let (u, v) = pade_low(a, &PADE9); (u, v, 0) }
        None => {
            let s = ((norm / THETA13).log2().ceil()).max(0.0) as i32;
            let a_scaled = scaled(a, 0.5f64.powi(s));
            let (u, v) = pade13(&a_scaled);
            (u, v, s)
        }
    };

    let denominator = &v - &u;
    let numerator = &v + &u;
    let mut result = denominator.lu().solve(&numerator)?;
    for _ in 0..squarings {
        result = &result * &result;
    }
    result.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(result)
}

/// Right-eigenvector decomposition `A = V diag(λ) V⁻¹` of a general complex
/// matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: DVector<C64>,
    /// Unit-norm eigenvectors as columns.
    pub vectors: DMatrix<C64>,
    /// 2-norm condition number of `vectors`.
    pub condition: f64,
    lu: nalgebra::LU<C64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl EigenDecomposition {
    /// Computes the decomposition from a complex Schur form followed by
    /// back-substitution on the triangular factor.
    ///
    /// Returns `None` if the Schur iteration fails to converge. Defective or
    /// nearly defective matrices yield a huge (possibly infinite)
    /// [`condition`](Self::condition) rather than an error.
    pub fn new(a: &DMatrix<C64>) -> Option<Self> {
        let n = a.nrows();
        let scale = norm1(a).max(f64::MIN_POSITIVE);
        let (q, t) = Schur::try_new(a.clone(), f64::EPSILON, 100 * n.max(10))?.unpack();
        let eigenvalues = DVector::from_iterator(n, (0..n).map(|i| t[(i, i)]));

        let small = f64::EPSILON * scale;
        let mut y = DMatrix::<C64>::zeros(n, n);
        for k in 0..n {
            y[(k, k)] = C64::new(1.0, 0.0);
            let lambda = t[(k, k)];
            for i in (0..k).rev() {
                let mut acc = C64::new(0.0, 0.0);
                for j in i + 1..=k {
                    acc += t[(i, j)] * y[(j, k)];
                }
                let mut denom = t[(i, i)] - lambda;
                if denom.norm() < small {
                    denom = C64::new(small, 0.0);
                }
                y[(i, k)] = -acc / denom;
            }
        }
        let mut vectors = q * y;
        for mut col in vectors.column_iter_mut() {
            let norm = col.norm();
            if norm > 0.0 && norm.is_finite() {
                col.unscale_mut(norm);
            }
        }

        let condition = if vectors.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            let sv = SVD::new(vectors.clone(), false, false).singular_values;
            let max = sv.max();
            let min = sv.min();
            if min > 0.0 { max / min } else { f64::INFINITY }
        } else {
            f64::INFINITY
        };
        let lu = vectors.clone().lu();
        Some(Self { eigenvalues, vectors, condition, lu })
    }

    /// Expansion coefficients `V⁻¹ x`.
    pub fn coefficients(&self, x: &DVector<C64>) -> Option<DVector<C64>> {
        self.lu.solve(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Taylor series with many terms; only used for small-norm inputs.
    fn taylor(a: &DMatrix<C64>) -> DMatrix<C64> {
        let n = a.nrows();
        let mut term = DMatrix::<C64>::identity(n, n);
        let mut sum = term.clone();
        for k in 1..60 {
            term = &term * a / C64::new(k as f64, 0.0);
            sum += &term;
        }
        sum
    }

    fn sample(n: usize, scale: f64) -> DMatrix<C64> {
        DMatrix::from_fn(n, n, |i, j| {
            let x = ((i * 7 + j * 13) % 11) as f64 / 11.0 - 0.5;
            let y = ((i * 5 + j * 3) % 7) as f64 / 7.0 - 0.5;
            C64::new(x, y) * scale
        })
    }

    #[test]
    fn expm_matches_taylor_across_pade_degrees() {
        for scale in [1e-3, 0.05, 0.2, 0.5, 1.0, 2.0] {
            let a = sample(5, scale);
            let e = expm(&a).unwrap();
            assert!(max_diff(&e, &taylor(&a)) < 1e-13, "scale {scale}");
        }
    }

    #[test]
    fn expm_of_diagonal_and_jordan_block() {
        let mut a = DMatrix::<C64>::zeros(2, 2);
        a[(0, 0)] = C64::new(-3.0, 1.0);
        a[(1, 1)] = C64::new(-3.0, 1.0);
        a[(1, 0)] = C64::new(4.0, 0.0);
        // exp([[λ,0],[c,λ]]) = e^λ [[1,0],[c,1]]
        let e = expm(&a).unwrap();
        let el = a[(0, 0)].exp();
        assert!((e[(0, 0)] - el).norm() < 1e-14);
        assert!((e[(1, 0)] - el * 4.0).norm() < 1e-13);
        assert!(e[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn expm_large_norm_uses_squaring() {
        // i·H with H Hermitian and ‖H‖ ~ 50: the exponential is unitary and
        // exp(A) exp(-A) = I.
        let b = sample(6, 20.0);
        let h = &b + b.adjoint();
        let a = h.map(|z| z * C64::i());
        let u = expm(&a).unwrap();
        let ident = DMatrix::<C64>::identity(6, 6);
        assert!(max_diff(&(&u * u.adjoint()), &ident) < 1e-12);
        let neg = -a.clone();
        assert!(max_diff(&(&u * expm(&neg).unwrap()), &ident) < 1e-12);
        // squaring step agrees with a directly scaled half step
        let half = expm(&a.map(|z| z * 0.5)).unwrap();
        assert!(max_diff(&(&half * &half), &u) < 1e-12);
    }

    #[test]
    fn eigen_decomposition_reconstructs() {
        let a = sample(7, 1.0);
        let eig = EigenDecomposition::new(&a).unwrap();
        let lambda = DMatrix::from_diagonal(&eig.eigenvalues);
        let lhs = &a * &eig.vectors;
        let rhs = &eig.vectors * lambda;
        assert!(max_diff(&lhs, &rhs) < 1e-12);
        assert!(eig.condition.is_finite());
    }

    #[test]
    fn defective_matrix_reports_huge_condition() {
        let mut a = DMatrix::<C64>::zeros(3, 3);
        for i in 0..3 {
            a[(i, i)] = C64::new(0.0, -0.5);
        }
        a[(1, 0)] = C64::new(0.0, -1.0);
        a[(2, 1)] = C64::new(0.0, -1.0);
        let eig = EigenDecomposition::new(&a).unwrap();
        assert!(eig.condition > 1e8);
    }
}
