//! Dense complex matrices for small systems, used as an independent oracle
//! for the symplectic routines. Generic over the real scalar type.

use nalgebra::{DMatrix, DVector, RealField};
use num_complex::Complex;
use num_traits::{Float, FromPrimitive};

use crate::error::{Error, Result};
use crate::pauli::{C4Rotation, PauliOperator};

/// Largest qubit count accepted by the dense routines.
pub const MAX_DENSE_QUBITS: usize = 12;

pub trait Scalar: RealField + Float + FromPrimitive + Copy {}

impl<T: RealField + Float + FromPrimitive + Copy> Scalar for T {}

pub type Matrix<T> = DMatrix<Complex<T>>;
pub type Vector<T> = DVector<Complex<T>>;

fn guard(n: usize) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooLarge {
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

fn c<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::from_f64(re).unwrap(), T::from_f64(im).unwrap())
}

fn i_pow<T: Scalar>(k: u8) -> Complex<T> {
    match k % 4 {
        0 => c(1.0, 0.0),
        1 => c(0.0, 1.0),
        2 => c(-1.0, 0.0),
        _ => c(0.0, -1.0),
    }
}

/// Qubit 0 is the most significant bit of the basis index (Kronecker order).
struct Masks {
    x: usize,
    z: usize,
    phase: u8,
}

fn masks(p: &PauliOperator) -> Masks {
    let n = p.n();
    let mut x = 0usize;
    let mut z = 0usize;
    for q in 0..n {
        let bit = 1usize << (n - 1 - q);
        if p.x_bits().get(q) {
            x |= bit;
        }
        if p.z_bits().get(q) {
            z |= bit;
        }
    }
    Masks {
        x,
        z,
        phase: p.phase_exp(),
    }
}

/// For basis column `b`, the operator sends `|b>` to `value * |b ^ x>`.
fn column_action<T: Scalar>(m: &Masks, b: usize) -> (usize, Complex<T>) {
    let sign = if (m.z & b).count_ones() % 2 == 1 { 2 } else { 0 };
    (b ^ m.x, i_pow(m.phase + sign))
}

pub fn pauli_matrix<T: Scalar>(p: &PauliOperator) -> Result<Matrix<T>> {
    guard(p.n())?;
    let dim = 1usize << p.n();
    let m = masks(p);
    let mut out = Matrix::<T>::zeros(dim, dim);
    for b in 0..dim {
        let (row, v) = column_action::<T>(&m, b);
        out[(row, b)] = v;
    }
    Ok(out)
}

pub fn rotation_matrix<T: Scalar>(r: &C4Rotation) -> Result<Matrix<T>> {
    let g = pauli_matrix::<T>(r.generator())?;
    let dim = g.nrows();
    let scale = c::<T>(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Ok((Matrix::<T>::identity(dim, dim) + g * c::<T>(0.0, 1.0)) * scale)
}

/// `m * G` without forming `G`.
fn right_mul_pauli<T: Scalar>(m: &Matrix<T>, g: &PauliOperator) -> Matrix<T> {
    let masks = masks(g);
    let mut out = Matrix::<T>::zeros(m.nrows(), m.ncols());
    for b in 0..m.ncols() {
        // column b of M*G = sum_r M[:, r] G[r, b] = v * M[:, b ^ x]
        let (row, v) = column_action::<T>(&masks, b);
        for i in 0..m.nrows() {
            out[(i, b)] = m[(i, row)] * v;
        }
    }
    out
}

/// Ordered product `R_1 R_2 ... R_k`; conjugating by this product reproduces
/// sequential application of [`PauliOperator::conjugate_by`].
pub fn sequence_unitary<'a, T: Scalar>(
    n: usize,
    rotations: impl IntoIterator<Item = &'a C4Rotation>,
) -> Result<Matrix<T>> {
    guard(n)?;
    let dim = 1usize << n;
    let scale = c::<T>(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut u = Matrix::<T>::identity(dim, dim);
    for r in rotations {
        if r.n() != n {
            return Err(Error::SizeMismatch { left: n, right: r.n() });
        }
        let ug = right_mul_pauli(&u, r.generator());
        u = (&u + ug * c::<T>(0.0, 1.0)) * scale;
    }
    Ok(u)
}

/// `U^dagger M U`.
pub fn conjugate<T: Scalar>(m: &Matrix<T>, u: &Matrix<T>) -> Matrix<T> {
    u.adjoint() * m * u
}

/// `sum_k coeff_k P_k` as a dense matrix.
pub fn hamiltonian_matrix<T: Scalar>(n: usize, terms: &[(f64, PauliOperator)]) -> Result<Matrix<T>> {
    guard(n)?;
    let dim = 1usize << n;
    let mut h = Matrix::<T>::zeros(dim, dim);
    for (coeff, p) in terms {
        if p.n() != n {
            return Err(Error::SizeMismatch { left: n, right: p.n() });
        }
        let m = masks(p);
        let k = c::<T>(*coeff, 0.0);
        for b in 0..dim {
            let (row, v) = column_action::<T>(&m, b);
            h[(row, b)] += v * k;
        }
    }
    Ok(h)
}

pub fn max_abs_diff<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> T {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (*x - *y).norm())
        .fold(T::zero(), |acc, v| Float::max(acc, v))
}

fn apply_pauli<T: Scalar>(p: &PauliOperator, v: &Vector<T>) -> Vector<T> {
    let m = masks(p);
    let mut out = Vector::<T>::zeros(v.len());
    for b in 0..v.len() {
        let (row, val) = column_action::<T>(&m, b);
        out[row] += val * v[b];
    }
    out
}

/// The unique joint +1 eigenvector of `n` independent commuting Hermitian
/// Paulis, found by projecting computational basis states.
pub fn stabilizer_state<T: Scalar>(n: usize, stabilizers: &[PauliOperator]) -> Result<Vector<T>> {
    guard(n)?;
    let dim = 1usize << n;
    let half = c::<T>(0.5, 0.0);
    let tol = T::from_f64(1e-6).unwrap();
    for start in 0..dim {
        let mut v = Vector::<T>::zeros(dim);
        v[start] = c(1.0, 0.0);
        for s in stabilizers {
            let sv = apply_pauli(s, &v);
            v = (v + sv) * half;
        }
        let norm = v.norm();
        if norm > tol {
            return Ok(v.unscale(norm));
        }
    }
    Err(Error::NonMaximalGroup { rank: 0, n })
}

/// Reduced density matrix on `region` (qubit indices) of a pure state.
pub fn reduced_density_matrix<T: Scalar>(n: usize, psi: &Vector<T>, region: &[usize]) -> Result<Matrix<T>> {
    guard(n)?;
    for &q in region {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, n });
        }
    }
    let rest: Vec<usize> = (0..n).filter(|q| !region.contains(q)).collect();
    let bit = |q: usize| 1usize << (n - 1 - q);
    let compose = |a: usize, b: usize| {
        let mut idx = 0;
        for (k, &q) in region.iter().enumerate() {
            if a >> (region.len() - 1 - k) & 1 == 1 {
                idx |= bit(q);
            }
        }
        for (k, &q) in rest.iter().enumerate() {
            if b >> (rest.len() - 1 - k) & 1 == 1 {
                idx |= bit(q);
            }
        }
        idx
    };
    let da = 1usize << region.len();
    let db = 1usize << rest.len();
    let mut rho = Matrix::<T>::zeros(da, da);
    for i in 0..da {
        for j in 0..da {
            let mut acc = Complex::new(T::zero(), T::zero());
            for b in 0..db {
                acc += psi[compose(i, b)] * psi[compose(j, b)].conj();
            }
            rho[(i, j)] = acc;
        }
    }
    Ok(rho)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Uses the real Schur form: of `Re(m)` when `m` is real, otherwise of the
/// embedding `[[Re, -Im], [Im, Re]]`, whose spectrum is that of `m` with
/// every eigenvalue doubled. nalgebra's symmetric tridiagonal solver returns
/// NaN on some rank-deficient density matrices; the Schur iteration does not.
pub fn hermitian_eigenvalues<T: Scalar>(m: &Matrix<T>) -> Result<Vec<T>> {
    let n = m.nrows();
    let real_input = m.iter().all(|v| v.im == T::zero());
    let size = if real_input { n } else { 2 * n };
    let mut real = DMatrix::<T>::zeros(size, size);
    for i in 0..n {
        for j in 0..n {
            let v = m[(i, j)];
            real[(i, j)] = v.re;
            if !real_input {
                real[(n + i, n + j)] = v.re;
                real[(i, n + j)] = -v.im;
                real[(n + i, j)] = v.im;
            }
        }
    }
    let eps = T::default_epsilon();
    let schur = real.try_schur(eps, 0).ok_or(Error::NoConvergence { dim: n })?;
    let mut ev: Vec<T> = schur.complex_eigenvalues().iter().map(|c| c.re).collect();
    if ev.iter().any(|v| !Float::is_finite(*v)) {
        return Err(Error::NoConvergence { dim: n });
    }
    ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(if real_input { ev } else { ev.into_iter().step_by(2).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn z_is_diagonal() {
        let m = pauli_matrix::<f64>(&p("Z")).unwrap();
        assert_eq!(m[(0, 0)], Complex::new(1.0, 0.0));
        assert_eq!(m[(1, 1)], Complex::new(-1.0, 0.0));
        assert_eq!(m[(0, 1)], Complex::new(0.0, 0.0));
    }

    #[test]
    fn y_matches_textbook() {
        let m = pauli_matrix::<f64>(&p("Y")).unwrap();
        assert_eq!(m[(0, 1)], Complex::new(0.0, -1.0));
        assert_eq!(m[(1, 0)], Complex::new(0.0, 1.0));
    }

    #[test]
    fn identity_pauli() {
        let m = pauli_matrix::<f64>(&p("III")).unwrap();
        assert_eq!(m, Matrix::<f64>::identity(8, 8));
    }

    #[test]
    fn minus_y_rotation_maps_x_to_z() {
        let r = C4Rotation::new(p("-Y")).unwrap();
        let rm = rotation_matrix::<f64>(&r).unwrap();
        let det = rm[(0, 0)] * rm[(1, 1)] - rm[(0, 1)] * rm[(1, 0)];
        assert!((det.norm() - 1.0).abs() < 1e-12);
        let out = conjugate(&pauli_matrix::<f64>(&p("X")).unwrap(), &rm);
        let z = pauli_matrix::<f64>(&p("Z")).unwrap();
        assert!(max_abs_diff(&out, &z) < 1e-12);
    }

    #[test]
    fn size_guard() {
        let big = PauliOperator::identity(13);
        assert!(matches!(pauli_matrix::<f64>(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn sequence_unitary_matches_explicit_product() {
        let rs = [C4Rotation::new(p("+XZ")).unwrap(), C4Rotation::new(p("-YI")).unwrap()];
        let u = sequence_unitary::<f64>(2, rs.iter()).unwrap();
        let explicit = rotation_matrix::<f64>(&rs[0]).unwrap() * rotation_matrix::<f64>(&rs[1]).unwrap();
        assert!(max_abs_diff(&u, &explicit) < 1e-12);
    }

    #[test]
    fn single_precision_instantiation() {
        let r = C4Rotation::new(p("+YZ")).unwrap();
        let u = rotation_matrix::<f32>(&r).unwrap();
        let out = conjugate(&pauli_matrix::<f32>(&p("ZZ")).unwrap(), &u);
        let expect = pauli_matrix::<f32>(&p("XI")).unwrap();
        assert!(max_abs_diff(&out, &expect) < 1e-5);
    }

    #[test]
    fn bell_pair_is_maximally_mixed_on_one_qubit() {
        let psi = stabilizer_state::<f64>(2, &[p("XX"), p("ZZ")]).unwrap();
        let rho = reduced_density_matrix(2, &psi, &[0]).unwrap();
        let ev = hermitian_eigenvalues(&rho).unwrap();
        assert!((ev[0] - 0.5).abs() < 1e-12 && (ev[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn complex_hermitian_eigenvalues() {
        // Y has eigenvalues -1 and +1 despite purely imaginary entries
        let ev = hermitian_eigenvalues(&pauli_matrix::<f64>(&p("Y")).unwrap()).unwrap();
        assert_eq!(ev.len(), 2);
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }
}
