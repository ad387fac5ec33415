//! Dense complex linear algebra for registers of up to four qubits.
//!
//! Matrices are stored row-major. Qubit 0 is the most significant bit of a
//! computational-basis index, so on the `(C, M, E1, E2)` register the basis
//! index is `8c + 4m + 2e1 + e2`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported matrix dimension (four qubits).
pub const MAX_DIM: usize = 16;

/// Tolerance for structural checks (Hermiticity, unitarity, normalization).
pub const STRUCTURAL_TOL: f64 = 1e-10;

/// Tolerance for derived physical quantities.
pub const PHYSICAL_TOL: f64 = 1e-8;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

/// States are plain matrices; validity is checked with [`is_density`].
pub type DensityMatrix = ComplexMatrix;

fn check_dim(dim: usize) -> Result<()> {
    if dim.is_power_of_two() && (2..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::Size(format!(
            "dimension {dim} is not one of 2, 4, 8, 16"
        )))
    }
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::Size(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::contract("matrix has non-finite entries"));
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![ZERO; dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        Ok(m)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * m.dim + i] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    /// Builds a matrix from real rows; convenient for literal test matrices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::new(rows.len(), data)
    }

    /// Outer product `|v⟩⟨v|`.
    pub fn projector(v: &[Complex64]) -> Result<Self> {
        let dim = v.len();
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = v[i] * v[j].conj();
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nqubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `other`; dimensions must agree.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim;
        let mut err: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                err = err.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        err
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// `max |(U†U − I)_ij|`.
    pub fn unitarity_error(&self) -> f64 {
        let prod = &self.adjoint() * self;
        let id = Self::identity(self.dim).expect("dimension already validated");
        prod.max_abs_diff(&id)
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        &(u * self) * &u.adjoint()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Real parts of the diagonal.
    pub fn diagonal_real(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        ComplexMatrix { dim: n, data: out }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = a.dim * b.dim;
    if dim > MAX_DIM {
        return Err(Error::Size(format!(
            "kron of {}x{} and {}x{} exceeds {MAX_DIM}x{MAX_DIM}",
            a.dim, a.dim, b.dim, b.dim
        )));
    }
    let mut out = ComplexMatrix::zeros(dim)?;
    for ar in 0..a.dim {
        for ac in 0..a.dim {
            let x = a.get(ar, ac);
            for br in 0..b.dim {
                for bc in 0..b.dim {
                    out.set(ar * b.dim + br, ac * b.dim + bc, x * b.get(br, bc));
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of a non-empty list of factors, left to right.
pub fn kron_all(factors: &[&ComplexMatrix]) -> Result<ComplexMatrix> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::contract("kron_all needs at least one factor"))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, m| kron(&acc, m))
}

#[inline]
fn bit(index: usize, qubit: usize, nqubits: usize) -> usize {
    (index >> (nqubits - 1 - qubit)) & 1
}

/// Traces out every qubit not listed in `keep`.
///
/// `keep` must be strictly increasing; the reduced matrix keeps the relative
/// order of the retained qubits.
pub fn partial_trace(rho: &ComplexMatrix, nqubits: usize, keep: &[usize]) -> Result<ComplexMatrix> {
    if rho.dim != 1 << nqubits {
        return Err(Error::Size(format!(
            "matrix of dimension {} is not a {nqubits}-qubit operator",
            rho.dim
        )));
    }
    if keep.is_empty() {
        return Err(Error::Index("keep list is empty".into()));
    }
    if let Some(&q) = keep.iter().find(|&&q| q >= nqubits) {
        return Err(Error::Index(format!(
            "qubit {q} out of range for {nqubits} qubits"
        )));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Index(format!(
            "keep indices {keep:?} are not strictly increasing"
        )));
    }
    let traced: Vec<usize> = (0..nqubits).filter(|q| !keep.contains(q)).collect();
    let kept_dim = 1 << keep.len();
    let mut out = ComplexMatrix::zeros(kept_dim)?;

    // Compose a full index from a kept-subsystem index and a traced-subsystem index.
    let compose = |kept: usize, env: usize| -> usize {
        let mut full = 0;
        for (pos, &q) in keep.iter().enumerate() {
            full |= bit(kept, pos, keep.len()) << (nqubits - 1 - q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            full |= bit(env, pos, traced.len()) << (nqubits - 1 - q);
        }
        full
    };

    for r in 0..kept_dim {
        for c in 0..kept_dim {
            let mut acc = ZERO;
            for env in 0..(1 << traced.len()) {
                acc += rho.get(compose(r, env), compose(c, env));
            }
            out.set(r, c, acc);
        }
    }
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.eigenvectors.dim)
            .map(|i| self.eigenvectors.get(i, k))
            .collect()
    }

    /// `V · diag(λ) · V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut d = ComplexMatrix::from_real_diagonal(&self.eigenvalues)
            .expect("spectrum dimension already validated");
        d = &self.eigenvectors * &d;
        &d * &self.eigenvectors.adjoint()
    }

    /// Applies a real function to the spectrum: `V · diag(f(λ)) · V†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        let d = ComplexMatrix::from_real_diagonal(&mapped).expect("dimension already validated");
        &(&self.eigenvectors * &d) * &self.eigenvectors.adjoint()
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic complex Jacobi eigensolver.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// the real symmetric Jacobi rotation to the resulting 2x2 block. Pivots are
/// visited in row-major order `(0,1), (0,2), ..., (n-2,n-1)`, so results are
/// bit-reproducible.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<Spectrum> {
    let herr = a.hermiticity_error();
    if herr > STRUCTURAL_TOL {
        return Err(Error::contract(format!(
            "matrix is not Hermitian (deviation {herr:.3e})"
        )));
    }
    let n = a.dim;
    // Symmetrize so the iteration starts from an exactly Hermitian matrix.
    let mut m = a.clone();
    for i in 0..n {
        m.set(i, i, Complex64::new(a.get(i, i).re, 0.0));
        for j in (i + 1)..n {
            let avg = (a.get(i, j) + a.get(j, i).conj()) * 0.5;
            m.set(i, j, avg);
            m.set(j, i, avg.conj());
        }
    }
    let mut v = ComplexMatrix::identity(n)?;

    let frob2: f64 = m.data.iter().map(|z| z.norm_sqr()).sum();
    let threshold = (f64::EPSILON * f64::EPSILON) * frob2.max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j).norm_sqr())
            .sum();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]).then(x.cmp(&y)));

    let eigenvalues = order.iter().map(|&k| diag[k]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n)?;
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors.set(row, col, v.get(row, k));
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = m.dim;
    let apq = m.get(p, q);
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = m.get(p, p).re;
    let aqq = m.get(q, q).re;
    let phase = apq / mag; // e^{iφ}

    let cot2 = (aqq - app) / (2.0 * mag);
    let t = if cot2.is_infinite() {
        0.0
    } else {
        let t = 1.0 / (cot2.abs() + (cot2 * cot2 + 1.0).sqrt());
        if cot2 < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]] restricted to (p, q).
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    // M ← M J, V ← V J
    for k in 0..n {
        let (mkp, mkq) = (m.get(k, p), m.get(k, q));
        m.set(k, p, mkp * jpp + mkq * jqp);
        m.set(k, q, mkp * jpq + mkq * jqq);
        let (vkp, vkq) = (v.get(k, p), v.get(k, q));
        v.set(k, p, vkp * jpp + vkq * jqp);
        v.set(k, q, vkp * jpq + vkq * jqq);
    }
    // M ← J† M
    for k in 0..n {
        let (mpk, mqk) = (m.get(p, k), m.get(q, k));
        m.set(p, k, jpp.conj() * mpk + jqp.conj() * mqk);
        m.set(q, k, jpq.conj() * mpk + jqq.conj() * mqk);
    }
    m.set(p, q, ZERO);
    m.set(q, p, ZERO);
    m.set(p, p, Complex64::new(m.get(p, p).re, 0.0));
    m.set(q, q, Complex64::new(m.get(q, q).re, 0.0));
}

/// `½ Σ |λ_i(ρ − σ)|`.
pub fn trace_distance(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    if rho.dim != sigma.dim {
        return Err(Error::Size(format!(
            "trace distance between {}x{} and {}x{} matrices",
            rho.dim, rho.dim, sigma.dim, sigma.dim
        )));
    }
    let spec = hermitian_eig(&(rho - sigma))?;
    Ok(0.5 * spec.eigenvalues.iter().map(|x| x.abs()).sum::<f64>())
}

/// `⟨ψ|ρ|ψ⟩` for a normalized `psi`.
pub fn state_fidelity(psi: &[Complex64], rho: &ComplexMatrix) -> Result<f64> {
    if psi.len() != rho.dim {
        return Err(Error::Size(format!(
            "vector of length {} against {}x{} matrix",
            psi.len(),
            rho.dim,
            rho.dim
        )));
    }
    let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (norm2.sqrt() - 1.0).abs() > STRUCTURAL_TOL {
        return Err(Error::contract(format!(
            "state vector has norm {} instead of 1",
            norm2.sqrt()
        )));
    }
    let rho_psi = rho.apply(psi);
    let f: f64 = psi
        .iter()
        .zip(&rho_psi)
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        .re;
    const CLIP: f64 = 1e-12;
    if f < 0.0 && f > -CLIP {
        Ok(0.0)
    } else if f > 1.0 && f < 1.0 + CLIP {
        Ok(1.0)
    } else {
        Ok(f)
    }
}

/// Diagnostics from [`is_density`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityCheck {
    pub hermiticity_error: f64,
    pub trace: Complex64,
    pub min_eigenvalue: f64,
    pub tol: f64,
}

impl DensityCheck {
    pub fn hermitian(&self) -> bool {
        self.hermiticity_error <= self.tol
    }

    pub fn unit_trace(&self) -> bool {
        (self.trace - ONE).norm() <= self.tol
    }

    pub fn positive(&self) -> bool {
        self.min_eigenvalue >= -self.tol
    }

    pub fn is_valid(&self) -> bool {
        self.hermitian() && self.unit_trace() && self.positive()
    }
}

/// Checks Hermiticity, unit trace and positivity, all at `tol`.
pub fn is_density(rho: &ComplexMatrix, tol: f64) -> DensityCheck {
    let hermiticity_error = rho.hermiticity_error();
    // The eigensolver only accepts near-Hermitian input; use the Hermitian part.
    let herm = (rho + &rho.adjoint()).scale_real(0.5);
    let min_eigenvalue = hermitian_eig(&herm)
        .map(|s| s.eigenvalues[0])
        .unwrap_or(f64::NEG_INFINITY);
    DensityCheck {
        hermiticity_error,
        trace: rho.trace(),
        min_eigenvalue,
        tol,
    }
}
