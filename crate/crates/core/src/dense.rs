//! Explicit Hamiltonian matrices for small chains.
//!
//! `H = Σ_i I^{⊗(i−1)} ⊗ A ⊗ I^{⊗(n−i−k+1)}` is assembled literally from
//! Kronecker products of the local projector `A`, in exact integer
//! arithmetic. Nothing here is used by the counting code; it exists to check
//! the counting code and the structural properties of `H` independently.

use std::fmt::Write as _;
use std::ops::{AddAssign, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{local_matrix, LatticeSpec};

/// Largest chain [`build_dense`] will materialize (4096 × 4096).
pub const DENSE_MAX_SITES: u32 = 12;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    pub fn from_diagonal(diagonal: &[i32]) -> Self {
        let mut m = Self::zeros(diagonal.len(), diagonal.len());
        for (i, &d) in diagonal.iter().enumerate() {
            m.data[i * diagonal.len() + i] = d;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Contract("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, r: usize, c: usize) -> i32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i32) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[i32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn diagonal(&self) -> Vec<i32> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }
}

impl AddAssign<&Matrix> for Matrix {
    fn add_assign(&mut self, rhs: &Matrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += *b;
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for (i, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.data[r * rhs.cols + c] += a * rhs.get(i, c);
                }
            }
        }
        out
    }
}

/// Kronecker product: block `(r, c)` of the result is `a[r][c] · b`.
pub fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain("Kronecker product of an empty matrix".into()));
    }
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = Matrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let scale = a.get(ar, ac);
            if scale == 0 {
                continue;
            }
            for br in 0..b.rows {
                let dst = (ar * b.rows + br) * cols + ac * b.cols;
                for (slot, &v) in out.data[dst..dst + b.cols].iter_mut().zip(b.row(br)) {
                    *slot = scale * v;
                }
            }
        }
    }
    Ok(out)
}

/// The full `2^n × 2^n` Hamiltonian of a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseHamiltonian {
    pub n: u32,
    pub k: u32,
    pub matrix: Matrix,
}

impl DenseHamiltonian {
    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn diagonal(&self) -> Vec<i32> {
        self.matrix.diagonal()
    }

    /// The diagonal as one line of comma-separated integers.
    pub fn dump_diagonal(&self) -> String {
        let mut out = String::new();
        for (i, d) in self.diagonal().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{d}").expect("writing to a String");
        }
        out
    }
}

/// Lifts the local projector of `spec` to the whole chain.
pub fn build_dense(spec: &LatticeSpec) -> Result<DenseHamiltonian> {
    if spec.sites() > DENSE_MAX_SITES {
        return Err(dense_capacity(spec.sites()));
    }
    if spec.window() > spec.sites() {
        let full = 1usize << spec.sites();
        return Ok(DenseHamiltonian {
            n: spec.sites(),
            k: spec.window(),
            matrix: Matrix::zeros(full, full),
        });
    }
    let local = Matrix::from_diagonal(local_matrix(spec.window())?.diagonal());
    build_dense_from_local(spec.sites(), &local)
}

/// Lifts an arbitrary `2^k × 2^k` local operator over all windows of an
/// `n`-site chain. [`build_dense`] calls this with the all-ones projector;
/// other operators are useful as negative controls.
pub fn build_dense_from_local(n: u32, local: &Matrix) -> Result<DenseHamiltonian> {
    if n > DENSE_MAX_SITES {
        return Err(dense_capacity(n));
    }
    let dim = local.rows();
    if local.rows() != local.cols() || !dim.is_power_of_two() || dim < 4 {
        return Err(Error::Domain(format!(
            "local operator must be 2^k x 2^k with k >= 2, got {}x{}",
            local.rows(),
            local.cols()
        )));
    }
    let k = dim.trailing_zeros();
    let full = 1usize << n;
    let mut matrix = Matrix::zeros(full, full);
    if k <= n {
        for i in 1..=n - k + 1 {
            let left = Matrix::identity(1 << (i - 1));
            let right = Matrix::identity(1 << (n + 1 - i - k));
            let term = kron(&left, &kron(local, &right)?)?;
            matrix += &term;
        }
    }
    Ok(DenseHamiltonian { n, k, matrix })
}

fn dense_capacity(n: u32) -> Error {
    Error::Capacity {
        method: "dense",
        cap: format!("n <= {DENSE_MAX_SITES}"),
        requested: format!("n = {n}"),
        hint: "the dense matrix is a small-chain oracle; count with enumerate or recurrence",
    }
}

/// Structural findings about a dense Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub diagonal: bool,
    pub symmetric: bool,
    pub hermitian_real: bool,
    pub nonnegative: bool,
}

impl StructureReport {
    pub fn all(&self) -> bool {
        self.diagonal && self.symmetric && self.hermitian_real && self.nonnegative
    }
}

/// Diagonality, symmetry, Hermiticity and non-negativity of `h`.
///
/// Entries are integers, so Hermitian coincides with symmetric. Non-negative
/// definiteness is read off the diagonal and is therefore only certified
/// when the matrix is diagonal; otherwise it is reported as `false`.
pub fn check_structure(h: &DenseHamiltonian) -> StructureReport {
    let m = &h.matrix;
    let square = m.rows() == m.cols();
    let diagonal = square
        && (0..m.rows()).all(|r| m.row(r).iter().enumerate().all(|(c, &v)| c == r || v == 0));
    let symmetric =
        square && (0..m.rows()).all(|r| (0..r).all(|c| m.get(r, c) == m.get(c, r)));
    let hermitian_real = symmetric;
    let nonnegative = diagonal && m.diagonal().iter().all(|&d| d >= 0);
    StructureReport {
        diagonal,
        symmetric,
        hermitian_real,
        nonnegative,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelImageReport {
    pub dim_ker: usize,
    pub dim_im: usize,
    pub orthogonal: bool,
    pub complete: bool,
}

/// Kernel and image of a diagonal `h`, and whether `im(H)^⊥ = ker(H)`.
///
/// The kernel basis is the standard vectors `e_s` with `H e_s = 0`; the image
/// basis is the nonzero columns `H e_s`, which are independent because `h` is
/// diagonal.
pub fn kernel_vs_image(h: &DenseHamiltonian) -> KernelImageReport {
    let m = &h.matrix;
    let dim = m.cols();
    let (kernel, image): (Vec<usize>, Vec<usize>) =
        (0..dim).partition(|&c| (0..m.rows()).all(|r| m.get(r, c) == 0));
    // <e_a, H e_s> = H[a][s]
    let orthogonal = kernel
        .iter()
        .all(|&a| image.iter().all(|&s| m.get(a, s) == 0));
    KernelImageReport {
        dim_ker: kernel.len(),
        dim_im: image.len(),
        orthogonal,
        complete: kernel.len() + image.len() == dim,
    }
}
