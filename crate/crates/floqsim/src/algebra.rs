//! Tensor-product operator algebra over a qubit and truncated bosonic modes.
//!
//! Basis conventions, fixed so data files are bit-stable:
//!
//! * Factor-major ordering with the **last factor fastest**: for a layout
//!   `[A, B]` the basis index of `|a, b>` is `a * dim(B) + b`.
//! * Qubit basis is `(|g>, |e>) = (index 0, index 1)` with
//!   `sigma_z = diag(-1, +1)`, i.e. `sigma_z |e> = +|e>` and
//!   `sigma_minus |e> = |g>`. The Pauli algebra `sigma_x sigma_y = i sigma_z`
//!   holds in this ordering with `sigma_y = [[0, i], [-i, 0]]`.
//! * Boson annihilation satisfies `<n-1| a |n> = sqrt(n)` for
//!   `1 <= n <= n_max`. The truncated pair obeys `[a, a^dag] = 1` everywhere
//!   except the `(n_max, n_max)` diagonal entry, where truncation forces
//!   `-n_max`.
//!
//! Operators are plain dense complex matrices; everything at the scales this
//! crate targets (total dimensions of a few hundred) stays dense.

use ndarray::prelude::*;
use ndarray::linalg::kron;

use crate::error::{Error, Result};
use crate::C64;

/// One tensor factor of the Hilbert space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Qubit,
    /// Truncated bosonic mode keeping Fock states `0..=n_max`.
    Boson { n_max: usize },
}

impl Factor {
    pub fn dim(&self) -> usize {
        match self {
            Factor::Qubit => 2,
            Factor::Boson { n_max } => n_max + 1,
        }
    }
}

/// Ordered list of tensor factors; the carrier of all dimension bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceLayout {
    factors: Vec<Factor>,
}

impl SpaceLayout {
    pub fn new(factors: Vec<Factor>) -> Self {
        assert!(!factors.is_empty(), "layout needs at least one factor");
        SpaceLayout { factors }
    }

    /// Single-qubit layout.
    pub fn qubit() -> Self {
        SpaceLayout::new(vec![Factor::Qubit])
    }

    /// Qubit plus one truncated cavity.
    pub fn qubit_cavity(n_max: usize) -> Self {
        SpaceLayout::new(vec![Factor::Qubit, Factor::Boson { n_max }])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn factor_dim(&self, index: usize) -> usize {
        self.factors[index].dim()
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim()).product()
    }

    fn dim_before(&self, index: usize) -> usize {
        self.factors[..index].iter().map(|f| f.dim()).product()
    }

    fn dim_after(&self, index: usize) -> usize {
        self.factors[index + 1..].iter().map(|f| f.dim()).product()
    }

    /// Basis index of a product state given per-factor occupation indices.
    pub fn basis_index(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.factors.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} occupation indices for {} factors",
                occupations.len(),
                self.factors.len()
            )));
        }
        let mut idx = 0;
        for (occ, f) in occupations.iter().zip(&self.factors) {
            if *occ >= f.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "occupation {} out of range for factor of dim {}",
                    occ,
                    f.dim()
                )));
            }
            idx = idx * f.dim() + occ;
        }
        Ok(idx)
    }

    /// Per-factor occupation indices for a basis index (inverse of
    /// [`basis_index`](Self::basis_index)).
    pub fn occupations(&self, mut index: usize) -> Vec<usize> {
        let mut occ = vec![0; self.factors.len()];
        for (k, f) in self.factors.iter().enumerate().rev() {
            occ[k] = index % f.dim();
            index /= f.dim();
        }
        occ
    }

    /// Unit basis vector `|occupations>`.
    pub fn basis_state(&self, occupations: &[usize]) -> Result<Array1<C64>> {
        let idx = self.basis_index(occupations)?;
        let mut v = Array1::zeros(self.total_dim());
        v[idx] = C64::new(1.0, 0.0);
        Ok(v)
    }
}

/// Dense complex matrix tagged with its tensor-factor layout.
///
/// Hamiltonian entries are angular frequencies (`hbar = 1`); everything else
/// is dimensionless unless documented at the call site.
#[derive(Debug, Clone)]
pub struct Operator {
    layout: SpaceLayout,
    matrix: Array2<C64>,
}

impl Operator {
    pub fn new(layout: SpaceLayout, matrix: Array2<C64>) -> Result<Self> {
        let d = layout.total_dim();
        if matrix.shape() != [d, d] {
            return Err(Error::DimensionMismatch(format!(
                "matrix {:?} does not match layout dim {}",
                matrix.shape(),
                d
            )));
        }
        Ok(Operator { layout, matrix })
    }

    pub fn identity(layout: SpaceLayout) -> Self {
        let d = layout.total_dim();
        Operator { layout, matrix: Array2::eye(d) }
    }

    pub fn zeros(layout: SpaceLayout) -> Self {
        let d = layout.total_dim();
        Operator { layout, matrix: Array2::zeros((d, d)) }
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Array2<C64> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn dagger(&self) -> Operator {
        Operator {
            layout: self.layout.clone(),
            matrix: self.matrix.t().mapv(|z| z.conj()),
        }
    }

    pub fn scaled(&self, c: C64) -> Operator {
        Operator { layout: self.layout.clone(), matrix: self.matrix.mapv(|z| z * c) }
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        self.check_layout(other)?;
        Ok(Operator { layout: self.layout.clone(), matrix: &self.matrix + &other.matrix })
    }

    pub fn mul(&self, other: &Operator) -> Result<Operator> {
        self.check_layout(other)?;
        Ok(Operator { layout: self.layout.clone(), matrix: self.matrix.dot(&other.matrix) })
    }

    pub fn commutator(&self, other: &Operator) -> Result<Operator> {
        self.check_layout(other)?;
        let m = self.matrix.dot(&other.matrix) - other.matrix.dot(&self.matrix);
        Ok(Operator { layout: self.layout.clone(), matrix: m })
    }

    fn check_layout(&self, other: &Operator) -> Result<()> {
        if self.layout != other.layout {
            return Err(Error::LayoutMismatch(format!(
                "{:?} vs {:?}",
                self.layout, other.layout
            )));
        }
        Ok(())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> C64 {
        self.matrix.diag().sum()
    }

    /// `|| A - A^dag ||_F / max(1, ||A||_F)`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut num = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                num += (self.matrix[[i, j]] - self.matrix[[j, i]].conj()).norm_sqr();
            }
        }
        num.sqrt() / self.frobenius_norm().max(1.0)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() < tol
    }

    /// Expectation value `<psi| A |psi>`.
    pub fn expectation(&self, psi: &Array1<C64>) -> C64 {
        let apsi = self.matrix.dot(psi);
        psi.iter().zip(apsi.iter()).map(|(a, b)| a.conj() * b).sum()
    }
}

/// The qubit operator set on a single-qubit layout.
pub struct QubitOps {
    pub sx: Operator,
    pub sy: Operator,
    pub sz: Operator,
    pub sp: Operator,
    pub sm: Operator,
}

/// Pauli and ladder operators in the `(|g>, |e>)` ordering.
pub fn qubit_ops() -> QubitOps {
    let layout = SpaceLayout::qubit();
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let sx = Array2::from_shape_vec((2, 2), vec![z, one, one, z]).unwrap();
    let sy = Array2::from_shape_vec((2, 2), vec![z, i, -i, z]).unwrap();
    let sz = Array2::from_shape_vec((2, 2), vec![-one, z, z, one]).unwrap();
    // sigma_plus = |e><g|, sigma_minus = |g><e|
    let sp = Array2::from_shape_vec((2, 2), vec![z, z, one, z]).unwrap();
    let sm = Array2::from_shape_vec((2, 2), vec![z, one, z, z]).unwrap();
    QubitOps {
        sx: Operator::new(layout.clone(), sx).unwrap(),
        sy: Operator::new(layout.clone(), sy).unwrap(),
        sz: Operator::new(layout.clone(), sz).unwrap(),
        sp: Operator::new(layout.clone(), sp).unwrap(),
        sm: Operator::new(layout, sm).unwrap(),
    }
}

/// Ladder and number operators of a truncated bosonic mode.
pub struct BosonOps {
    pub a: Operator,
    pub adag: Operator,
    pub n: Operator,
}

pub fn boson_ops(n_max: usize) -> BosonOps {
    assert!(n_max >= 1, "boson truncation must keep at least |0>, |1>");
    let layout = SpaceLayout::new(vec![Factor::Boson { n_max }]);
    let d = n_max + 1;
    let mut a = Array2::<C64>::zeros((d, d));
    for n in 1..d {
        a[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    let adag = a.t().mapv(|z| z.conj());
    let n_op = Array2::from_diag(&Array1::from_iter(
        (0..d).map(|n| C64::new(n as f64, 0.0)),
    ));
    BosonOps {
        a: Operator::new(layout.clone(), a).unwrap(),
        adag: Operator::new(layout.clone(), adag).unwrap(),
        n: Operator::new(layout, n_op).unwrap(),
    }
}

/// Embed a single-factor operator into a product layout:
/// `1 (x) ... (x) op (x) ... (x) 1` with `op` at `factor_index`.
///
/// Embeddings of distinct factors commute.
pub fn embed(op: &Operator, factor_index: usize, layout: &SpaceLayout) -> Result<Operator> {
    if factor_index >= layout.num_factors() {
        return Err(Error::FactorIndex { index: factor_index, count: layout.num_factors() });
    }
    let fdim = layout.factor_dim(factor_index);
    if op.dim() != fdim {
        return Err(Error::DimensionMismatch(format!(
            "operator dim {} does not match factor dim {}",
            op.dim(),
            fdim
        )));
    }
    let pre = Array2::<C64>::eye(layout.dim_before(factor_index));
    let post = Array2::<C64>::eye(layout.dim_after(factor_index));
    let m = kron(&pre, &kron(op.matrix(), &post));
    Operator::new(layout.clone(), m)
}
