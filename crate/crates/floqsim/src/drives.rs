//! Time-periodic effective-field protocols and the open-system model built
//! from them: drive + cavities + dissipation rates.
//!
//! All rates are power decay rates and all frequencies angular. The drive
//! field lives in the `xz`-plane of the qubit Bloch sphere; its phase is
//! reduced mod `2 pi` before evaluation so `B(t + T_mod) = B(t)` holds to
//! floating-point accuracy for arbitrary `t`.

use ndarray::prelude::*;

use crate::algebra::{boson_ops, embed, qubit_ops, Factor, Operator, SpaceLayout};
use crate::error::{Error, Result};
use crate::C64;

pub const TAU: f64 = std::f64::consts::TAU;

/// Periodic effective magnetic field protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DriveProtocol {
    /// `B_z = B0 cos(w t)`, `B_x = B0 sin(w t)`; constant magnitude `B0`.
    Circular { b0: f64, omega_mod: f64 },
    /// `B_x = B0 max(0, sin(w t))`, `B_z = -B0 cos(w t)`; traces a semicircle
    /// of radius `B0` in the `B_x >= 0` half plane.
    Semicircle { b0: f64, omega_mod: f64 },
    /// `B_x = bx_amp sin(w t)`, `B_z = bz_amp cos(w t)`.
    Elliptical { bx_amp: f64, bz_amp: f64, omega_mod: f64 },
}

impl DriveProtocol {
    pub fn omega_mod(&self) -> f64 {
        match *self {
            DriveProtocol::Circular { omega_mod, .. }
            | DriveProtocol::Semicircle { omega_mod, .. }
            | DriveProtocol::Elliptical { omega_mod, .. } => omega_mod,
        }
    }

    /// Modulation period `T_mod = 2 pi / omega_mod`.
    pub fn period(&self) -> f64 {
        TAU / self.omega_mod()
    }

    /// Field components `(B_x, B_y, B_z)` at time `t`.
    pub fn field(&self, t: f64) -> [f64; 3] {
        let theta = (self.omega_mod() * t).rem_euclid(TAU);
        match *self {
            DriveProtocol::Circular { b0, .. } => [b0 * theta.sin(), 0.0, b0 * theta.cos()],
            DriveProtocol::Semicircle { b0, .. } => {
                [b0 * theta.sin().max(0.0), 0.0, -b0 * theta.cos()]
            }
            DriveProtocol::Elliptical { bx_amp, bz_amp, .. } => {
                [bx_amp * theta.sin(), 0.0, bz_amp * theta.cos()]
            }
        }
    }

    /// Largest field magnitude over a cycle.
    pub fn max_amplitude(&self) -> f64 {
        match *self {
            DriveProtocol::Circular { b0, .. } | DriveProtocol::Semicircle { b0, .. } => b0.abs(),
            DriveProtocol::Elliptical { bx_amp, bz_amp, .. } => bx_amp.abs().max(bz_amp.abs()),
        }
    }

    /// Range of the instantaneous splitting `|B(t)|` over a cycle.
    ///
    /// A cavity at detuning `Delta` is crossed during the cycle iff
    /// `min <= Delta <= max`.
    pub fn amplitude_range(&self) -> (f64, f64) {
        match *self {
            DriveProtocol::Circular { b0, .. } => (b0.abs(), b0.abs()),
            // |B| = B0 on the arc, B0 |cos| on the flat segment: dips to 0.
            DriveProtocol::Semicircle { b0, .. } => (0.0, b0.abs()),
            DriveProtocol::Elliptical { bx_amp, bz_amp, .. } => {
                let (x, z) = (bx_amp.abs(), bz_amp.abs());
                (x.min(z), x.max(z))
            }
        }
    }
}

/// One cavity mode: effective frequency, exchange coupling, photon loss and
/// Fock truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityMode {
    /// Effective cavity angular frequency `Delta`.
    pub detuning: f64,
    /// Jaynes-Cummings coupling `g`.
    pub coupling: f64,
    /// Photon power decay rate `kappa` (0 for a lossless cavity).
    pub kappa: f64,
    /// Fock truncation `n_max` (kept states `0..=n_max`).
    pub n_max: usize,
}

/// Full open-system description: drive, cavities, qubit dissipation.
#[derive(Debug, Clone)]
pub struct SystemModel {
    drive: DriveProtocol,
    cavities: Vec<CavityMode>,
    /// Qubit relaxation rate `Gamma` (jump operator `sqrt(Gamma) sigma_minus`).
    gamma: f64,
    /// Pure dephasing rate `gamma_phi`; the jump operator is
    /// `sqrt(gamma_phi / 2) sigma_z` so the qubit coherence decays at
    /// `gamma_phi` exactly.
    gamma_phi: f64,
    layout: SpaceLayout,
}

impl SystemModel {
    pub fn new(
        drive: DriveProtocol,
        cavities: Vec<CavityMode>,
        gamma: f64,
        gamma_phi: f64,
    ) -> Result<Self> {
        if drive.omega_mod() <= 0.0 {
            return Err(Error::InvalidModel("omega_mod must be positive".into()));
        }
        if gamma < 0.0 || gamma_phi < 0.0 {
            return Err(Error::InvalidModel("qubit rates must be >= 0".into()));
        }
        for (i, c) in cavities.iter().enumerate() {
            if c.kappa < 0.0 {
                return Err(Error::InvalidModel(format!("cavity {i}: kappa must be >= 0")));
            }
            if c.n_max < 1 {
                return Err(Error::InvalidModel(format!("cavity {i}: n_max must be >= 1")));
            }
        }
        let mut factors = vec![Factor::Qubit];
        factors.extend(cavities.iter().map(|c| Factor::Boson { n_max: c.n_max }));
        let layout = SpaceLayout::new(factors);
        Ok(SystemModel { drive, cavities, gamma, gamma_phi, layout })
    }

    /// Closed qubit-only model for the same drive (quasienergy analysis).
    pub fn qubit_only(drive: DriveProtocol) -> Self {
        SystemModel::new(drive, vec![], 0.0, 0.0).unwrap()
    }

    pub fn drive(&self) -> &DriveProtocol {
        &self.drive
    }

    pub fn cavities(&self) -> &[CavityMode] {
        &self.cavities
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn gamma_phi(&self) -> f64 {
        self.gamma_phi
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn period(&self) -> f64 {
        self.drive.period()
    }

    pub fn has_dissipators(&self) -> bool {
        self.gamma > 0.0 || self.gamma_phi > 0.0 || self.cavities.iter().any(|c| c.kappa > 0.0)
    }

    /// Warnings for violations of the assumed hierarchy of scales
    /// `Gamma < kappa <~ g << Delta` (per cavity). These are advisory: the
    /// interesting regimes sit right at the edges.
    pub fn hierarchy_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        for (i, c) in self.cavities.iter().enumerate() {
            if c.kappa > 0.0 && self.gamma >= c.kappa {
                warnings.push(format!(
                    "cavity {i}: qubit relaxation Gamma = {:.3e} >= kappa = {:.3e}",
                    self.gamma, c.kappa
                ));
            }
            if c.kappa > c.coupling.abs() {
                warnings.push(format!(
                    "cavity {i}: kappa = {:.3e} > g = {:.3e} (bad-cavity regime)",
                    c.kappa, c.coupling
                ));
            }
            // "g << Delta" taken as g <= Delta / 5.
            if c.coupling.abs() > c.detuning.abs() / 5.0 {
                warnings.push(format!(
                    "cavity {i}: g = {:.3e} is not small against Delta = {:.3e}",
                    c.coupling, c.detuning
                ));
            }
        }
        warnings
    }

    /// Hamiltonian at time `t`:
    /// `H(t) = (1/2) sigma . B(t) + sum_c [Delta_c n_c + g_c (a_c^dag sm + a_c sp)]`.
    pub fn hamiltonian(&self, t: f64) -> Operator {
        let terms = self.hamiltonian_terms();
        let [bx, _by, bz] = self.drive.field(t);
        let m = &terms.static_part
            + &terms.sx_half.mapv(|z| z * C64::new(bx, 0.0))
            + &terms.sz_half.mapv(|z| z * C64::new(bz, 0.0));
        Operator::new(self.layout.clone(), m).unwrap()
    }

    /// Time-independent decomposition
    /// `H(t) = static + B_x(t) * sx_half + B_z(t) * sz_half`
    /// used by the integrators to avoid reassembling embedded operators.
    pub fn hamiltonian_terms(&self) -> HamiltonianTerms {
        let q = qubit_ops();
        let sx_half = embed(&q.sx, 0, &self.layout).unwrap().scaled(C64::new(0.5, 0.0));
        let sz_half = embed(&q.sz, 0, &self.layout).unwrap().scaled(C64::new(0.5, 0.0));
        let d = self.layout.total_dim();
        let mut stat = Array2::<C64>::zeros((d, d));
        for (i, c) in self.cavities.iter().enumerate() {
            let b = boson_ops(c.n_max);
            let factor = i + 1;
            let n_full = embed(&b.n, factor, &self.layout).unwrap();
            let a_full = embed(&b.a, factor, &self.layout).unwrap();
            let sp_full = embed(&q.sp, 0, &self.layout).unwrap();
            // g (adag sm + a sp) = g (a sp + h.c.)
            let asp = a_full.mul(&sp_full).unwrap();
            let jc = &asp.matrix().mapv(|z| z * C64::new(c.coupling, 0.0))
                + &asp.dagger().matrix().mapv(|z| z * C64::new(c.coupling, 0.0));
            stat = stat + n_full.matrix().mapv(|z| z * C64::new(c.detuning, 0.0)) + jc;
        }
        HamiltonianTerms {
            static_part: stat,
            sx_half: sx_half.into_matrix(),
            sz_half: sz_half.into_matrix(),
        }
    }

    /// Embedded jump operators pre-scaled by the square root of their rate,
    /// in a fixed order: per-cavity photon loss `sqrt(kappa) a_c`, then qubit
    /// relaxation `sqrt(Gamma) sigma_minus`, then pure dephasing
    /// `sqrt(gamma_phi / 2) sigma_z`. Zero-rate channels are omitted.
    pub fn jump_operators(&self) -> Vec<Operator> {
        let q = qubit_ops();
        let mut ops = Vec::new();
        for (i, c) in self.cavities.iter().enumerate() {
            if c.kappa > 0.0 {
                let b = boson_ops(c.n_max);
                let a_full = embed(&b.a, i + 1, &self.layout).unwrap();
                ops.push(a_full.scaled(C64::new(c.kappa.sqrt(), 0.0)));
            }
        }
        if self.gamma > 0.0 {
            let sm = embed(&q.sm, 0, &self.layout).unwrap();
            ops.push(sm.scaled(C64::new(self.gamma.sqrt(), 0.0)));
        }
        if self.gamma_phi > 0.0 {
            let sz = embed(&q.sz, 0, &self.layout).unwrap();
            ops.push(sz.scaled(C64::new((self.gamma_phi / 2.0).sqrt(), 0.0)));
        }
        ops
    }

    /// Crude upper bound on the spectral scale of the generator, used to pick
    /// integrator step counts.
    pub fn stiffness_estimate(&self) -> f64 {
        let mut s = self.drive.max_amplitude() / 2.0;
        for c in &self.cavities {
            let n = c.n_max as f64;
            s += n * c.detuning.abs()
                + 2.0 * c.coupling.abs() * (n + 1.0).sqrt()
                + c.kappa * (n + 1.0);
        }
        s + self.gamma + self.gamma_phi
    }
}

/// `H(t) = static_part + B_x(t) sx_half + B_z(t) sz_half`.
pub struct HamiltonianTerms {
    pub static_part: Array2<C64>,
    pub sx_half: Array2<C64>,
    pub sz_half: Array2<C64>,
}

impl HamiltonianTerms {
    /// Assemble `H(t)` into `out` given the field at `t`.
    pub fn assemble_into(&self, field: [f64; 3], out: &mut Array2<C64>) {
        let [bx, _, bz] = field;
        out.assign(&self.static_part);
        out.scaled_add(C64::new(bx, 0.0), &self.sx_half);
        out.scaled_add(C64::new(bz, 0.0), &self.sz_half);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray_linalg::Eigh;
    use ndarray_linalg::UPLO;

    fn max_abs_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
        a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn circular_qubit_only_at_t0_is_half_b0_sigma_z() {
        let model = SystemModel::qubit_only(DriveProtocol::Circular { b0: 1.0, omega_mod: 0.3 });
        let h = model.hamiltonian(0.0);
        let q = qubit_ops();
        assert!(max_abs_diff(h.matrix(), q.sz.scaled(C64::new(0.5, 0.0)).matrix()) < 1e-14);
    }

    #[test]
    fn semicircle_quarter_period_is_half_b0_sigma_x() {
        let drive = DriveProtocol::Semicircle { b0: 2.0, omega_mod: 1.0 };
        let model = SystemModel::qubit_only(drive);
        let t = 0.5 * std::f64::consts::PI; // omega t = pi/2
        let h = model.hamiltonian(t);
        let q = qubit_ops();
        assert!(max_abs_diff(h.matrix(), q.sx.scaled(C64::new(1.0, 0.0)).matrix()) < 1e-12);
    }

    #[test]
    fn decoupled_cavity_commutes_with_photon_number() {
        let drive = DriveProtocol::Circular { b0: 1.0, omega_mod: 0.7 };
        let model = SystemModel::new(
            drive,
            vec![CavityMode { detuning: 1.3, coupling: 0.0, kappa: 0.0, n_max: 3 }],
            0.0,
            0.0,
        )
        .unwrap();
        let b = boson_ops(3);
        let n_full = embed(&b.n, 1, model.layout()).unwrap();
        for &t in &[0.0, 0.37, 1.9] {
            let h = model.hamiltonian(t);
            let comm = h.commutator(&n_full).unwrap();
            assert!(comm.frobenius_norm() < 1e-12);
        }
    }

    #[test]
    fn hamiltonian_is_hermitian_and_periodic() {
        let drive = DriveProtocol::Elliptical { bx_amp: 1.4, bz_amp: 0.6, omega_mod: 0.9 };
        let model = SystemModel::new(
            drive,
            vec![CavityMode { detuning: 1.1, coupling: 0.05, kappa: 0.02, n_max: 2 }],
            0.001,
            0.0,
        )
        .unwrap();
        let t_mod = model.period();
        for &t in &[0.0, 0.21, 1.7, 5.3] {
            let h = model.hamiltonian(t);
            assert!(h.hermiticity_defect() < 1e-12);
            let h_shift = model.hamiltonian(t + t_mod);
            assert!(max_abs_diff(h.matrix(), h_shift.matrix()) < 1e-12);
        }
    }

    #[test]
    fn circular_instantaneous_splitting_is_constant() {
        let model = SystemModel::qubit_only(DriveProtocol::Circular { b0: 1.7, omega_mod: 0.4 });
        for &t in &[0.0, 0.5, 2.2, 4.8] {
            let h = model.hamiltonian(t);
            let m = (h.matrix() + &h.matrix().t().mapv(|z| z.conj())).mapv(|z| z * C64::new(0.5, 0.0));
            let (vals, _) = m.eigh(UPLO::Lower).unwrap();
            assert!((vals[0] + 0.85).abs() < 1e-12);
            assert!((vals[1] - 0.85).abs() < 1e-12);
        }
    }

    #[test]
    fn jump_operator_norms_and_order() {
        // Single-cavity model with kappa and Gamma = kappa/20.
        let b0 = 1.0;
        let kappa = 0.05 * b0;
        let model = SystemModel::new(
            DriveProtocol::Circular { b0, omega_mod: 1.0 },
            vec![CavityMode { detuning: 1.2, coupling: 0.05, kappa, n_max: 3 }],
            kappa / 20.0,
            0.0,
        )
        .unwrap();
        let ops = model.jump_operators();
        assert_eq!(ops.len(), 2);
        let b = boson_ops(3);
        let a_norm = embed(&b.a, 1, model.layout()).unwrap().frobenius_norm();
        let q = qubit_ops();
        let sm_norm = embed(&q.sm, 0, model.layout()).unwrap().frobenius_norm();
        assert!((ops[0].frobenius_norm() - kappa.sqrt() * a_norm).abs() < 1e-12);
        assert!((ops[1].frobenius_norm() - (kappa / 20.0).sqrt() * sm_norm).abs() < 1e-12);
    }

    #[test]
    fn closed_system_has_no_jump_operators() {
        let model = SystemModel::qubit_only(DriveProtocol::Circular { b0: 1.0, omega_mod: 1.0 });
        assert!(model.jump_operators().is_empty());
        assert!(!model.has_dissipators());
    }

    #[test]
    fn boost_model_single_stabilizer_loss() {
        // Two cavities, only the stabilizer is lossy.
        let model = SystemModel::new(
            DriveProtocol::Semicircle { b0: 20.0, omega_mod: 1.5 },
            vec![
                CavityMode { detuning: 1.5 * 1.618, coupling: 1.0, kappa: 0.0, n_max: 5 },
                CavityMode { detuning: 20.0, coupling: 1.0, kappa: 1.0, n_max: 2 },
            ],
            0.0,
            0.0,
        )
        .unwrap();
        let ops = model.jump_operators();
        assert_eq!(ops.len(), 1);
        let b = boson_ops(2);
        let a_s = embed(&b.a, 2, model.layout()).unwrap();
        assert!(max_abs_diff(ops[0].matrix(), a_s.matrix()) < 1e-12);
    }

    #[test]
    fn negative_rates_rejected() {
        let drive = DriveProtocol::Circular { b0: 1.0, omega_mod: 1.0 };
        assert!(SystemModel::new(drive, vec![], -0.1, 0.0).is_err());
        assert!(SystemModel::new(
            drive,
            vec![CavityMode { detuning: 1.0, coupling: 0.1, kappa: -1.0, n_max: 2 }],
            0.0,
            0.0
        )
        .is_err());
    }

    #[test]
    fn hierarchy_warnings_fire() {
        let drive = DriveProtocol::Circular { b0: 1.0, omega_mod: 1.0 };
        // Gamma >= kappa, kappa > g, g not << Delta: all three warnings.
        let model = SystemModel::new(
            drive,
            vec![CavityMode { detuning: 0.5, coupling: 0.2, kappa: 0.3, n_max: 2 }],
            0.4,
            0.0,
        )
        .unwrap();
        let w = model.hierarchy_warnings();
        assert_eq!(w.len(), 3);
        // Clean hierarchy: no warnings.
        let model = SystemModel::new(
            drive,
            vec![CavityMode { detuning: 1.0, coupling: 0.05, kappa: 0.05, n_max: 2 }],
            0.0025,
            0.0,
        )
        .unwrap();
        assert!(model.hierarchy_warnings().is_empty());
    }

    #[test]
    fn elliptical_amplitude_range_brackets_crossings() {
        let drive = DriveProtocol::Elliptical { bx_amp: 100.0, bz_amp: 60.0, omega_mod: 1.0 };
        let (lo, hi) = drive.amplitude_range();
        assert_eq!((lo, hi), (60.0, 100.0));
        // |B(t)| sweeps the whole range over a quarter period.
        let t_mod = drive.period();
        let mut minimum = f64::INFINITY;
        let mut maximum: f64 = 0.0;
        for k in 0..1000 {
            let [bx, _, bz] = drive.field(k as f64 * t_mod / 1000.0);
            let b = (bx * bx + bz * bz).sqrt();
            minimum = minimum.min(b);
            maximum = maximum.max(b);
        }
        assert!((minimum - lo).abs() < 0.01 * lo);
        assert!((maximum - hi).abs() < 0.01 * hi);
    }
}
