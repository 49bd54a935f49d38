//! Gate matrices and small complex-matrix helpers.
//!
//! Two-qubit matrices are row-major 4x4 in the basis |00>, |01>, |10>, |11>
//! where the first listed target qubit provides the most significant bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C = Complex64;
pub type Mat2 = [C; 4];
pub type Mat4 = [C; 16];

pub const ZERO: C = C::new(0.0, 0.0);
pub const ONE: C = C::new(1.0, 0.0);

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Single-qubit gates drawn in the random-circuit single-qubit layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingleQubitGate {
    SqrtX,
    SqrtY,
    SqrtW,
}

pub const SINGLE_QUBIT_GATES: [SingleQubitGate; 3] = [
    SingleQubitGate::SqrtX,
    SingleQubitGate::SqrtY,
    SingleQubitGate::SqrtW,
];

impl SingleQubitGate {
    /// pi/2 rotation matrix about X, Y or (X+Y)/sqrt(2).
    pub fn matrix(&self) -> Mat2 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            SingleQubitGate::SqrtX => [c(s, 0.0), c(0.0, -s), c(0.0, -s), c(s, 0.0)],
            SingleQubitGate::SqrtY => [c(s, 0.0), c(-s, 0.0), c(s, 0.0), c(s, 0.0)],
            SingleQubitGate::SqrtW => [
                c(s, 0.0),
                c(-0.5, -0.5),
                c(0.5, -0.5),
                c(s, 0.0),
            ],
        }
    }
}

/// Parameters of the iSWAP-like two-qubit gate.
///
/// The induced unitary is
///
/// ```text
/// [1  0                          0                          0              ]
/// [0  e^{i(D+ + D-)} cos(theta)  -i e^{i(D+ - Do)} sin(theta)  0           ]
/// [0  -i e^{i(D+ + Do)} sin(theta)  e^{i(D+ - D-)} cos(theta)  0           ]
/// [0  0                          0                          e^{i(2D+ - phi)}]
/// ```
///
/// with `D+ = delta_plus`, `D- = delta_minus`, `Do = delta_minus_off`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ISwapLikeParams {
    pub theta: f64,
    pub phi: f64,
    pub delta_plus: f64,
    pub delta_minus: f64,
    pub delta_minus_off: f64,
}

impl ISwapLikeParams {
    pub fn new(theta: f64, phi: f64) -> ISwapLikeParams {
        ISwapLikeParams {
            theta,
            phi,
            delta_plus: 0.0,
            delta_minus: 0.0,
            delta_minus_off: 0.0,
        }
    }

    pub fn matrix(&self) -> Mat4 {
        let (ct, st) = (self.theta.cos(), self.theta.sin());
        let dp = self.delta_plus;
        let dm = self.delta_minus;
        let dq = self.delta_minus_off;
        let e = |x: f64| C::from_polar(1.0, x);
        let mut m = [ZERO; 16];
        m[0] = ONE;
        m[5] = e(dp + dm) * ct;
        m[6] = c(0.0, -1.0) * e(dp - dq) * st;
        m[9] = c(0.0, -1.0) * e(dp + dq) * st;
        m[10] = e(dp - dm) * ct;
        m[15] = e(2.0 * dp - self.phi);
        m
    }
}

impl Default for ISwapLikeParams {
    /// theta = pi/2, phi = pi/6, all single-qubit phases zero.
    fn default() -> ISwapLikeParams {
        ISwapLikeParams::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_6)
    }
}

/// The two kinds of two-qubit gate handled by the simulators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TwoQubitKind {
    ISwapLike(ISwapLikeParams),
    /// diag(1, 1, 1, e^{i phi})
    CPhase { phi: f64 },
}

impl TwoQubitKind {
    pub fn matrix(&self) -> Mat4 {
        match self {
            TwoQubitKind::ISwapLike(p) => p.matrix(),
            TwoQubitKind::CPhase { phi } => {
                let mut m = [ZERO; 16];
                m[0] = ONE;
                m[5] = ONE;
                m[10] = ONE;
                m[15] = C::from_polar(1.0, *phi);
                m
            }
        }
    }
}

/// Max |(U U^dag - I)_{ij}| for a d x d row-major matrix.
pub fn unitarity_defect(m: &[C], d: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let mut s = ZERO;
            for k in 0..d {
                s += m[i * d + k] * m[j * d + k].conj();
            }
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((s - target).norm());
        }
    }
    worst
}

pub fn mat_mul(a: &[C], b: &[C], d: usize) -> Vec<C> {
    let mut out = vec![ZERO; d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik == ZERO {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += aik * b[k * d + j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_unitary(m: &[C], d: usize) {
        assert!(unitarity_defect(m, d) < 1e-12);
    }

    #[test]
    fn single_qubit_gates_unitary() {
        for g in SINGLE_QUBIT_GATES {
            assert_unitary(&g.matrix(), 2);
        }
    }

    #[test]
    fn iswap_like_unitary_for_generic_params() {
        let p = ISwapLikeParams {
            theta: 1.234,
            phi: 0.567,
            delta_plus: 0.1,
            delta_minus: -0.2,
            delta_minus_off: 0.3,
        };
        assert_unitary(&p.matrix(), 4);
        assert_unitary(&ISwapLikeParams::default().matrix(), 4);
        assert_unitary(&TwoQubitKind::CPhase { phi: 0.9 }.matrix(), 4);
    }

    #[test]
    fn sqrt_w_is_rotation_about_x_plus_y() {
        // R_n(pi/2) with n = (1,1,0)/sqrt(2): cos(pi/4) I - i sin(pi/4) (X+Y)/sqrt(2)
        let m = SingleQubitGate::SqrtW.matrix();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((m[0] - C::new(s, 0.0)).norm() < 1e-15);
        assert!((m[1] - C::new(-0.5, -0.5)).norm() < 1e-15);
        assert!((m[2] - C::new(0.5, -0.5)).norm() < 1e-15);
    }
}
