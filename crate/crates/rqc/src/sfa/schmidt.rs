//! Operator-Schmidt decomposition of the two-qubit gates.
//!
//! A two-qubit unitary is written as `U = sum_i lambda_i A_i (x) B_i` with
//! the `A_i` and `B_i` orthonormal under the trace inner product, so
//! `sum lambda_i^2 = 4`. For the iSWAP-like gate the singular values have
//! closed forms:
//!
//! ```text
//! lambda_1 = sqrt(1 + 2|cos(phi/2) cos(theta)| + cos^2(theta))
//! lambda_2 = lambda_3 = |sin(theta)|
//! lambda_4 = sqrt(1 - 2|cos(phi/2) cos(theta)| + cos^2(theta))
//! ```
//!
//! The decomposition is built from the realigned gate matrix, which for
//! both supported gate kinds splits into two rank-one swap entries plus a
//! 2x2 block over the diagonal subspace; the block is decomposed by a
//! closed-form 2x2 singular value decomposition. Exact zeros are dropped.

use crate::gates::{Mat2, Mat4, TwoQubitKind, C, ZERO};

const LAMBDA_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct SchmidtTerm {
    pub lambda: f64,
    /// Operator on the gate's first target qubit.
    pub op_a: Mat2,
    /// Operator on the gate's second target qubit.
    pub op_b: Mat2,
}

#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    /// Terms sorted by descending singular value.
    pub terms: Vec<SchmidtTerm>,
}

impl SchmidtDecomposition {
    pub fn rank(&self) -> usize {
        self.terms.len()
    }

    pub fn lambdas(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.lambda).collect()
    }

    pub fn sum_lambda_sq(&self) -> f64 {
        self.terms.iter().map(|t| t.lambda * t.lambda).sum()
    }

    /// Rebuilds the 4x4 gate matrix from the terms.
    pub fn reconstruct(&self) -> Mat4 {
        let mut m = [ZERO; 16];
        for t in &self.terms {
            for i in 0..2 {
                for ip in 0..2 {
                    for j in 0..2 {
                        for jp in 0..2 {
                            m[(i * 2 + j) * 4 + (ip * 2 + jp)] +=
                                t.lambda * t.op_a[i * 2 + ip] * t.op_b[j * 2 + jp];
                        }
                    }
                }
            }
        }
        m
    }
}

/// Closed-form singular values of the iSWAP-like gate, descending.
pub fn iswap_like_lambdas(theta: f64, phi: f64) -> [f64; 4] {
    let ct = theta.cos();
    let cross = 2.0 * ((phi / 2.0).cos() * ct).abs();
    let mut l = [
        (1.0 + cross + ct * ct).sqrt(),
        theta.sin().abs(),
        theta.sin().abs(),
        (1.0f64 - cross + ct * ct).max(0.0).sqrt(),
    ];
    l.sort_by(|a, b| b.partial_cmp(a).unwrap());
    l
}

/// Decomposes an iSWAP-like or controlled-phase gate.
pub fn schmidt_decompose(kind: &TwoQubitKind) -> SchmidtDecomposition {
    let u = kind.matrix();
    // Realignment entries that can be nonzero for these gates:
    // swap part
    let b_swap = u[1 * 4 + 2]; // U[01][10]
    let c_swap = u[2 * 4 + 1]; // U[10][01]
    // diagonal 2x2 block: rows (i,i') in {00, 11}, cols (j,j') in {00, 11}
    let n = [u[0], u[5], u[10], u[15]]; // [[U00 U11],[U22 U33]]

    let mut terms: Vec<SchmidtTerm> = Vec::new();

    let e01: Mat2 = [ZERO, C::new(1.0, 0.0), ZERO, ZERO];
    let e10: Mat2 = [ZERO, ZERO, C::new(1.0, 0.0), ZERO];
    if b_swap.norm() > LAMBDA_TOL {
        let phase = b_swap / b_swap.norm();
        terms.push(SchmidtTerm {
            lambda: b_swap.norm(),
            op_a: e01,
            op_b: [ZERO, ZERO, phase, ZERO],
        });
    }
    if c_swap.norm() > LAMBDA_TOL {
        let phase = c_swap / c_swap.norm();
        terms.push(SchmidtTerm {
            lambda: c_swap.norm(),
            op_a: e10,
            op_b: [ZERO, phase, ZERO, ZERO],
        });
    }

    // 2x2 SVD of n = [[n0 n1],[n2 n3]] via the Hermitian product.
    let (n0, n1, n2, n3) = (n[0], n[1], n[2], n[3]);
    let h00 = (n0.conj() * n0 + n2.conj() * n2).re;
    let h11 = (n1.conj() * n1 + n3.conj() * n3).re;
    let h01 = n0.conj() * n1 + n2.conj() * n3;
    let tr = h00 + h11;
    let disc = ((h00 - h11) * (h00 - h11) + 4.0 * h01.norm_sqr()).max(0.0).sqrt();
    let mus = [(tr + disc) / 2.0, (tr - disc) / 2.0];

    let vecs: [[C; 2]; 2] = if h01.norm() > LAMBDA_TOL {
        let mk = |mu: f64| -> [C; 2] {
            let v = [h01, C::new(mu - h00, 0.0)];
            let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            [v[0] / norm, v[1] / norm]
        };
        [mk(mus[0]), mk(mus[1])]
    } else {
        // diagonal H: basis vectors, larger eigenvalue first
        if h00 >= h11 {
            [[C::new(1.0, 0.0), ZERO], [ZERO, C::new(1.0, 0.0)]]
        } else {
            [[ZERO, C::new(1.0, 0.0)], [C::new(1.0, 0.0), ZERO]]
        }
    };

    for (mu, v) in mus.iter().zip(vecs.iter()) {
        let sigma = mu.max(0.0).sqrt();
        if sigma <= LAMBDA_TOL {
            continue;
        }
        // u = N v / sigma
        let u0 = (n0 * v[0] + n1 * v[1]) / sigma;
        let u1 = (n2 * v[0] + n3 * v[1]) / sigma;
        terms.push(SchmidtTerm {
            lambda: sigma,
            op_a: [u0, ZERO, ZERO, u1],
            op_b: [v[0].conj(), ZERO, ZERO, v[1].conj()],
        });
    }

    terms.sort_by(|x, y| y.lambda.partial_cmp(&x.lambda).unwrap());
    SchmidtDecomposition { terms }
}
