//! Cartan data of `A_n^{(1)}` and the weights of pattern elements.

use std::ops::{Add, Index};

use serde::{Deserialize, Serialize};

use crate::pattern::KRPattern;

/// Entry `<alpha_j, alpha_i^vee>` of the classical `A_n` Cartan matrix, `1 <= i, j <= n`.
pub fn classical_cartan(i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

/// Entry of the affine `A_n^{(1)}` Cartan matrix, `0 <= i, j <= n`.
/// For `n = 1` the off-diagonal entries are `-2`.
pub fn affine_cartan(n: usize, i: usize, j: usize) -> i64 {
    if i == j {
        return 2;
    }
    if n == 1 {
        return -2;
    }
    let d = (i + n + 1 - j) % (n + 1);
    if d == 1 || d == n {
        -1
    } else {
        0
    }
}

/// Level-zero affine weight recorded by its pairings `<wt, alpha_l^vee>`, `l = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeight {
    pub pairings: Vec<i64>,
}

impl AffineWeight {
    pub fn zero(n: usize) -> Self {
        Self {
            pairings: vec![0; n + 1],
        }
    }

    pub fn n(&self) -> usize {
        self.pairings.len() - 1
    }

    /// Lifts a classical weight (coefficients on `omega_1..omega_n`) to level zero.
    pub fn from_classical(classical: &[i64]) -> Self {
        let mut pairings = Vec::with_capacity(classical.len() + 1);
        pairings.push(-classical.iter().sum::<i64>());
        pairings.extend_from_slice(classical);
        Self { pairings }
    }

    /// Classical part: pairings with `alpha_1^vee .. alpha_n^vee`.
    pub fn classical(&self) -> &[i64] {
        &self.pairings[1..]
    }

    pub fn level(&self) -> i64 {
        self.pairings.iter().sum()
    }

    /// `wt - alpha_l`.
    pub fn minus_simple_root(&self, l: usize) -> Self {
        let n = self.n();
        Self {
            pairings: (0..=n).map(|j| self.pairings[j] - affine_cartan(n, j, l)).collect(),
        }
    }
}

impl Index<usize> for AffineWeight {
    type Output = i64;

    fn index(&self, l: usize) -> &i64 {
        &self.pairings[l]
    }
}

impl Add for &AffineWeight {
    type Output = AffineWeight;

    fn add(self, rhs: &AffineWeight) -> AffineWeight {
        AffineWeight {
            pairings: self.pairings.iter().zip(&rhs.pairings).map(|(a, b)| a + b).collect(),
        }
    }
}

/// `wt(A) = s omega_r - sum a_{p,q} alpha_{p,q}` in the fundamental weight
/// basis, where `alpha_{p,q} = alpha_p + ... + alpha_q`.
pub fn classical_weight(a: &KRPattern) -> Vec<i64> {
    let params = a.params();
    let (n, r) = (params.n(), params.r());
    let mut coeffs = vec![0i64; n];
    coeffs[r - 1] = i64::from(params.s());
    for q in r..=n {
        for p in 1..=r {
            let entry = i64::from(a.get(p, q));
            if entry == 0 {
                continue;
            }
            for (l, c) in coeffs.iter_mut().enumerate() {
                let pairing: i64 = (p..=q).map(|k| classical_cartan(l + 1, k)).sum();
                *c -= entry * pairing;
            }
        }
    }
    coeffs
}

pub fn affine_weight(a: &KRPattern) -> AffineWeight {
    AffineWeight::from_classical(&classical_weight(a))
}

/// Coordinates of a classical weight (given by its pairings) in the simple
/// root basis, scaled by `n + 1` so they stay integral. Uses the explicit
/// inverse `(C^{-1})_{ij} = min(i,j) (n + 1 - max(i,j)) / (n + 1)`.
pub fn root_coordinates_scaled(classical: &[i64]) -> Vec<i64> {
    let n = classical.len();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| (i.min(j) * (n + 1 - i.max(j))) as i64 * classical[j - 1])
                .sum()
        })
        .collect()
}
