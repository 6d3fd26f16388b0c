//! Local energy `H` on `B^{r1,s1} ⊗ B^{r2,s2}` and global energy of longer
//! products.
//!
//! The oracle builds `H` from its defining recursion: `H(0 ⊗ 0) = 0`, and
//! `H(e_0 x) = H(x) - 1` when `e_0` acts on the left factor of both `x` and
//! `σ(x)`, `+1` when it acts on the right factor of both, and `H` is unchanged
//! along every other edge. The closed form raises the right factor to `0`
//! through a fixed schedule of `e` operators and counts how much of the left
//! factor's anti-diagonal block survives.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::crystal::Crystal;
use crate::error::{Error, Result};
use crate::pattern::{KRParams, KRPattern};
use crate::rmatrix::{rmatrix, rmatrix_oracle, RMatrixTable};
use crate::tensor::{TensorCrystal, TensorElement};

/// `H` tabulated on a whole two-fold product.
#[derive(Clone, Debug)]
pub struct EnergyTable {
    pub source: TensorCrystal,
    pub values: HashMap<TensorElement, i64>,
}

impl EnergyTable {
    pub fn get(&self, x: &TensorElement) -> Option<i64> {
        self.values.get(x).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Change of `H` along the edge `x -> e_0 x`: `-1` for LL, `+1` for RR.
fn recursion_step(x: &TensorElement, sx: &TensorElement, l: usize) -> i64 {
    if l != 0 {
        return 0;
    }
    match (x.e_position(0), sx.e_position(0)) {
        (0, 0) => -1,
        (1, 1) => 1,
        _ => 0,
    }
}

/// Solves the defining recursion by breadth-first search from `0 ⊗ 0`, using
/// the R-matrix from [`rmatrix_oracle`]. Every edge is checked, so a
/// recursion that is not path independent is reported.
pub fn local_energy_oracle(p1: KRParams, p2: KRParams) -> Result<EnergyTable> {
    let sigma = rmatrix_oracle(p1, p2)?;
    local_energy_from_rmatrix(&sigma)
}

pub fn local_energy_from_rmatrix(sigma: &RMatrixTable) -> Result<EnergyTable> {
    let source = sigma.source.clone();
    let s = |x: &TensorElement| {
        sigma
            .apply(x)
            .cloned()
            .ok_or_else(|| Error::OracleFailure(format!("R-matrix table has no image for {x}")))
    };
    let start = source.zero();
    let mut values = HashMap::from([(start.clone(), 0i64)]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let hx = values[&x];
        for l in source.colors() {
            let mut next = Vec::with_capacity(2);
            if let Some(y) = x.tensor_e(l) {
                next.push((y, hx + recursion_step(&x, &s(&x)?, l)));
            }
            if let Some(y) = x.tensor_f(l) {
                next.push((y.clone(), hx - recursion_step(&y, &s(&y)?, l)));
            }
            for (y, hy) in next {
                match values.get(&y) {
                    Some(&seen) if seen != hy => {
                        return Err(Error::InconsistentRecursion(format!(
                            "H({y}) is both {seen} and {hy} (reached from {x} by color {l})"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        values.insert(y.clone(), hy);
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    let total = source.elements()?.len();
    if values.len() != total {
        return Err(Error::OracleFailure(format!(
            "recursion reached {} of {total} elements",
            values.len()
        )));
    }
    Ok(EnergyTable { source, values })
}

/// `H` on a classical highest weight element: minus the entry sum of the left factor.
pub fn local_energy_hw(x: &TensorElement) -> Result<i64> {
    let [a, _] = x.factors() else {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: x.len(),
        });
    };
    if !x.is_classical_highest_weight() {
        return Err(Error::NotHighestWeight);
    }
    Ok(-(a.entry_sum() as i64))
}

/// One step of the raising schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceStep {
    pub color: usize,
    pub a_power: u32,
    pub b_power: u32,
}

/// The families `A^s_r`, `B^s_r` for `0 <= s <= n - r2` and `0 <= r <= r2 + s`.
///
/// Round `s` starts from the last element of round `s - 1` and applies colors
/// `1, ..., r2 - 1` followed by `r2 + s, r2 + s - 1, ..., r2`. The right factor
/// is raised as far as possible, the left one by `(eps(A) - phi(B))_+`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntermediateSeq {
    pub a: Vec<Vec<KRPattern>>,
    pub b: Vec<Vec<KRPattern>>,
    pub steps: Vec<Vec<SequenceStep>>,
}

impl IntermediateSeq {
    /// The correction terms `(eps_{r2}(A^s_{r2+s-1}) - phi_{r2}(B^s_{r2+s-1}))_+`.
    pub fn corrections(&self) -> Vec<u32> {
        self.steps
            .iter()
            .map(|round| round.last().expect("every round has a step").a_power)
            .collect()
    }

    pub fn last(&self) -> (&KRPattern, &KRPattern) {
        let a = self.a.last().and_then(|round| round.last()).expect("non-empty");
        let b = self.b.last().and_then(|round| round.last()).expect("non-empty");
        (a, b)
    }
}

fn schedule_color(r2: usize, s: usize, r: usize) -> usize {
    if r < r2 {
        r
    } else {
        2 * r2 + s - r
    }
}

pub fn intermediate_sequence(x: &TensorElement) -> Result<IntermediateSeq> {
    let [a0, b0] = x.factors() else {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: x.len(),
        });
    };
    let n = a0.params().n();
    let r2 = b0.params().r();
    let mut seq = IntermediateSeq {
        a: Vec::new(),
        b: Vec::new(),
        steps: Vec::new(),
    };
    let (mut a, mut b) = (a0.clone(), b0.clone());
    for s in 0..=n - r2 {
        let mut a_round = vec![a.clone()];
        let mut b_round = vec![b.clone()];
        let mut steps = Vec::new();
        for r in 1..=r2 + s {
            let color = schedule_color(r2, s, r);
            let a_power = a.eps(color).saturating_sub(b.phi(color));
            let b_power = b.eps(color);
            a = a.e_pow(color, a_power).expect("power bounded by eps");
            b = b.e_pow(color, b_power).expect("power equals eps");
            a_round.push(a.clone());
            b_round.push(b.clone());
            steps.push(SequenceStep {
                color,
                a_power,
                b_power,
            });
        }
        seq.a.push(a_round);
        seq.b.push(b_round);
        seq.steps.push(steps);
    }
    Ok(seq)
}

/// Entry sum of `A` over columns `p <= min(r1, r2)` and rows `q >= max(r1, r2)`.
fn block_sum(a: &KRPattern, r_min: usize, r_max: usize) -> i64 {
    let n = a.params().n();
    (1..=r_min)
        .flat_map(|p| (r_max..=n).map(move |q| (p, q)))
        .map(|(p, q)| i64::from(a.get_or_zero(p, q)))
        .sum()
}

/// Closed form for `H`. When `s1 > s2` the pair is first swapped by the
/// R-matrix, which preserves `H`.
pub fn local_energy(x: &TensorElement) -> Result<i64> {
    let [a, b] = x.factors() else {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: x.len(),
        });
    };
    if a.params().s() > b.params().s() {
        return local_energy(&rmatrix(x)?);
    }
    let (r1, r2) = (a.params().r(), b.params().r());
    let seq = intermediate_sequence(x)?;
    let corrections: i64 = seq.corrections().iter().map(|&c| i64::from(c)).sum();
    Ok(-block_sum(a, r1.min(r2), r1.max(r2)) + corrections)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EnergyMethod {
    /// Closed-form `H` and transported R-matrix.
    ClosedForm,
    /// Recursion tables and the weight-matched R-matrix.
    Oracle,
}

/// Global energy evaluator; caches oracle tables per pair of factor shapes.
#[derive(Debug)]
pub struct GlobalEnergy {
    method: EnergyMethod,
    tables: HashMap<(KRParams, KRParams), (RMatrixTable, EnergyTable)>,
}

impl GlobalEnergy {
    pub fn new(method: EnergyMethod) -> Self {
        Self {
            method,
            tables: HashMap::new(),
        }
    }

    fn tables(&mut self, p1: KRParams, p2: KRParams) -> Result<&(RMatrixTable, EnergyTable)> {
        match self.tables.entry((p1, p2)) {
            Entry::Occupied(e) => Ok(e.into_mut()),
            Entry::Vacant(e) => {
                let sigma = rmatrix_oracle(p1, p2)?;
                let h = local_energy_from_rmatrix(&sigma)?;
                Ok(e.insert((sigma, h)))
            }
        }
    }

    fn sigma(&mut self, pair: &TensorElement) -> Result<TensorElement> {
        match self.method {
            EnergyMethod::ClosedForm => rmatrix(pair),
            EnergyMethod::Oracle => {
                let shape = pair.shape();
                let (sigma, _) = self.tables(shape[0], shape[1])?;
                Ok(sigma.apply(pair).expect("table covers the product").clone())
            }
        }
    }

    fn local(&mut self, pair: &TensorElement) -> Result<i64> {
        match self.method {
            EnergyMethod::ClosedForm => local_energy(pair),
            EnergyMethod::Oracle => {
                let shape = pair.shape();
                let (_, h) = self.tables(shape[0], shape[1])?;
                Ok(h.get(pair).expect("table covers the product"))
            }
        }
    }

    /// Sum over `i < j` of `H` at positions `(i, i + 1)` after factor `j` has
    /// been moved left to position `i + 1` by R-matrices.
    pub fn evaluate(&mut self, x: &TensorElement) -> Result<i64> {
        let mut total = 0;
        let len = x.len();
        for i in 0..len {
            for j in i + 1..len {
                let mut factors = x.factors().to_vec();
                for k in (i + 1..j).rev() {
                    let pair = TensorElement::pair(factors[k].clone(), factors[k + 1].clone())?;
                    let [left, right] = <[KRPattern; 2]>::try_from(self.sigma(&pair)?.into_factors())
                        .expect("R-matrix image is a pair");
                    factors[k] = left;
                    factors[k + 1] = right;
                }
                let pair = TensorElement::pair(factors[i].clone(), factors[i + 1].clone())?;
                total += self.local(&pair)?;
            }
        }
        Ok(total)
    }
}

pub fn global_energy(x: &TensorElement) -> Result<i64> {
    GlobalEnergy::new(EnergyMethod::ClosedForm).evaluate(x)
}
