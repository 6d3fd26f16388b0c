//! Tensor products of KR crystals.
//!
//! The rule used throughout is: `f_l(b1 ⊗ b2)` acts on `b1` when
//! `eps_l(b1) >= phi_l(b2)` and on `b2` otherwise; `e_l(b1 ⊗ b2)` acts on `b1`
//! when `eps_l(b1) > phi_l(b2)` and on `b2` otherwise. Classical highest
//! weight elements therefore have the zero pattern in the second factor.
//! Products of more than two factors associate to the left,
//! `((b1 ⊗ b2) ⊗ b3) ⊗ ...`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::crystal::Crystal;
use crate::error::{Error, Result};
use crate::pattern::{enumerate_crystal_capped, KRParams, KRPattern};
use crate::weight::{affine_weight, AffineWeight};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TensorJson")]
pub struct TensorElement {
    factors: Vec<KRPattern>,
}

#[derive(Deserialize)]
struct TensorJson {
    factors: Vec<KRPattern>,
}

impl TryFrom<TensorJson> for TensorElement {
    type Error = Error;

    fn try_from(raw: TensorJson) -> Result<Self> {
        TensorElement::new(raw.factors)
    }
}

impl TensorElement {
    pub fn new(factors: Vec<KRPattern>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::ArityMismatch { expected: 1, found: 0 });
        };
        let n = first.params().n();
        if let Some(bad) = factors.iter().find(|b| b.params().n() != n) {
            return Err(Error::RankMismatch(n, bad.params().n()));
        }
        Ok(Self { factors })
    }

    pub fn pair(b1: KRPattern, b2: KRPattern) -> Result<Self> {
        Self::new(vec![b1, b2])
    }

    pub fn factors(&self) -> &[KRPattern] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<KRPattern> {
        self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.factors[0].params().n()
    }

    pub fn shape(&self) -> Vec<KRParams> {
        self.factors.iter().map(KRPattern::params).collect()
    }

    /// `(eps_l, phi_l)` of every left prefix `b1 ⊗ ... ⊗ bk`.
    fn prefix_stats(&self, l: usize) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.factors.len());
        let (mut eps, mut phi) = (self.factors[0].eps(l), self.factors[0].phi(l));
        out.push((eps, phi));
        for b in &self.factors[1..] {
            let (eb, pb) = (i64::from(b.eps(l)), i64::from(b.phi(l)));
            let (ex, px) = (i64::from(eps), i64::from(phi));
            phi = px.max(px + pb - ex) as u32;
            eps = eb.max(ex + eb - pb) as u32;
            out.push((eps, phi));
        }
        out
    }

    /// Index of the factor `f_l` acts on.
    pub fn f_position(&self, l: usize) -> usize {
        let stats = self.prefix_stats(l);
        (1..self.factors.len())
            .rev()
            .find(|&k| stats[k - 1].0 < self.factors[k].phi(l))
            .unwrap_or(0)
    }

    /// Index of the factor `e_l` acts on.
    pub fn e_position(&self, l: usize) -> usize {
        let stats = self.prefix_stats(l);
        (1..self.factors.len())
            .rev()
            .find(|&k| stats[k - 1].0 <= self.factors[k].phi(l))
            .unwrap_or(0)
    }

    pub fn tensor_f(&self, l: usize) -> Option<TensorElement> {
        let k = self.f_position(l);
        let moved = self.factors[k].f(l)?;
        let mut out = self.clone();
        out.factors[k] = moved;
        Some(out)
    }

    pub fn tensor_e(&self, l: usize) -> Option<TensorElement> {
        let k = self.e_position(l);
        let moved = self.factors[k].e(l)?;
        let mut out = self.clone();
        out.factors[k] = moved;
        Some(out)
    }

    pub fn tensor_phi(&self, l: usize) -> u32 {
        self.prefix_stats(l).last().expect("non-empty").1
    }

    pub fn tensor_eps(&self, l: usize) -> u32 {
        self.prefix_stats(l).last().expect("non-empty").0
    }

    pub fn tensor_wt(&self) -> AffineWeight {
        self.factors
            .iter()
            .map(affine_weight)
            .reduce(|acc, w| &acc + &w)
            .expect("non-empty")
    }

    pub fn is_classical_highest_weight(&self) -> bool {
        (1..=self.rank()).all(|l| self.tensor_e(l).is_none())
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

/// `B^{r1,s1} ⊗ ... ⊗ B^{rN,sN}` over a common rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorCrystal {
    factors: Vec<KRParams>,
}

impl TensorCrystal {
    pub fn new(factors: Vec<KRParams>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::ArityMismatch { expected: 1, found: 0 });
        };
        let n = first.n();
        if let Some(bad) = factors.iter().find(|p| p.n() != n) {
            return Err(Error::RankMismatch(n, bad.n()));
        }
        Ok(Self { factors })
    }

    pub fn pair(p1: KRParams, p2: KRParams) -> Result<Self> {
        Self::new(vec![p1, p2])
    }

    pub fn factors(&self) -> &[KRParams] {
        &self.factors
    }

    /// The element with every factor zero.
    pub fn zero(&self) -> TensorElement {
        TensorElement {
            factors: self.factors.iter().map(|&p| KRPattern::zero(p)).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        Self {
            factors: self.factors.iter().rev().copied().collect(),
        }
    }

    pub fn contains(&self, x: &TensorElement) -> bool {
        x.shape() == self.factors
    }
}

impl Crystal for TensorCrystal {
    type Element = TensorElement;

    fn rank(&self) -> usize {
        self.factors[0].n()
    }

    fn elements_capped(&self, limit: usize) -> Result<Vec<TensorElement>> {
        let per_factor: Vec<Vec<KRPattern>> = self
            .factors
            .iter()
            .map(|&p| enumerate_crystal_capped(p, limit))
            .collect::<Result<_>>()?;
        let total = per_factor
            .iter()
            .try_fold(1usize, |acc, v| acc.checked_mul(v.len()))
            .filter(|&t| t <= limit)
            .ok_or(Error::SizeLimitExceeded { limit })?;
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; per_factor.len()];
        loop {
            out.push(TensorElement {
                factors: idx.iter().zip(&per_factor).map(|(&i, v)| v[i].clone()).collect(),
            });
            let mut k = idx.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < per_factor[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    fn e(&self, x: &TensorElement, l: usize) -> Option<TensorElement> {
        x.tensor_e(l)
    }

    fn f(&self, x: &TensorElement, l: usize) -> Option<TensorElement> {
        x.tensor_f(l)
    }

    fn eps(&self, x: &TensorElement, l: usize) -> u32 {
        x.tensor_eps(l)
    }

    fn phi(&self, x: &TensorElement, l: usize) -> u32 {
        x.tensor_phi(l)
    }

    fn weight(&self, x: &TensorElement) -> AffineWeight {
        x.tensor_wt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::validate_pattern;

    fn rank_one(s: u32, a: i64) -> KRPattern {
        validate_pattern(&[vec![a]], KRParams::new(1, 1, s).unwrap()).unwrap()
    }

    fn t(a: i64, b: i64) -> TensorElement {
        TensorElement::pair(rank_one(1, a), rank_one(3, b)).unwrap()
    }

    #[test]
    fn worked_rank_one_edges() {
        assert_eq!(t(0, 0).tensor_f(1), Some(t(0, 1)));
        assert_eq!(t(1, 3).tensor_f(0), Some(t(1, 2)));
        assert_eq!(t(0, 1).tensor_e(1), Some(t(0, 0)));
        assert_eq!(t(0, 0).tensor_phi(1), 4);
        assert_eq!(t(0, 0).tensor_wt().level(), 0);
    }

    #[test]
    fn rejects_mixed_ranks() {
        let a = KRPattern::zero(KRParams::new(2, 1, 1).unwrap());
        let b = KRPattern::zero(KRParams::new(3, 1, 1).unwrap());
        assert_eq!(TensorElement::pair(a, b), Err(Error::RankMismatch(2, 3)));
        assert!(TensorElement::new(vec![]).is_err());
    }

    #[test]
    fn product_enumeration_is_sorted() {
        let c = TensorCrystal::pair(KRParams::new(1, 1, 1).unwrap(), KRParams::new(1, 1, 3).unwrap()).unwrap();
        let all = c.elements().unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(
            c.elements_capped(7),
            Err(Error::SizeLimitExceeded { limit: 7 })
        ));
    }

    #[test]
    fn json_round_trip() {
        let x = t(1, 2);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(
            text,
            r#"{"factors":[{"n":1,"r":1,"s":1,"rows":[[1]]},{"n":1,"r":1,"s":3,"rows":[[2]]}]}"#
        );
        assert_eq!(serde_json::from_str::<TensorElement>(&text).unwrap(), x);
    }
}
