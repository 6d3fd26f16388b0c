//! Combinatorial R-matrix `B^{r1,s1} ⊗ B^{r2,s2} -> B^{r2,s2} ⊗ B^{r1,s1}`.
//!
//! Classical highest weight elements of a two-fold product are `A ⊗ 0`
//! where `A` is supported on the anti-diagonal cells `(r - j, r~ + j)`,
//! `j = 0..=k`, with `r = min(r1, r2)`, `r~ = max(r1, r2)`,
//! `k = min(r - 1, n - r~)` and weakly decreasing entries bounded by
//! `min(s1, s2)`. The R-matrix keeps those entries and swaps the factor
//! shapes. Arbitrary elements are transported to their highest weight
//! element, mapped, and lowered back along the reversed word.

use std::collections::HashMap;

use serde::Serialize;

use crate::crystal::{lower_along, match_components, raise_to_highest_weight, Crystal};
use crate::error::{Error, Result};
use crate::pattern::{KRParams, KRPattern};
use crate::tensor::{TensorCrystal, TensorElement};

/// `(s, r, r~, k)` for a pair of factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HighestWeightShape {
    pub s_min: u32,
    pub r_min: usize,
    pub r_max: usize,
    pub k: usize,
}

impl HighestWeightShape {
    pub fn new(p1: KRParams, p2: KRParams) -> Result<Self> {
        if p1.n() != p2.n() {
            return Err(Error::RankMismatch(p1.n(), p2.n()));
        }
        let r_min = p1.r().min(p2.r());
        let r_max = p1.r().max(p2.r());
        Ok(Self {
            s_min: p1.s().min(p2.s()),
            r_min,
            r_max,
            k: (r_min - 1).min(p1.n() - r_max),
        })
    }

    /// Cell `(r - j, r~ + j)`.
    pub fn cell(&self, j: usize) -> (usize, usize) {
        (self.r_min - j, self.r_max + j)
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.k).map(|j| self.cell(j))
    }
}

/// Weakly decreasing tuple `(a_0, ..., a_k)` with `s >= a_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HighestWeightDatum(pub Vec<u32>);

impl HighestWeightDatum {
    pub fn is_admissible(&self, shape: &HighestWeightShape) -> bool {
        self.0.len() == shape.k + 1
            && self.0.first().is_some_and(|&a| a <= shape.s_min)
            && self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Reads the anti-diagonal entries of a pattern.
    pub fn read(a: &KRPattern, shape: &HighestWeightShape) -> Self {
        Self(shape.cells().map(|(p, q)| a.get(p, q)).collect())
    }

    /// Places the tuple on the anti-diagonal of a zero pattern.
    pub fn place(&self, params: KRParams, shape: &HighestWeightShape) -> KRPattern {
        let mut a = KRPattern::zero(params);
        for ((p, q), &value) in shape.cells().zip(&self.0) {
            a.add(p, q, i64::from(value));
        }
        a
    }
}

/// All weakly decreasing tuples of length `k + 1` bounded by `s`, lexicographic.
pub fn highest_weight_data(shape: &HighestWeightShape) -> Vec<HighestWeightDatum> {
    fn go(prefix: &mut Vec<u32>, len: usize, bound: u32, out: &mut Vec<HighestWeightDatum>) {
        if prefix.len() == len {
            out.push(HighestWeightDatum(prefix.clone()));
            return;
        }
        for value in 0..=bound {
            prefix.push(value);
            go(prefix, len, value, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), shape.k + 1, shape.s_min, &mut out);
    out
}

/// Classical highest weight elements of `B^{r1,s1} ⊗ B^{r2,s2}`, ordered
/// lexicographically by their anti-diagonal tuple.
pub fn highest_weight_elements(p1: KRParams, p2: KRParams) -> Result<Vec<TensorElement>> {
    let shape = HighestWeightShape::new(p1, p2)?;
    highest_weight_data(&shape)
        .iter()
        .map(|d| TensorElement::pair(d.place(p1, &shape), KRPattern::zero(p2)))
        .collect()
}

fn split_pair(x: &TensorElement) -> Result<(&KRPattern, &KRPattern)> {
    match x.factors() {
        [a, b] => Ok((a, b)),
        other => Err(Error::ArityMismatch {
            expected: 2,
            found: other.len(),
        }),
    }
}

/// The R-matrix on a classical highest weight element `A ⊗ 0`: the image is
/// `Ã ⊗ 0` in the swapped product with the same anti-diagonal entries.
pub fn rmatrix_on_hw(x: &TensorElement) -> Result<TensorElement> {
    let (a, b) = split_pair(x)?;
    if !x.is_classical_highest_weight() {
        return Err(Error::NotHighestWeight);
    }
    let (p1, p2) = (a.params(), b.params());
    let shape = HighestWeightShape::new(p1, p2)?;
    let datum = HighestWeightDatum::read(a, &shape);
    debug_assert!(b.is_zero() && datum.place(p1, &shape) == *a);
    TensorElement::pair(datum.place(p2, &shape), KRPattern::zero(p1))
}

/// The R-matrix on an arbitrary element of a two-fold product.
pub fn rmatrix(x: &TensorElement) -> Result<TensorElement> {
    let (a, b) = split_pair(x)?;
    let source = TensorCrystal::pair(a.params(), b.params())?;
    let target = source.reversed();
    let (hw, word) = raise_to_highest_weight(&source, x);
    let image = rmatrix_on_hw(&hw)?;
    lower_along(&target, &image, &word)
        .ok_or_else(|| Error::OracleFailure(format!("lowering the image of {hw} along {word:?} hit crystal zero")))
}

/// The R-matrix tabulated on a whole product together with its inverse.
#[derive(Clone, Debug)]
pub struct RMatrixTable {
    pub source: TensorCrystal,
    pub map: HashMap<TensorElement, TensorElement>,
}

impl RMatrixTable {
    pub fn apply(&self, x: &TensorElement) -> Option<&TensorElement> {
        self.map.get(x)
    }

    pub fn inverse(&self) -> RMatrixTable {
        RMatrixTable {
            source: self.source.reversed(),
            map: self.map.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }
}

/// Builds the R-matrix without any closed formula: classical highest weight
/// elements of both products are found by scanning, matched by classical
/// weight, and the matching is propagated along classical edges. The result
/// is then checked to intertwine `e_0` and `f_0`.
pub fn rmatrix_oracle(p1: KRParams, p2: KRParams) -> Result<RMatrixTable> {
    let source = TensorCrystal::pair(p1, p2)?;
    let target = source.reversed();
    let classical: Vec<usize> = (1..=source.rank()).collect();

    let hw_by_weight = |c: &TensorCrystal| -> Result<HashMap<Vec<i64>, TensorElement>> {
        let mut out = HashMap::new();
        for x in c.elements()? {
            if c.is_classical_highest_weight(&x) {
                let key = c.weight(&x).classical().to_vec();
                if let Some(prev) = out.insert(key, x.clone()) {
                    return Err(Error::OracleFailure(format!(
                        "highest weight elements {prev} and {x} share a weight"
                    )));
                }
            }
        }
        Ok(out)
    };
    let hw_source = hw_by_weight(&source)?;
    let hw_target = hw_by_weight(&target)?;
    if hw_source.len() != hw_target.len() {
        return Err(Error::OracleFailure(format!(
            "{} highest weight elements on one side, {} on the other",
            hw_source.len(),
            hw_target.len()
        )));
    }

    let mut map = HashMap::new();
    for (weight, x) in &hw_source {
        let y = hw_target.get(weight).ok_or_else(|| {
            Error::OracleFailure(format!("no highest weight element of weight {weight:?} in the target"))
        })?;
        let piece = match_components(&source, x, &target, y, &classical)
            .ok_or_else(|| Error::OracleFailure(format!("components of {x} and {y} are not isomorphic")))?;
        map.extend(piece);
    }

    let total = source.elements()?.len();
    if map.len() != total {
        return Err(Error::OracleFailure(format!(
            "matched {} of {total} elements",
            map.len()
        )));
    }

    for (x, y) in &map {
        for (gx, gy) in [(x.tensor_f(0), y.tensor_f(0)), (x.tensor_e(0), y.tensor_e(0))] {
            let consistent = match (&gx, &gy) {
                (None, None) => true,
                (Some(gx), Some(gy)) => map.get(gx) == Some(gy),
                _ => false,
            };
            if !consistent {
                return Err(Error::OracleFailure(format!(
                    "classical isomorphism does not commute with color 0 at {x}"
                )));
            }
        }
    }
    Ok(RMatrixTable { source, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::validate_pattern;

    fn params(n: usize, r: usize, s: u32) -> KRParams {
        KRParams::new(n, r, s).unwrap()
    }

    fn rank_one(s: u32, a: i64) -> KRPattern {
        validate_pattern(&[vec![a]], params(1, 1, s)).unwrap()
    }

    #[test]
    fn rank_one_highest_weight_elements() {
        let hw = highest_weight_elements(params(1, 1, 1), params(1, 1, 3)).unwrap();
        let expect = vec![
            TensorElement::pair(rank_one(1, 0), rank_one(3, 0)).unwrap(),
            TensorElement::pair(rank_one(1, 1), rank_one(3, 0)).unwrap(),
        ];
        assert_eq!(hw, expect);
    }

    #[test]
    fn a7_shape() {
        let shape = HighestWeightShape::new(params(7, 4, 3), params(7, 5, 2)).unwrap();
        assert_eq!(shape.k, 2);
        assert_eq!(shape.cells().collect::<Vec<_>>(), vec![(4, 5), (3, 6), (2, 7)]);
    }

    #[test]
    fn a7_image_keeps_antidiagonal() {
        let (p1, p2) = (params(7, 4, 3), params(7, 5, 2));
        let rows: Vec<Vec<i64>> = vec![vec![0, 0, 0, 0], vec![0, 0, 0, 2], vec![0, 0, 1, 0], vec![0, 1, 0, 0]];
        let a = validate_pattern(&rows, p1).unwrap();
        let x = TensorElement::pair(a, KRPattern::zero(p2)).unwrap();
        let y = rmatrix_on_hw(&x).unwrap();
        let expect_rows: Vec<Vec<i64>> = vec![vec![0, 0, 0, 2, 0], vec![0, 0, 1, 0, 0], vec![0, 1, 0, 0, 0]];
        let expect = TensorElement::pair(validate_pattern(&expect_rows, p2).unwrap(), KRPattern::zero(p1)).unwrap();
        assert_eq!(y, expect);
        assert_eq!(rmatrix(&x).unwrap(), expect);
    }

    #[test]
    fn not_highest_weight_is_rejected() {
        let x = TensorElement::pair(rank_one(1, 0), rank_one(3, 1)).unwrap();
        assert_eq!(rmatrix_on_hw(&x), Err(Error::NotHighestWeight));
        let triple = TensorElement::new(vec![rank_one(1, 0); 3]).unwrap();
        assert!(matches!(rmatrix(&triple), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn generator_is_fixed() {
        for (p1, p2) in [(params(3, 1, 2), params(3, 2, 1)), (params(4, 3, 1), params(4, 2, 3))] {
            let x = TensorCrystal::pair(p1, p2).unwrap().zero();
            let y = TensorCrystal::pair(p2, p1).unwrap().zero();
            assert_eq!(rmatrix(&x).unwrap(), y);
        }
    }

    #[test]
    fn rank_one_worked_images() {
        let x = TensorElement::pair(rank_one(1, 1), rank_one(3, 1)).unwrap();
        let y = TensorElement::pair(rank_one(3, 2), rank_one(1, 0)).unwrap();
        assert_eq!(rmatrix(&x).unwrap(), y);
        let x = TensorElement::pair(rank_one(1, 1), rank_one(3, 3)).unwrap();
        let y = TensorElement::pair(rank_one(3, 3), rank_one(1, 1)).unwrap();
        assert_eq!(rmatrix(&x).unwrap(), y);
    }

    #[test]
    fn oracle_agrees_on_small_products() {
        for (p1, p2) in [
            (params(2, 1, 1), params(2, 2, 2)),
            (params(3, 2, 2), params(3, 1, 1)),
            (params(3, 2, 1), params(3, 2, 2)),
        ] {
            let table = rmatrix_oracle(p1, p2).unwrap();
            for (x, y) in &table.map {
                assert_eq!(&rmatrix(x).unwrap(), y);
            }
            let back = rmatrix_oracle(p2, p1).unwrap();
            for (x, y) in &table.map {
                assert_eq!(back.apply(y), Some(x));
            }
        }
    }
}
