//! Nakajima monomials in the variables `Y_i(k)` for classical type `A_m`, and
//! the embedding `Ψ` of the `{0, 1}`-components of `B^{r,s}` into them.
//!
//! `Ψ` only involves `Y_1` and `Y_2`: color `0` of the pattern corresponds to
//! monomial color `1` and color `1` to monomial color `2`. With
//! `A_l(k) = Y_l(k) Y_l(k+1) prod_{i != l} Y_i(k + c_{il})^{a_{il}}`, this
//! matching needs `c_{21} = 1` and `c_{12} = 0`, i.e.
//! [`SignConvention::descending`].

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::crystal::Crystal;
use crate::error::{Error, Result};
use crate::pattern::KRPattern;
use crate::weight::{classical_cartan, AffineWeight};

/// A Laurent monomial `prod Y_i(k)^{y_i(k)}`; zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NakajimaMonomial {
    exponents: BTreeMap<(usize, i64), i64>,
}

impl NakajimaMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// The variable `Y_i(k)`.
    pub fn y(i: usize, k: i64) -> Self {
        Self::from_exponents([((i, k), 1)])
    }

    pub fn from_exponents(exponents: impl IntoIterator<Item = ((usize, i64), i64)>) -> Self {
        let mut m = Self::one();
        for (key, e) in exponents {
            m.bump(key, e);
        }
        m
    }

    fn bump(&mut self, key: (usize, i64), e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.exponents.entry(key).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exponents.remove(&key);
        }
    }

    pub fn exponent(&self, i: usize, k: i64) -> i64 {
        self.exponents.get(&(i, k)).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &BTreeMap<(usize, i64), i64> {
        &self.exponents
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::from_exponents(self.exponents.iter().map(|(&key, &e)| (key, e * k)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&key, &e) in &other.exponents {
            out.bump(key, e);
        }
        out
    }

    /// `(k, y_l(k))` for the support of index `l`, by increasing `k`.
    fn row(&self, l: usize) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.exponents
            .range((l, i64::MIN)..=(l, i64::MAX))
            .map(|(&(_, k), &e)| (k, e))
    }

    /// Largest index appearing in the support, 0 for the empty monomial.
    pub fn max_index(&self) -> usize {
        self.exponents.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }
}

impl fmt::Display for NakajimaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(&(i, k), &e)| {
                if e == 1 {
                    format!("Y{i}({k})")
                } else {
                    format!("Y{i}({k})^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for NakajimaMonomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<(usize, i64, i64)> = self.exponents.iter().map(|(&(i, k), &e)| (i, k, e)).collect();
        triples.serialize(serializer)
    }
}

/// Integers `c_{ij} in {0, 1}` for `i != j` with `c_{ij} + c_{ji} = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignConvention {
    rank: usize,
    c: BTreeMap<(usize, usize), i64>,
}

impl SignConvention {
    /// `c_{ij} = 1` iff `i < j`.
    pub fn ascending(rank: usize) -> Self {
        Self::indicator(rank, |i, j| i < j)
    }

    /// `c_{ij} = 1` iff `i > j`.
    pub fn descending(rank: usize) -> Self {
        Self::indicator(rank, |i, j| i > j)
    }

    fn indicator(rank: usize, pred: impl Fn(usize, usize) -> bool) -> Self {
        let mut c = BTreeMap::new();
        for i in 1..=rank {
            for j in 1..=rank {
                if i != j {
                    c.insert((i, j), i64::from(pred(i, j)));
                }
            }
        }
        Self { rank, c }
    }

    pub fn from_map(rank: usize, c: BTreeMap<(usize, usize), i64>) -> Result<Self> {
        for i in 1..=rank {
            for j in 1..=rank {
                if i == j {
                    continue;
                }
                let (Some(&cij), Some(&cji)) = (c.get(&(i, j)), c.get(&(j, i))) else {
                    return Err(Error::InvalidParams(format!(
                        "c_{{{i},{j}}} or c_{{{j},{i}}} is missing"
                    )));
                };
                if !matches!(cij, 0 | 1) || cij + cji != 1 {
                    return Err(Error::InvalidParams(format!(
                        "need c_{{{i},{j}}} + c_{{{j},{i}}} = 1 with values in {{0, 1}}, got {cij} and {cji}"
                    )));
                }
            }
        }
        if c.keys()
            .any(|&(i, j)| i == j || i == 0 || j == 0 || i > rank || j > rank)
        {
            return Err(Error::InvalidParams("convention has entries outside 1..=rank".into()));
        }
        Ok(Self { rank, c })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.c[&(i, j)]
    }
}

/// `sum_k y_i(k)` for `i = 1..=rank`, the coefficients of `omega_i`.
pub fn monomial_wt(m: &NakajimaMonomial, rank: usize) -> Vec<i64> {
    (1..=rank).map(|i| m.row(i).map(|(_, e)| e).sum()).collect()
}

/// `(phi_l, n_f)`: the maximum of the prefix sums `sum_{k <= n} y_l(k)` and
/// the smallest `n` attaining it (`None` when the maximum is the empty sum).
fn phi_and_nf(m: &NakajimaMonomial, l: usize) -> (i64, Option<i64>) {
    let (mut best, mut at, mut acc) = (0, None, 0);
    for (k, e) in m.row(l) {
        acc += e;
        if acc > best {
            best = acc;
            at = Some(k);
        }
    }
    (best, at)
}

/// `(eps_l, n_e)`: the maximum of `-sum_{k > n} y_l(k)` and the largest `n`
/// attaining it (`None` when it is attained only for `n` past the support).
fn eps_and_ne(m: &NakajimaMonomial, l: usize) -> (i64, Option<i64>) {
    let support: Vec<(i64, i64)> = m.row(l).collect();
    let (mut best, mut at, mut acc) = (0, None, 0);
    for &(k, e) in support.iter().rev() {
        acc -= e;
        if acc > best {
            best = acc;
            at = Some(k - 1);
        }
    }
    (best, at)
}

pub fn monomial_phi(m: &NakajimaMonomial, l: usize) -> u32 {
    phi_and_nf(m, l).0 as u32
}

pub fn monomial_eps(m: &NakajimaMonomial, l: usize) -> u32 {
    eps_and_ne(m, l).0 as u32
}

/// The position `n_f^l` at which `f_l` acts, if `phi_l > 0`.
pub fn monomial_nf(m: &NakajimaMonomial, l: usize) -> Option<i64> {
    phi_and_nf(m, l).1
}

/// The position `n_e^l` at which `e_l` acts, if `eps_l > 0`.
pub fn monomial_ne(m: &NakajimaMonomial, l: usize) -> Option<i64> {
    eps_and_ne(m, l).1
}

/// `A_l(k)` under the given convention.
pub fn root_monomial(l: usize, k: i64, conv: &SignConvention) -> NakajimaMonomial {
    let mut a = NakajimaMonomial::from_exponents([((l, k), 1), ((l, k + 1), 1)]);
    for i in (1..=conv.rank()).filter(|&i| i != l) {
        let a_il = classical_cartan(i, l);
        if a_il != 0 {
            a.bump((i, k + conv.get(i, l)), a_il);
        }
    }
    a
}

pub fn monomial_f(m: &NakajimaMonomial, l: usize, conv: &SignConvention) -> Option<NakajimaMonomial> {
    monomial_nf(m, l).map(|k| m.mul(&root_monomial(l, k, conv).pow(-1)))
}

pub fn monomial_e(m: &NakajimaMonomial, l: usize, conv: &SignConvention) -> Option<NakajimaMonomial> {
    monomial_ne(m, l).map(|k| m.mul(&root_monomial(l, k, conv)))
}

/// The finite subcrystal of monomials reachable from a list of seeds.
#[derive(Clone, Debug)]
pub struct MonomialCrystal {
    pub convention: SignConvention,
    pub seeds: Vec<NakajimaMonomial>,
}

impl MonomialCrystal {
    pub fn new(convention: SignConvention, seeds: Vec<NakajimaMonomial>) -> Self {
        Self { convention, seeds }
    }
}

impl Crystal for MonomialCrystal {
    type Element = NakajimaMonomial;

    fn rank(&self) -> usize {
        self.convention.rank()
    }

    /// Classical colors only: monomials carry no color `0`.
    fn colors(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank()
    }

    fn elements_capped(&self, limit: usize) -> Result<Vec<NakajimaMonomial>> {
        let mut seen: HashSet<NakajimaMonomial> = self.seeds.iter().cloned().collect();
        let mut queue: VecDeque<NakajimaMonomial> = self.seeds.iter().cloned().collect();
        while let Some(m) = queue.pop_front() {
            for l in self.colors() {
                for next in [self.f(&m, l), self.e(&m, l)].into_iter().flatten() {
                    if seen.insert(next.clone()) {
                        if seen.len() > limit {
                            return Err(Error::SizeLimitExceeded { limit });
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
        let mut out: Vec<NakajimaMonomial> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    fn e(&self, x: &NakajimaMonomial, l: usize) -> Option<NakajimaMonomial> {
        monomial_e(x, l, &self.convention)
    }

    fn f(&self, x: &NakajimaMonomial, l: usize) -> Option<NakajimaMonomial> {
        monomial_f(x, l, &self.convention)
    }

    fn eps(&self, x: &NakajimaMonomial, l: usize) -> u32 {
        monomial_eps(x, l)
    }

    fn phi(&self, x: &NakajimaMonomial, l: usize) -> u32 {
        monomial_phi(x, l)
    }

    fn weight(&self, x: &NakajimaMonomial) -> AffineWeight {
        AffineWeight::from_classical(&monomial_wt(x, self.rank()))
    }
}

/// `Ψ(B) = Y_1(1)^{sum_j b_{j,n} - s} prod_{k=0}^{n-r} Y_1(k)^{b_{1,n-k}}
/// Y_2(k)^{b_{2,n-k}} Y_2(k+1)^{-b_{1,n-k}}`. Column 2 is read as zero when
/// `r = 1`.
pub fn psi_embedding(b: &KRPattern) -> NakajimaMonomial {
    let params = b.params();
    let (n, r) = (params.n(), params.r());
    let corner: i64 = (1..=r).map(|j| i64::from(b.get(j, n))).sum();
    let mut m = NakajimaMonomial::from_exponents([((1, 1), corner - i64::from(params.s()))]);
    for k in 0..=(n - r) {
        let q = n - k;
        let (b1, b2) = (i64::from(b.get_or_zero(1, q)), i64::from(b.get_or_zero(2, q)));
        let k = k as i64;
        m.bump((1, k), b1);
        m.bump((2, k), b2);
        m.bump((2, k + 1), -b1);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::match_components;
    use crate::pattern::{enumerate_crystal, KRParams};
    use crate::tensor::TensorCrystal;

    #[test]
    fn trivial_statistics() {
        let one = NakajimaMonomial::one();
        assert_eq!(monomial_wt(&one, 2), vec![0, 0]);
        assert_eq!((monomial_phi(&one, 1), monomial_eps(&one, 1)), (0, 0));
        let y = NakajimaMonomial::y(1, 0);
        assert_eq!((monomial_phi(&y, 1), monomial_eps(&y, 1)), (1, 0));
        assert_eq!(monomial_wt(&y, 2), vec![1, 0]);
        let conv = SignConvention::ascending(2);
        assert_eq!(monomial_f(&one, 1, &conv), None);
        assert_eq!(monomial_e(&y, 1, &conv), None);
    }

    #[test]
    fn brute_force_string_statistics() {
        // Y_1(0) Y_1(1)^{-1}: prefix sums 1, 0; suffix negatives 0, 1.
        let m = NakajimaMonomial::from_exponents([((1, 0), 1), ((1, 1), -1)]);
        assert_eq!((monomial_phi(&m, 1), monomial_eps(&m, 1)), (1, 1));
        assert_eq!((monomial_nf(&m, 1), monomial_ne(&m, 1)), (Some(0), Some(0)));
        let m = NakajimaMonomial::from_exponents([((2, -3), -2), ((2, 1), 3), ((2, 4), -1), ((2, 6), 2)]);
        let ks: Vec<i64> = (-6..10).collect();
        let prefix = |n: i64| -> i64 { m.row(2).filter(|&(k, _)| k <= n).map(|(_, e)| e).sum() };
        let suffix = |n: i64| -> i64 { -m.row(2).filter(|&(k, _)| k > n).map(|(_, e)| e).sum::<i64>() };
        let phi = ks.iter().map(|&n| prefix(n)).max().unwrap().max(0);
        let eps = ks.iter().map(|&n| suffix(n)).max().unwrap().max(0);
        assert_eq!(
            (i64::from(monomial_phi(&m, 2)), i64::from(monomial_eps(&m, 2))),
            (phi, eps)
        );
        assert_eq!((phi, eps), (2, 0));
        assert_eq!(monomial_nf(&m, 2), ks.iter().copied().find(|&n| prefix(n) == phi));
        assert_eq!(monomial_ne(&m, 2), None);
        let m = m.mul(&NakajimaMonomial::from_exponents([((2, 8), -3)]));
        // suffix negatives from the right: 3 for 6 <= n < 8, 1, 2, -1, 1
        assert_eq!(monomial_eps(&m, 2), 3);
        assert_eq!(monomial_ne(&m, 2), Some(7));
    }

    #[test]
    fn convention_validation() {
        let mut c = BTreeMap::from([((1, 2), 1), ((2, 1), 0)]);
        assert!(SignConvention::from_map(2, c.clone()).is_ok());
        c.insert((2, 1), 1);
        assert!(SignConvention::from_map(2, c).is_err());
        assert_eq!(SignConvention::ascending(3).get(1, 3), 1);
        assert_eq!(SignConvention::descending(3).get(1, 3), 0);
    }

    #[test]
    fn e_inverts_f() {
        let conv = SignConvention::ascending(3);
        let seed = NakajimaMonomial::from_exponents([((1, 0), 2), ((2, 1), -1), ((2, 3), 2), ((3, -1), 1)]);
        let mut stack = vec![seed];
        let mut seen = HashSet::new();
        while let Some(m) = stack.pop() {
            if !seen.insert(m.clone()) || seen.len() > 500 {
                continue;
            }
            for l in 1..=3 {
                if let Some(next) = monomial_f(&m, l, &conv) {
                    assert_eq!(monomial_e(&next, l, &conv).as_ref(), Some(&m));
                    assert_eq!(monomial_phi(&next, l) + 1, monomial_phi(&m, l));
                    stack.push(next);
                }
            }
        }
    }

    /// A dominant monomial generates the highest weight crystal of its weight,
    /// here compared with the classical component of `0 ⊗ 0` in
    /// `B^{1,a} ⊗ B^{2,b}`, under either convention.
    #[test]
    fn dominant_components_are_highest_weight_crystals() {
        for (a, b) in [(1, 1), (1, 2), (2, 1), (3, 1)] {
            let target = TensorCrystal::pair(KRParams::new(2, 1, a).unwrap(), KRParams::new(2, 2, b).unwrap()).unwrap();
            let top = NakajimaMonomial::from_exponents([((1, 0), i64::from(a)), ((2, 0), i64::from(b))]);
            for conv in [SignConvention::ascending(2), SignConvention::descending(2)] {
                let crystal = MonomialCrystal::new(conv, vec![top.clone()]);
                assert!(crystal.is_classical_highest_weight(&top));
                let size = crystal.elements().unwrap().len();
                let map = match_components(&crystal, &top, &target, &target.zero(), &[1, 2]).unwrap();
                assert_eq!(map.len(), size);
            }
        }
    }

    #[test]
    fn psi_of_zero() {
        let z = KRPattern::zero(KRParams::new(4, 2, 3).unwrap());
        assert_eq!(psi_embedding(&z), NakajimaMonomial::from_exponents([((1, 1), -3)]));
    }

    #[test]
    fn psi_intertwines_colors_zero_and_one() {
        let conv = SignConvention::descending(2);
        for (n, r, s) in [(2, 2, 2), (3, 2, 2), (4, 3, 2)] {
            for x in enumerate_crystal(KRParams::new(n, r, s).unwrap()).unwrap() {
                let m = psi_embedding(&x);
                assert_eq!(monomial_phi(&m, 1), x.get(1, n));
                for (l, ml) in [(0, 1), (1, 2)] {
                    assert_eq!(
                        (monomial_phi(&m, ml), monomial_eps(&m, ml)),
                        (x.phi(l), x.eps(l)),
                        "{x} color {l}"
                    );
                    assert_eq!(x.f(l).map(|y| psi_embedding(&y)), monomial_f(&m, ml, &conv));
                    assert_eq!(x.e(l).map(|y| psi_embedding(&y)), monomial_e(&m, ml, &conv));
                }
                if x.phi(1) > 0 {
                    let p = x.pivot(1).unwrap().lowering() as i64;
                    assert_eq!(monomial_nf(&m, 2), Some(n as i64 - p));
                }
                if x.eps(1) > 0 {
                    let q = x.pivot(1).unwrap().raising() as i64;
                    assert_eq!(monomial_ne(&m, 2), Some(n as i64 - q));
                }
            }
        }
    }
}
