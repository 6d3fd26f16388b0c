//! Perfectness of `B^{r,l}`, the extremal elements `b_Λ`, `b^Λ` and
//! ground-state paths.
//!
//! For a level `l` dominant weight `Λ = (a_0, ..., a_n)`, `b_Λ` is the unique
//! element whose `eps`-profile is `Λ` and `b^Λ` the unique one whose
//! `phi`-profile is `Λ`. In the polytope model both are read off `Λ` cell by
//! cell: `(b_Λ)_{p,q} = a_{p+q-r}` and `(b^Λ)_{p,q} = a_{(p+q) mod (n+1)}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::crystal::{Crystal, KRCrystal};
use crate::error::{Error, Result};
use crate::graph::{build_graph, CrystalGraph};
use crate::pattern::{KRParams, KRPattern};
use crate::tensor::TensorCrystal;
use crate::weight::{classical_weight, root_coordinates_scaled};

/// `Λ = sum a_i Λ_i`, stored as `(a_0, ..., a_n)`. All colabels are 1, so the
/// level is the coefficient sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DominantWeight {
    coeffs: Vec<u32>,
}

impl DominantWeight {
    pub fn new(coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidParams(format!(
                "a dominant weight needs n + 1 >= 2 coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self { coeffs })
    }

    /// `l Λ_i`.
    pub fn fundamental_multiple(n: usize, i: usize, level: u32) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[i] = level;
        Self { coeffs }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn level(&self) -> u32 {
        self.coeffs.iter().sum()
    }

    /// `(a_r, ..., a_n, a_0, ..., a_{r-1})`.
    pub fn rotate(&self, r: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        let shift = r % coeffs.len();
        coeffs.rotate_left(shift);
        Self { coeffs }
    }

    /// Every dominant weight of the given level, in lexicographic order.
    pub fn all_of_level(n: usize, level: u32) -> Vec<Self> {
        fn go(prefix: &mut Vec<u32>, slots: usize, left: u32, out: &mut Vec<DominantWeight>) {
            if slots == 1 {
                prefix.push(left);
                out.push(DominantWeight { coeffs: prefix.clone() });
                prefix.pop();
                return;
            }
            for a in 0..=left {
                prefix.push(a);
                go(prefix, slots - 1, left - a, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), n + 1, level, &mut out);
        out
    }

    fn check_level(&self, params: KRParams) -> Result<()> {
        if self.n() != params.n() {
            return Err(Error::RankMismatch(self.n(), params.n()));
        }
        if self.level() != params.s() {
            return Err(Error::LevelMismatch {
                expected: params.s(),
                found: self.level(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DominantWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("coefficient {part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

fn pattern_from_rule(params: KRParams, rule: impl Fn(usize, usize) -> u32) -> Result<KRPattern> {
    let (n, r) = (params.n(), params.r());
    let cells = (r..=n)
        .flat_map(|q| (1..=r).map(move |p| (p, q)))
        .map(|(p, q)| rule(p, q))
        .collect();
    KRPattern::from_cells(params, cells)
}

/// `b_Λ`, with entries `a_{p+q-r}`.
pub fn b_lower(weight: &DominantWeight, params: KRParams) -> Result<KRPattern> {
    weight.check_level(params)?;
    let r = params.r();
    pattern_from_rule(params, |p, q| weight.coeffs[p + q - r])
}

/// `b^Λ`, with entries `a_{(p+q) mod (n+1)}`.
pub fn b_upper(weight: &DominantWeight, params: KRParams) -> Result<KRPattern> {
    weight.check_level(params)?;
    let n = params.n();
    pattern_from_rule(params, |p, q| weight.coeffs[(p + q) % (n + 1)])
}

/// Elements whose `eps`-profile (resp. `phi`-profile) sums to the level,
/// grouped by profile, from string lengths measured on a crystal graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MinimalElements {
    pub by_eps: BTreeMap<Vec<u32>, Vec<usize>>,
    pub by_phi: BTreeMap<Vec<u32>, Vec<usize>>,
}

/// Scans a crystal graph for elements of minimal profile sum `level`.
/// Works for any graph, including hand-made ones of other affine types as
/// long as every colabel is 1.
pub fn minimal_elements<V>(graph: &CrystalGraph<V>, level: u32) -> Option<MinimalElements> {
    let lengths = graph.string_lengths()?;
    let mut out = MinimalElements::default();
    for (v, per_color) in lengths.iter().enumerate() {
        let eps: Vec<u32> = per_color.iter().map(|&(e, _)| e).collect();
        let phi: Vec<u32> = per_color.iter().map(|&(_, p)| p).collect();
        if eps.iter().sum::<u32>() == level {
            out.by_eps.entry(eps).or_default().push(v);
        }
        if phi.iter().sum::<u32>() == level {
            out.by_phi.entry(phi).or_default().push(v);
        }
    }
    Some(out)
}

/// Finds the first level `l` dominant weight whose minimal element is missing
/// or not unique, on either side.
pub fn profile_uniqueness_failure<V>(graph: &CrystalGraph<V>, level: u32) -> Option<String> {
    let Some(minimal) = minimal_elements(graph, level) else {
        return Some("crystal graph operators are not partial bijections".into());
    };
    let n = graph.colors - 1;
    for weight in DominantWeight::all_of_level(n, level) {
        for (side, table) in [("b_Λ", &minimal.by_eps), ("b^Λ", &minimal.by_phi)] {
            match table.get(weight.coeffs()).map(Vec::len).unwrap_or(0) {
                1 => {}
                0 => return Some(format!("no {side} for Λ = {weight}")),
                k => return Some(format!("{k} candidates for {side} with Λ = {weight}")),
            }
        }
    }
    None
}

/// Candidates for `b_Λ` and `b^Λ` respectively.
pub type ExtremalCandidates = (Vec<KRPattern>, Vec<KRPattern>);

/// Exhaustive search for `b_Λ` and `b^Λ` by profile, keyed by `Λ`.
pub fn search_extremal(params: KRParams) -> Result<HashMap<DominantWeight, ExtremalCandidates>> {
    let level = params.s();
    let mut out: HashMap<DominantWeight, ExtremalCandidates> = HashMap::new();
    for x in KRCrystal(params).elements()? {
        let (eps, phi) = (x.eps_profile(), x.phi_profile());
        if eps.iter().sum::<u32>() == level {
            out.entry(DominantWeight { coeffs: eps }).or_default().0.push(x.clone());
        }
        if phi.iter().sum::<u32>() == level {
            out.entry(DominantWeight { coeffs: phi }).or_default().1.push(x);
        }
    }
    Ok(out)
}

/// Weights for which a formula disagrees with the search, as readable lines.
pub fn extremal_formula_mismatches(params: KRParams) -> Result<Vec<String>> {
    let found = search_extremal(params)?;
    let mut bad = Vec::new();
    for weight in DominantWeight::all_of_level(params.n(), params.s()) {
        let (lower, upper) = found.get(&weight).cloned().unwrap_or_default();
        let formula = (b_lower(&weight, params)?, b_upper(&weight, params)?);
        if lower != [formula.0.clone()] {
            bad.push(format!("b_Λ for {weight}: formula {}, search {lower:?}", formula.0));
        }
        if upper != [formula.1.clone()] {
            bad.push(format!("b^Λ for {weight}: formula {}, search {upper:?}", formula.1));
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub condition: u8,
    pub description: &'static str,
    pub passed: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectReport {
    pub params: KRParams,
    pub level: u32,
    pub cardinality: usize,
    pub conditions: Vec<ConditionResult>,
}

impl PerfectReport {
    pub fn is_perfect(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

/// Checks the five conditions for `B^{r,l}` to be perfect of level `l = s`.
pub fn check_perfect(params: KRParams) -> Result<PerfectReport> {
    let crystal = KRCrystal(params);
    let graph = build_graph(&crystal)?;
    let level = params.s();
    let n = params.n();
    let mut conditions = Vec::with_capacity(5);

    conditions.push(ConditionResult {
        condition: 1,
        description: "finite crystal of a finite-dimensional module",
        passed: graph.string_lengths().is_some(),
        witness: format!("{} elements, {} edges", graph.vertices.len(), graph.edges.len()),
    });

    let square = build_graph(&TensorCrystal::pair(params, params)?)?;
    let all_colors: Vec<usize> = (0..=n).collect();
    let pieces = square.components(&all_colors).len();
    conditions.push(ConditionResult {
        condition: 2,
        description: "B ⊗ B is connected",
        passed: pieces == 1,
        witness: format!("{} elements in {pieces} component(s)", square.vertices.len()),
    });

    let top = classical_weight(&KRPattern::zero(params));
    let mut at_top = Vec::new();
    let mut outside = None;
    for x in &graph.vertices {
        let wt = classical_weight(x);
        if wt == top {
            at_top.push(x.to_string());
        }
        let gap: Vec<i64> = top.iter().zip(&wt).map(|(a, b)| a - b).collect();
        let scaled = root_coordinates_scaled(&gap);
        if outside.is_none() && scaled.iter().any(|&c| c < 0 || c % (n as i64 + 1) != 0) {
            outside = Some(x.to_string());
        }
    }
    conditions.push(ConditionResult {
        condition: 3,
        description: "weights lie below λ_0 = s ω_r, attained once",
        passed: outside.is_none() && at_top.len() == 1,
        witness: match outside {
            Some(x) => format!("{x} is not below λ_0"),
            None => format!("λ_0 = {top:?} attained by {}", at_top.join(", ")),
        },
    });

    let lengths = graph.string_lengths().unwrap_or_default();
    let (min_level, argmin) = lengths
        .iter()
        .enumerate()
        .map(|(v, per_color)| (per_color.iter().map(|&(e, _)| e).sum::<u32>(), v))
        .min()
        .unwrap_or((0, 0));
    conditions.push(ConditionResult {
        condition: 4,
        description: "level of sum eps_i(b) Λ_i is at least l",
        passed: min_level >= level,
        witness: format!("minimum {min_level} at {}", graph.vertices[argmin]),
    });

    let failure = profile_uniqueness_failure(&graph, level);
    conditions.push(ConditionResult {
        condition: 5,
        description: "unique b_Λ and b^Λ for every Λ of level l",
        passed: failure.is_none(),
        witness: failure.unwrap_or_else(|| {
            format!(
                "{} weights of level {level}",
                DominantWeight::all_of_level(n, level).len()
            )
        }),
    });

    Ok(PerfectReport {
        params,
        level,
        cardinality: graph.vertices.len(),
        conditions,
    })
}

/// The hand-made level-1 crystal `A →1 B →2 C →1 D →0 A` with colors `0, 1, 2`.
/// Its minimal elements are not unique: both `B` and `D` have `eps`-profile `Λ_1`.
pub fn four_cycle_control() -> CrystalGraph<char> {
    CrystalGraph::from_edges(
        vec!['A', 'B', 'C', 'D'],
        vec![(0, 1, 1), (1, 2, 2), (2, 1, 3), (3, 0, 0)],
        3,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroundStatePath {
    pub params: KRParams,
    pub weights: Vec<DominantWeight>,
    pub elements: Vec<KRPattern>,
}

impl GroundStatePath {
    /// Smallest `k > 0` with `Λ_k = Λ_0`; `(n + 1) / gcd(n + 1, r)` divides it.
    pub fn period(&self) -> usize {
        let first = &self.weights[0];
        let n1 = self.params.n() + 1;
        (1..=n1)
            .find(|&k| &first.rotate(k * self.params.r()) == first)
            .unwrap_or(n1)
    }
}

/// `Λ_{k+1}` is `Λ_k` rotated left by `r`, and `b_k = b^{Λ_k}`. Fails if the
/// rotation ever disagrees with the `eps`-profile of `b_k`.
pub fn ground_state_path(weight: &DominantWeight, params: KRParams, length: usize) -> Result<GroundStatePath> {
    weight.check_level(params)?;
    let mut weights = Vec::with_capacity(length);
    let mut elements = Vec::with_capacity(length);
    let mut current = weight.clone();
    for k in 0..length {
        let b = b_upper(&current, params)?;
        let next = current.rotate(params.r());
        if b.eps_profile() != next.coeffs {
            return Err(Error::OracleFailure(format!(
                "step {k}: eps-profile of b^Λ for Λ = {current} is {:?}, rotation gives {next}",
                b.eps_profile()
            )));
        }
        weights.push(current);
        elements.push(b);
        current = next;
    }
    Ok(GroundStatePath {
        params,
        weights,
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, r: usize, s: u32) -> KRParams {
        KRParams::new(n, r, s).unwrap()
    }

    #[test]
    fn vector_representation_is_perfect() {
        let report = check_perfect(params(2, 1, 1)).unwrap();
        assert_eq!(report.cardinality, 3);
        assert!(report.is_perfect(), "{report:?}");
    }

    #[test]
    fn four_cycle_is_not_perfect() {
        let g = four_cycle_control();
        let failure = profile_uniqueness_failure(&g, 1).unwrap();
        assert!(failure.contains("(0,1,0)"), "{failure}");
        let minimal = minimal_elements(&g, 1).unwrap();
        assert_eq!(minimal.by_eps[&vec![0, 1, 0]], vec![1, 3]);
    }

    #[test]
    fn level_mismatch() {
        let w: DominantWeight = "1,0,1".parse().unwrap();
        assert_eq!(
            b_lower(&w, params(2, 1, 3)),
            Err(Error::LevelMismatch { expected: 3, found: 2 })
        );
        assert!(b_upper(&w, params(3, 1, 2)).is_err());
    }

    #[test]
    fn formula_layouts() {
        let w = DominantWeight::new(vec![1, 2, 0, 3, 1]).unwrap();
        let p = params(4, 2, 7);
        let lower = b_lower(&w, p).unwrap();
        assert_eq!(lower.rows()[0], vec![2, 0]);
        assert_eq!(lower.rows()[2], vec![3, 1]);
        let upper = b_upper(&w, p).unwrap();
        assert_eq!(upper.rows()[2], vec![1, 2]);
        assert_eq!(lower.eps_profile(), w.coeffs());
        assert_eq!(upper.phi_profile(), w.coeffs());
    }

    #[test]
    fn formulas_match_search() {
        for (n, r, s) in [(2, 1, 2), (3, 2, 2), (4, 3, 1), (3, 3, 3)] {
            assert_eq!(
                extremal_formula_mismatches(params(n, r, s)).unwrap(),
                Vec::<String>::new()
            );
        }
    }

    #[test]
    fn ground_state_path_last_node() {
        let w = DominantWeight::new(vec![2, 0, 1, 0]).unwrap();
        let path = ground_state_path(&w, params(3, 3, 3), 5).unwrap();
        assert_eq!(path.weights[1].coeffs(), &[0, 2, 0, 1]);
        assert_eq!(path.elements[0].rows(), vec![vec![2, 0, 1]]);
        assert_eq!(path.elements[1].rows(), vec![vec![0, 2, 0]]);
        assert_eq!(path.weights[4], w);
        assert_eq!(path.period(), 4);
    }

    #[test]
    fn one_hot_rotation() {
        let w = DominantWeight::fundamental_multiple(4, 0, 2);
        let path = ground_state_path(&w, params(4, 2, 2), 6).unwrap();
        for (k, lk) in path.weights.iter().enumerate() {
            let expect = DominantWeight::fundamental_multiple(4, (5 - (2 * k) % 5) % 5, 2);
            assert_eq!(lk, &expect);
        }
    }

    #[test]
    fn parse_and_enumerate() {
        let w: DominantWeight = "(0, 3,1)".parse().unwrap();
        assert_eq!(w.to_string(), "(0,3,1)");
        assert!("4".parse::<DominantWeight>().is_err());
        assert!("1,x".parse::<DominantWeight>().is_err());
        assert_eq!(DominantWeight::all_of_level(2, 2).len(), 6);
    }
}
