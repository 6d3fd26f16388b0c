//! Exhaustive sweeps comparing each closed formula with its brute-force
//! counterpart, plus structural invariants. Each suite runs for one rank `n`
//! and all levels `s <= max_s`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::crystal::{Crystal, KRCrystal};
use crate::energy::{local_energy, local_energy_hw, local_energy_oracle, EnergyMethod, GlobalEnergy};
use crate::error::{Error, Result};
use crate::graph::build_graph;
use crate::nakajima::{
    monomial_e, monomial_eps, monomial_f, monomial_ne, monomial_nf, monomial_phi, psi_embedding, SignConvention,
};
use crate::pattern::{enumerate_crystal, KRParams, KRPattern};
use crate::perfect::{check_perfect, extremal_formula_mismatches, ground_state_path, DominantWeight};
use crate::regularity::check_rank2;
use crate::rmatrix::{
    highest_weight_elements, rmatrix, rmatrix_on_hw, rmatrix_oracle, HighestWeightDatum, HighestWeightShape,
};
use crate::tensor::{TensorCrystal, TensorElement};
use crate::weight::{affine_weight, classical_weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Structure,
    Regularity,
    Nakajima,
    Cardinality,
    Census,
    ShapeLaw,
    Rmatrix,
    Energy,
    Perfect,
    Gsp,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Structure,
        Suite::Regularity,
        Suite::Nakajima,
        Suite::Cardinality,
        Suite::Census,
        Suite::ShapeLaw,
        Suite::Rmatrix,
        Suite::Energy,
        Suite::Perfect,
        Suite::Gsp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Regularity => "regularity",
            Suite::Nakajima => "nakajima",
            Suite::Cardinality => "cardinality",
            Suite::Census => "census",
            Suite::ShapeLaw => "shape-law",
            Suite::Rmatrix => "rmatrix",
            Suite::Energy => "energy",
            Suite::Perfect => "perfect",
            Suite::Gsp => "gsp",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// At most this many failure messages are kept; the count is always exact.
const KEPT_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub max_s: u32,
    pub checks: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
    pub note: Option<String>,
}

impl SuiteReport {
    fn new(suite: Suite, n: usize, max_s: u32) -> Self {
        Self {
            suite,
            n,
            max_s,
            checks: 0,
            failure_count: 0,
            failures: Vec::new(),
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(detail());
        }
    }

    fn fail(&mut self, detail: String) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(detail);
        }
    }

    fn absorb<T>(&mut self, result: Result<T>) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.fail(e.to_string());
                None
            }
        }
    }
}

pub fn run_suite(suite: Suite, n: usize, max_s: u32) -> Result<SuiteReport> {
    if n == 0 || max_s == 0 {
        return Err(Error::InvalidParams("need n >= 1 and max_s >= 1".into()));
    }
    let mut report = SuiteReport::new(suite, n, max_s);
    match suite {
        Suite::Structure => structure(&mut report)?,
        Suite::Regularity => regularity(&mut report)?,
        Suite::Nakajima => nakajima(&mut report)?,
        Suite::Cardinality => cardinality(&mut report)?,
        Suite::Census => census(&mut report)?,
        Suite::ShapeLaw => shape_law(&mut report)?,
        Suite::Rmatrix => rmatrix_suite(&mut report)?,
        Suite::Energy => energy(&mut report)?,
        Suite::Perfect => perfect(&mut report)?,
        Suite::Gsp => gsp(&mut report)?,
    }
    Ok(report)
}

fn single_params(n: usize, max_s: u32) -> impl Iterator<Item = KRParams> {
    (1..=n).flat_map(move |r| (1..=max_s).map(move |s| KRParams::new(n, r, s).expect("valid range")))
}

fn pair_params(n: usize, max_s: u32) -> Vec<(KRParams, KRParams)> {
    let singles: Vec<KRParams> = single_params(n, max_s).collect();
    singles
        .iter()
        .flat_map(|&p| singles.iter().map(move |&q| (p, q)))
        .collect()
}

fn string_length(x: &KRPattern, l: usize, step: impl Fn(&KRPattern, usize) -> Option<KRPattern>) -> u32 {
    let mut k = 0;
    let mut y = x.clone();
    while let Some(z) = step(&y, l) {
        y = z;
        k += 1;
    }
    k
}

fn structure(report: &mut SuiteReport) -> Result<()> {
    let n = report.n;
    for params in single_params(n, report.max_s) {
        let elements = enumerate_crystal(params)?;
        let members: HashSet<&KRPattern> = elements.iter().collect();
        for x in &elements {
            let classical = classical_weight(x);
            let affine = affine_weight(x);
            let mut total = 0i64;
            for l in 0..=n {
                let (phi, eps) = (x.phi(l), x.eps(l));
                let diff = i64::from(phi) - i64::from(eps);
                total += diff;
                report.check(diff == affine[l], || {
                    format!("{params} {x}: phi_{l} - eps_{l} = {diff}, pairing {}", affine[l])
                });
                if l > 0 {
                    report.check(diff == classical[l - 1], || {
                        format!("{params} {x}: classical pairing at {l}")
                    });
                }
                if let Some(y) = x.f(l) {
                    report.check(members.contains(&y), || {
                        format!("{params}: f_{l}({x}) = {y} left the polytope")
                    });
                    report.check(y.e(l).as_ref() == Some(x), || {
                        format!("{params}: e_{l} f_{l} {x} != {x}")
                    });
                }
                if let Some(y) = x.e(l) {
                    report.check(members.contains(&y), || {
                        format!("{params}: e_{l}({x}) = {y} left the polytope")
                    });
                    report.check(y.f(l).as_ref() == Some(x), || {
                        format!("{params}: f_{l} e_{l} {x} != {x}")
                    });
                }
                let down = string_length(x, l, |y, l| y.f(l));
                let up = string_length(x, l, |y, l| y.e(l));
                report.check((down, up) == (phi, eps), || {
                    format!("{params} {x}: color {l} strings ({down}, {up}) vs ({phi}, {eps})")
                });
            }
            report.check(total == 0, || format!("{params} {x}: pairings sum to {total}"));
            for l in 2..n {
                let ff = (x.f(0).and_then(|y| y.f(l)), x.f(l).and_then(|y| y.f(0)));
                let ee = (x.e(0).and_then(|y| y.e(l)), x.e(l).and_then(|y| y.e(0)));
                report.check(ff.0 == ff.1 && ee.0 == ee.1, || {
                    format!("{params} {x}: color 0 and {l} do not commute")
                });
            }
        }
    }
    Ok(())
}

fn regularity(report: &mut SuiteReport) -> Result<()> {
    let n = report.n;
    if n < 2 {
        report.note = Some("rank-2 subdiagrams of A_1^(1) are affine; nothing to certify".into());
        return Ok(());
    }
    for params in single_params(n, report.max_s) {
        let graph = build_graph(&KRCrystal(params))?;
        for i in 0..=n {
            for j in i + 1..=n {
                let result = check_rank2(&graph, (i, j))?;
                report.check(result.is_regular(), || {
                    format!("{params} colors ({i},{j}): {:?}", result.violations)
                });
            }
        }
    }
    Ok(())
}

fn nakajima(report: &mut SuiteReport) -> Result<()> {
    let n = report.n;
    if n < 2 {
        report.note = Some("the embedding reads two columns, so it needs r >= 2".into());
        return Ok(());
    }
    report.note = Some("checked for r >= 2; r = 1 is covered by the regularity suite".into());
    let conv = SignConvention::descending(2);
    for params in single_params(n, report.max_s).filter(|p| p.r() >= 2) {
        for x in enumerate_crystal(params)? {
            let m = psi_embedding(&x);
            report.check(monomial_phi(&m, 1) == x.get(1, n), || {
                format!("{params} {x}: phi_1(Ψ) != b_(1,n)")
            });
            for (l, ml) in [(0, 1), (1, 2)] {
                report.check(
                    (monomial_phi(&m, ml), monomial_eps(&m, ml)) == (x.phi(l), x.eps(l)),
                    || format!("{params} {x}: string lengths of color {l} and monomial color {ml} differ"),
                );
                report.check(x.f(l).map(|y| psi_embedding(&y)) == monomial_f(&m, ml, &conv), || {
                    format!("{params} {x}: Ψ f_{l} != f_{ml} Ψ")
                });
                report.check(x.e(l).map(|y| psi_embedding(&y)) == monomial_e(&m, ml, &conv), || {
                    format!("{params} {x}: Ψ e_{l} != e_{ml} Ψ")
                });
            }
            if x.phi(1) > 0 {
                let p = x.pivot(1)?.lowering() as i64;
                report.check(monomial_nf(&m, 2) == Some(n as i64 - p), || {
                    format!("{params} {x}: n_f != n - p")
                });
            }
            if x.eps(1) > 0 {
                let q = x.pivot(1)?.raising() as i64;
                report.check(monomial_ne(&m, 2) == Some(n as i64 - q), || {
                    format!("{params} {x}: n_e != n - q")
                });
            }
        }
    }
    Ok(())
}

/// Number of semistandard tableaux of rectangular shape with `rows` rows of
/// length `cols` and entries in `1..=alphabet`, counted column by column:
/// columns are strictly increasing `rows`-subsets, and adjacent columns must
/// be componentwise weakly increasing.
pub fn ssyt_rectangle_count(alphabet: usize, rows: usize, cols: usize) -> u64 {
    fn subsets(alphabet: usize, rows: usize) -> Vec<Vec<usize>> {
        fn go(start: usize, alphabet: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for v in start..=alphabet {
                cur.push(v);
                go(v + 1, alphabet, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(1, alphabet, rows, &mut Vec::new(), &mut out);
        out
    }
    let columns = subsets(alphabet, rows);
    if cols == 0 {
        return 1;
    }
    let mut ways = vec![1u64; columns.len()];
    for _ in 1..cols {
        ways = columns
            .iter()
            .map(|right| {
                columns
                    .iter()
                    .zip(&ways)
                    .filter(|(left, _)| left.iter().zip(right).all(|(a, b)| a <= b))
                    .map(|(_, w)| w)
                    .sum()
            })
            .collect();
    }
    ways.iter().sum()
}

fn cardinality(report: &mut SuiteReport) -> Result<()> {
    for params in single_params(report.n, report.max_s) {
        let found = enumerate_crystal(params)?.len() as u64;
        let expected = ssyt_rectangle_count(params.n() + 1, params.r(), params.s() as usize);
        report.check(found == expected, || {
            format!("{params}: {found} patterns, {expected} tableaux")
        });
    }
    Ok(())
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn census(report: &mut SuiteReport) -> Result<()> {
    for (p1, p2) in pair_params(report.n, report.max_s) {
        let product = TensorCrystal::pair(p1, p2)?;
        let mut scanned: Vec<TensorElement> = product
            .elements()?
            .into_iter()
            .filter(|x| x.is_classical_highest_weight())
            .collect();
        scanned.sort();
        let mut listed = highest_weight_elements(p1, p2)?;
        listed.sort();
        let shape = HighestWeightShape::new(p1, p2)?;
        let expected = binomial(u64::from(shape.s_min) + shape.k as u64 + 1, shape.k as u64 + 1);
        report.check(scanned.len() as u64 == expected, || {
            format!(
                "{p1} ⊗ {p2}: {} highest weight elements, expected {expected}",
                scanned.len()
            )
        });
        report.check(scanned == listed, || {
            format!("{p1} ⊗ {p2}: scanned and listed highest weight elements differ")
        });
    }
    Ok(())
}

fn shape_law(report: &mut SuiteReport) -> Result<()> {
    for (p1, p2) in pair_params(report.n, report.max_s) {
        let shape = HighestWeightShape::new(p1, p2)?;
        for x in highest_weight_elements(p1, p2)? {
            report.check(x.is_classical_highest_weight(), || format!("{x} is not highest weight"));
            let Some(y) = report.absorb(rmatrix_on_hw(&x)) else {
                continue;
            };
            let [a, _] = x.factors() else { unreachable!() };
            let [c, d] = y.factors() else { unreachable!() };
            report.check(y.shape() == vec![p2, p1], || format!("{x} ↦ {y} has the wrong shape"));
            report.check(d.is_zero(), || format!("{x} ↦ {y}: second factor is not 0"));
            report.check(y.is_classical_highest_weight(), || {
                format!("{x} ↦ {y} is not highest weight")
            });
            report.check(y.tensor_wt() == x.tensor_wt(), || {
                format!("{x} ↦ {y} changes the weight")
            });
            report.check(
                HighestWeightDatum::read(a, &shape) == HighestWeightDatum::read(c, &shape),
                || format!("{x} ↦ {y} changes the anti-diagonal"),
            );
            report.check(c.entry_sum() == a.entry_sum(), || {
                format!("{x} ↦ {y} has entries off the anti-diagonal")
            });
        }
    }
    Ok(())
}

/// The A_1 R-matrix for `s1 <= s2` on `A ⊗ B`.
pub fn rank_one_rmatrix(a: i64, b: i64, s1: i64, s2: i64) -> (i64, i64) {
    if a + b <= s1 {
        (a, b)
    } else if a + b <= s2 {
        (2 * a - s1 + b, s1 - a)
    } else {
        (a + s2 - s1, s1 - s2 + b)
    }
}

fn rmatrix_suite(report: &mut SuiteReport) -> Result<()> {
    for (p1, p2) in pair_params(report.n, report.max_s) {
        let Some(table) = report.absorb(rmatrix_oracle(p1, p2)) else {
            continue;
        };
        for (x, y) in &table.map {
            let Some(image) = report.absorb(rmatrix(x)) else {
                continue;
            };
            report.check(&image == y, || format!("σ({x}) = {image}, oracle {y}"));
            for (fx, fy) in [(x.tensor_f(0), image.tensor_f(0)), (x.tensor_e(0), image.tensor_e(0))] {
                let moved = fx.map(|z| rmatrix(&z)).transpose()?;
                report.check(moved == fy, || format!("σ does not commute with color 0 at {x}"));
            }
            if report.n == 1 && p1.s() <= p2.s() {
                let [a, b] = x.factors() else { unreachable!() };
                let [c, d] = image.factors() else { unreachable!() };
                let got = (i64::from(c.get(1, 1)), i64::from(d.get(1, 1)));
                let want = rank_one_rmatrix(
                    i64::from(a.get(1, 1)),
                    i64::from(b.get(1, 1)),
                    i64::from(p1.s()),
                    i64::from(p2.s()),
                );
                report.check(got == want, || format!("σ({x}) = {image}, three-case formula {want:?}"));
            }
        }
    }
    Ok(())
}

fn energy(report: &mut SuiteReport) -> Result<()> {
    for (p1, p2) in pair_params(report.n, report.max_s) {
        let Some(table) = report.absorb(local_energy_oracle(p1, p2)) else {
            continue;
        };
        for (x, &h) in &table.values {
            let Some(closed) = report.absorb(local_energy(x)) else {
                continue;
            };
            report.check(closed == h, || format!("H({x}): closed form {closed}, recursion {h}"));
            if x.is_classical_highest_weight() {
                let hw = local_energy_hw(x)?;
                report.check(hw == h, || format!("H({x}) on highest weight: {hw}, recursion {h}"));
            }
        }
    }
    // three factors at level 1: both evaluation methods, and classical invariance
    let n = report.n;
    let shapes: Vec<KRParams> = [1, n, 1]
        .iter()
        .zip([1, 1, report.max_s.min(2)])
        .map(|(&r, s)| KRParams::new(n, r, s).expect("valid"))
        .collect();
    let product = TensorCrystal::new(shapes)?;
    let mut closed = GlobalEnergy::new(EnergyMethod::ClosedForm);
    let mut oracle = GlobalEnergy::new(EnergyMethod::Oracle);
    for x in product.elements()? {
        let d = closed.evaluate(&x)?;
        let Some(od) = report.absorb(oracle.evaluate(&x)) else {
            continue;
        };
        report.check(d == od, || format!("D({x}): closed form {d}, oracle {od}"));
        for l in 1..=n {
            if let Some(y) = x.tensor_f(l) {
                let dy = closed.evaluate(&y)?;
                report.check(dy == d, || format!("D changes along f_{l} at {x}"));
            }
        }
    }
    Ok(())
}

fn perfect(report: &mut SuiteReport) -> Result<()> {
    for params in single_params(report.n, report.max_s) {
        let result = check_perfect(params)?;
        for c in &result.conditions {
            report.check(c.passed, || {
                format!("{params}: condition {} fails: {}", c.condition, c.witness)
            });
        }
        for mismatch in extremal_formula_mismatches(params)? {
            report.check(false, || format!("{params}: {mismatch}"));
        }
    }
    Ok(())
}

fn gsp(report: &mut SuiteReport) -> Result<()> {
    let n = report.n;
    for params in single_params(n, report.max_s) {
        let r = params.r();
        let expected_period = (n + 1) / gcd(n + 1, r);
        for weight in DominantWeight::all_of_level(n, params.s()) {
            let Some(path) = report.absorb(ground_state_path(&weight, params, 50)) else {
                continue;
            };
            report.check(expected_period.is_multiple_of(path.period()), || {
                format!(
                    "{params} Λ = {weight}: period {} does not divide {expected_period}",
                    path.period()
                )
            });
            if r == n {
                for (k, (lk, bk)) in path.weights.iter().zip(&path.elements).enumerate() {
                    let want: Vec<u32> = (0..=n)
                        .map(|j| weight.coeffs()[(j + n + 1 - k % (n + 1)) % (n + 1)])
                        .collect();
                    report.check(lk.coeffs() == want, || {
                        format!("{params} Λ_{k} = {lk}, expected {want:?}")
                    });
                    report.check(bk.rows() == vec![lk.coeffs()[..n].to_vec()], || {
                        format!("{params} b_{k} = {bk}, expected the row {:?}", &lk.coeffs()[..n])
                    });
                }
            }
        }
    }
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
