//! Rank-2 regularity of crystal graphs.
//!
//! For a pair of colors `J = {i, j}` every `J`-component must be the crystal
//! of an irreducible module of the rank-2 Levi type: `A1 x A1` when the nodes
//! are not adjacent in the affine Dynkin diagram, `A2` when they are. Each
//! component is certified by Stembridge's local axioms for simply-laced
//! crystals, plus a unique highest weight vertex and a vertex count equal to
//! the Weyl dimension of its highest weight.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::CrystalGraph;
use crate::weight::affine_cartan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankTwoType {
    A1xA1,
    A2,
}

impl RankTwoType {
    fn weyl_dimension(self, a: u64, b: u64) -> u64 {
        match self {
            RankTwoType::A1xA1 => (a + 1) * (b + 1),
            RankTwoType::A2 => (a + 1) * (b + 1) * (a + b + 2) / 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityViolation {
    pub component: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub colors: (usize, usize),
    pub cartan_type: RankTwoType,
    pub components: usize,
    pub violations: Vec<RegularityViolation>,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Like [`check_rank2`], but a failed certificate becomes `ReportedViolation`.
pub fn is_regular_rank2<V>(graph: &CrystalGraph<V>, colors: (usize, usize)) -> Result<RegularityReport> {
    let report = check_rank2(graph, colors)?;
    match report.violations.first() {
        None => Ok(report),
        Some(v) => Err(Error::ReportedViolation {
            colors,
            component: v.component.clone(),
            detail: v.detail.clone(),
        }),
    }
}

/// Checks every pair of distinct colors; stops at the first failing pair.
pub fn is_regular<V>(graph: &CrystalGraph<V>) -> Result<Vec<RegularityReport>> {
    let mut reports = Vec::new();
    for i in 0..graph.colors {
        for j in i + 1..graph.colors {
            reports.push(is_regular_rank2(graph, (i, j))?);
        }
    }
    Ok(reports)
}

pub fn check_rank2<V>(graph: &CrystalGraph<V>, (ci, cj): (usize, usize)) -> Result<RegularityReport> {
    let n = graph.colors.saturating_sub(1);
    if n < 2 {
        return Err(Error::IndexOutOfRange {
            l: ci,
            reason: "rank-2 subdiagrams of A_1^(1) are affine, not of finite type",
        });
    }
    if ci == cj || ci > n || cj > n {
        return Err(Error::IndexOutOfRange {
            l: ci.max(cj),
            reason: "need two distinct colors in 0..=n",
        });
    }
    let a_ij = affine_cartan(n, ci, cj);
    let cartan_type = if a_ij == 0 { RankTwoType::A1xA1 } else { RankTwoType::A2 };
    let mut report = RegularityReport {
        colors: (ci, cj),
        cartan_type,
        components: 0,
        violations: Vec::new(),
    };

    let all: Vec<usize> = (0..graph.vertices.len()).collect();
    let (Some((succ, pred)), Some(len)) = (graph.operator_tables(), graph.string_lengths()) else {
        report.violations.push(RegularityViolation {
            component: all,
            detail: "some color is not a partial bijection or has a cyclic string".into(),
        });
        return Ok(report);
    };

    let e = |l: usize, v: Option<usize>| v.and_then(|v| pred[l][v]);
    let f = |l: usize, v: Option<usize>| v.and_then(|v| succ[l][v]);
    let eps = |v: usize, l: usize| i64::from(len[v][l].0);
    let phi = |v: usize, l: usize| i64::from(len[v][l].1);

    let components = graph.components(&[ci, cj]);
    report.components = components.len();
    for comp in components {
        let mut problems: Vec<String> = Vec::new();
        for &v in &comp {
            for (a, b) in [(ci, cj), (cj, ci)] {
                // raising side
                if let Some(w) = e(a, Some(v)) {
                    let d_eps = eps(w, b) - eps(v, b);
                    let d_phi = phi(w, b) - phi(v, b);
                    if d_phi - d_eps != a_ij {
                        problems.push(format!("P3 fails at {v} for e_{a}, color {b}"));
                    }
                    if d_eps < 0 || d_phi > 0 {
                        problems.push(format!("P4 fails at {v} for e_{a}, color {b}"));
                    }
                }
                if let (Some(wa), Some(wb)) = (e(a, Some(v)), e(b, Some(v))) {
                    let d_ab = eps(wa, b) - eps(v, b);
                    let d_ba = eps(wb, a) - eps(v, a);
                    if d_ab == 0 {
                        let y1 = e(a, Some(wb));
                        let y2 = e(b, Some(wa));
                        match (y1, y2) {
                            (Some(y), Some(y2)) if y == y2 => {
                                let below = f(b, Some(y)).expect("e_b was applied");
                                if phi(y, a) - phi(below, a) != 0 {
                                    problems.push(format!("P5 (nabla) fails at {v} for ({a},{b})"));
                                }
                            }
                            _ => problems.push(format!("P5 fails at {v}: e_{a}e_{b} != e_{b}e_{a}")),
                        }
                    }
                    if d_ab == 1 && d_ba == 1 {
                        let y1 = e(a, e(b, e(b, Some(wa))));
                        let y2 = e(b, e(a, e(a, Some(wb))));
                        match (y1, y2) {
                            (Some(y), Some(y2)) if y == y2 => {
                                let fa = f(a, Some(y)).expect("e_a was applied");
                                let fb = f(b, Some(y)).expect("e_b was applied");
                                if phi(y, b) - phi(fa, b) != -1 || phi(y, a) - phi(fb, a) != -1 {
                                    problems.push(format!("P6 (nabla) fails at {v} for ({a},{b})"));
                                }
                            }
                            _ => problems.push(format!("P6 fails at {v} for ({a},{b})")),
                        }
                    }
                }
                // lowering side
                if let (Some(wa), Some(wb)) = (f(a, Some(v)), f(b, Some(v))) {
                    let n_ab = phi(v, b) - phi(wa, b);
                    let n_ba = phi(v, a) - phi(wb, a);
                    if n_ab == 0 {
                        let y1 = f(a, Some(wb));
                        let y2 = f(b, Some(wa));
                        match (y1, y2) {
                            (Some(y), Some(y2)) if y == y2 => {
                                let above = e(b, Some(y)).expect("f_b was applied");
                                if eps(above, a) - eps(y, a) != 0 {
                                    problems.push(format!("P5' (delta) fails at {v} for ({a},{b})"));
                                }
                            }
                            _ => problems.push(format!("P5' fails at {v}: f_{a}f_{b} != f_{b}f_{a}")),
                        }
                    }
                    if n_ab == -1 && n_ba == -1 {
                        let y1 = f(a, f(b, f(b, Some(wa))));
                        let y2 = f(b, f(a, f(a, Some(wb))));
                        match (y1, y2) {
                            (Some(y), Some(y2)) if y == y2 => {
                                let ea = e(a, Some(y)).expect("f_a was applied");
                                let eb = e(b, Some(y)).expect("f_b was applied");
                                if eps(ea, b) - eps(y, b) != 1 || eps(eb, a) - eps(y, a) != 1 {
                                    problems.push(format!("P6' (delta) fails at {v} for ({a},{b})"));
                                }
                            }
                            _ => problems.push(format!("P6' fails at {v} for ({a},{b})")),
                        }
                    }
                }
            }
        }

        let tops: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&v| pred[ci][v].is_none() && pred[cj][v].is_none())
            .collect();
        if let [top] = tops[..] {
            let dim = cartan_type.weyl_dimension(phi(top, ci) as u64, phi(top, cj) as u64);
            if dim != comp.len() as u64 {
                problems.push(format!(
                    "component of highest weight ({}, {}) has {} vertices, Weyl dimension {dim}",
                    phi(top, ci),
                    phi(top, cj),
                    comp.len()
                ));
            }
        } else {
            problems.push(format!("{} highest weight vertices", tops.len()));
        }

        if !problems.is_empty() {
            problems.dedup();
            report.violations.push(RegularityViolation {
                component: comp,
                detail: problems.join("; "),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::KRCrystal;
    use crate::graph::build_graph;
    use crate::pattern::KRParams;

    #[test]
    fn vector_representation_is_regular() {
        let g = build_graph(&KRCrystal(KRParams::new(2, 1, 1).unwrap())).unwrap();
        let report = is_regular_rank2(&g, (1, 2)).unwrap();
        assert_eq!(report.cartan_type, RankTwoType::A2);
        assert_eq!(report.components, 1);
    }

    #[test]
    fn kr_crystals_are_regular() {
        for (n, r, s) in [(2, 1, 2), (3, 2, 2), (3, 1, 3), (4, 2, 1)] {
            let g = build_graph(&KRCrystal(KRParams::new(n, r, s).unwrap())).unwrap();
            for report in is_regular(&g).unwrap() {
                assert!(report.is_regular(), "{report:?}");
            }
        }
    }

    #[test]
    fn retargeted_edge_is_reported() {
        let mut g = build_graph(&KRCrystal(KRParams::new(3, 2, 1).unwrap())).unwrap();
        let idx = g.edges.iter().position(|&(_, l, _)| l == 1).unwrap();
        let (u, l, v) = g.edges[idx];
        let other = (0..g.vertices.len()).find(|&w| w != v && w != u).unwrap();
        g.edges[idx] = (u, l, other);
        let failures = is_regular(&g);
        assert!(matches!(failures, Err(Error::ReportedViolation { .. })));
    }

    #[test]
    fn rank_one_is_rejected() {
        let g = build_graph(&KRCrystal(KRParams::new(1, 1, 2).unwrap())).unwrap();
        assert!(matches!(check_rank2(&g, (0, 1)), Err(Error::IndexOutOfRange { .. })));
    }
}
