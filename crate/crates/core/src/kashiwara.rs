//! String statistics `phi_l`, `eps_l` and the Kashiwara operators `f_l`, `e_l`
//! on patterns, for every color `l = 0..=n`.
//!
//! Classical colors `l != r` select the cell they act on through a pivot: the
//! set of positions maximizing a partial-sum objective over two adjacent rows
//! (`l > r`) or two adjacent columns (`l < r`). Color `0` acts on the corner
//! cell `a_{1,n}` only.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::KRPattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PivotSign {
    /// `l > r`: rows `l - 1` and `l`, positions `p in 1..=r`.
    Plus,
    /// `l < r`: columns `l` and `l + 1`, positions `p in r..=n`.
    Minus,
}

/// Extreme positions of the argmax set of the pivot objective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PivotIndices {
    pub sign: PivotSign,
    pub argmax_min: usize,
    pub argmax_max: usize,
    pub max: i64,
}

impl PivotIndices {
    /// Position used by `f_l`: `p^l_+` (min) or `p^l_-` (max).
    pub fn lowering(&self) -> usize {
        match self.sign {
            PivotSign::Plus => self.argmax_min,
            PivotSign::Minus => self.argmax_max,
        }
    }

    /// Position used by `e_l`: `q^l_+` (max) or `q^l_-` (min).
    pub fn raising(&self) -> usize {
        match self.sign {
            PivotSign::Plus => self.argmax_max,
            PivotSign::Minus => self.argmax_min,
        }
    }
}

fn a(x: &KRPattern, p: usize, q: usize) -> i64 {
    i64::from(x.get(p, q))
}

impl KRPattern {
    /// Pivot indices for a classical color `l != r`. The sign follows from `l`.
    pub fn pivot(&self, l: usize) -> Result<PivotIndices> {
        let (n, r) = (self.params().n(), self.params().r());
        if l == 0 || l > n {
            return Err(Error::IndexOutOfRange {
                l,
                reason: "pivots exist for classical colors 1..=n",
            });
        }
        if l == r {
            return Err(Error::IndexOutOfRange {
                l,
                reason: "color l = r acts without a pivot",
            });
        }
        let (sign, range, objective): (_, _, Box<dyn Fn(usize) -> i64>) = if l > r {
            (
                PivotSign::Plus,
                1..=r,
                Box::new(move |p| {
                    (1..=p).map(|j| a(self, j, l - 1)).sum::<i64>() + (p..=r).map(|j| a(self, j, l)).sum::<i64>()
                }),
            )
        } else {
            (
                PivotSign::Minus,
                r..=n,
                Box::new(move |p| {
                    (r..=p).map(|j| a(self, l, j)).sum::<i64>() + (p..=n).map(|j| a(self, l + 1, j)).sum::<i64>()
                }),
            )
        };
        let values: Vec<(usize, i64)> = range.map(|p| (p, objective(p))).collect();
        let max = values.iter().map(|&(_, v)| v).max().expect("non-empty range");
        let mut hits = values.iter().filter(|&&(_, v)| v == max).map(|&(p, _)| p);
        let argmax_min = hits.next().expect("max is attained");
        let argmax_max = hits.next_back().unwrap_or(argmax_min);
        Ok(PivotIndices {
            sign,
            argmax_min,
            argmax_max,
            max,
        })
    }

    /// `phi_l`: the number of times `f_l` applies before reaching crystal zero.
    pub fn phi(&self, l: usize) -> u32 {
        let params = self.params();
        let (n, r, m) = (params.n(), params.r(), i64::from(params.s()));
        let value = if l == 0 {
            a(self, 1, n)
        } else if l == r {
            m - (1..r).map(|j| a(self, j, r)).sum::<i64>() - (r..=n).map(|j| a(self, r, j)).sum::<i64>()
        } else {
            let p = self.pivot(l).expect("valid color").lowering();
            if l > r {
                (1..=p).map(|j| a(self, j, l - 1)).sum::<i64>() - (1..p).map(|j| a(self, j, l)).sum::<i64>()
            } else {
                (p..=n).map(|j| a(self, l + 1, j)).sum::<i64>() - (p + 1..=n).map(|j| a(self, l, j)).sum::<i64>()
            }
        };
        u32::try_from(value).expect("phi is non-negative on valid patterns")
    }

    /// `eps_l`: the number of times `e_l` applies before reaching crystal zero.
    pub fn eps(&self, l: usize) -> u32 {
        let params = self.params();
        let (n, r, m) = (params.n(), params.r(), i64::from(params.s()));
        let value = if l == 0 {
            m - (r..=n).map(|j| a(self, 1, j)).sum::<i64>() - (2..=r).map(|j| a(self, j, n)).sum::<i64>()
        } else if l == r {
            a(self, r, r)
        } else {
            let q = self.pivot(l).expect("valid color").raising();
            if l > r {
                (q..=r).map(|j| a(self, j, l)).sum::<i64>() - (q + 1..=r).map(|j| a(self, j, l - 1)).sum::<i64>()
            } else {
                (r..=q).map(|j| a(self, l, j)).sum::<i64>() - (r..q).map(|j| a(self, l + 1, j)).sum::<i64>()
            }
        };
        u32::try_from(value).expect("eps is non-negative on valid patterns")
    }

    /// Lowering operator `f_l`; `None` is crystal zero.
    pub fn f(&self, l: usize) -> Option<KRPattern> {
        if self.phi(l) == 0 {
            return None;
        }
        let (n, r) = (self.params().n(), self.params().r());
        let mut out = self.clone();
        if l == 0 {
            out.add(1, n, -1);
        } else if l == r {
            out.add(r, r, 1);
        } else {
            let p = self.pivot(l).expect("valid color").lowering();
            if l > r {
                out.add(p, l - 1, -1);
                out.add(p, l, 1);
            } else {
                out.add(l, p, 1);
                out.add(l + 1, p, -1);
            }
        }
        Some(out)
    }

    /// Raising operator `e_l`; `None` is crystal zero.
    pub fn e(&self, l: usize) -> Option<KRPattern> {
        if self.eps(l) == 0 {
            return None;
        }
        let (n, r) = (self.params().n(), self.params().r());
        let mut out = self.clone();
        if l == 0 {
            out.add(1, n, 1);
        } else if l == r {
            out.add(r, r, -1);
        } else {
            let q = self.pivot(l).expect("valid color").raising();
            if l > r {
                out.add(q, l - 1, 1);
                out.add(q, l, -1);
            } else {
                out.add(l, q, -1);
                out.add(l + 1, q, 1);
            }
        }
        Some(out)
    }

    /// `e_l^k`, or `None` if the string ends first.
    pub fn e_pow(&self, l: usize, k: u32) -> Option<KRPattern> {
        (0..k).try_fold(self.clone(), |x, _| x.e(l))
    }

    pub fn f_pow(&self, l: usize, k: u32) -> Option<KRPattern> {
        (0..k).try_fold(self.clone(), |x, _| x.f(l))
    }

    pub fn eps_profile(&self) -> Vec<u32> {
        (0..=self.params().n()).map(|l| self.eps(l)).collect()
    }

    pub fn phi_profile(&self) -> Vec<u32> {
        (0..=self.params().n()).map(|l| self.phi(l)).collect()
    }
}
