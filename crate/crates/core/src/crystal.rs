//! A small abstraction over finite affine crystals so that graph building,
//! regularity checks and component walks work the same for single KR
//! crystals and their tensor products.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Display;
use std::hash::Hash;

use crate::error::Result;
use crate::pattern::{enumerate_crystal_capped, KRParams, KRPattern, DEFAULT_SIZE_LIMIT};
use crate::weight::{affine_weight, AffineWeight};

pub trait Crystal {
    type Element: Clone + Eq + Hash + Ord + Display;

    /// Rank `n`; colors run over `0..=n`.
    fn rank(&self) -> usize;

    /// All elements, sorted, or `SizeLimitExceeded` past `limit`.
    fn elements_capped(&self, limit: usize) -> Result<Vec<Self::Element>>;

    fn elements(&self) -> Result<Vec<Self::Element>> {
        self.elements_capped(DEFAULT_SIZE_LIMIT)
    }

    fn e(&self, x: &Self::Element, l: usize) -> Option<Self::Element>;
    fn f(&self, x: &Self::Element, l: usize) -> Option<Self::Element>;
    fn eps(&self, x: &Self::Element, l: usize) -> u32;
    fn phi(&self, x: &Self::Element, l: usize) -> u32;
    fn weight(&self, x: &Self::Element) -> AffineWeight;

    fn colors(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.rank()
    }

    /// Killed by every classical raising operator `e_1..e_n`.
    fn is_classical_highest_weight(&self, x: &Self::Element) -> bool {
        (1..=self.rank()).all(|l| self.e(x, l).is_none())
    }
}

/// The KR crystal `B^{r,s}` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KRCrystal(pub KRParams);

impl Crystal for KRCrystal {
    type Element = KRPattern;

    fn rank(&self) -> usize {
        self.0.n()
    }

    fn elements_capped(&self, limit: usize) -> Result<Vec<KRPattern>> {
        enumerate_crystal_capped(self.0, limit)
    }

    fn e(&self, x: &KRPattern, l: usize) -> Option<KRPattern> {
        x.e(l)
    }

    fn f(&self, x: &KRPattern, l: usize) -> Option<KRPattern> {
        x.f(l)
    }

    fn eps(&self, x: &KRPattern, l: usize) -> u32 {
        x.eps(l)
    }

    fn phi(&self, x: &KRPattern, l: usize) -> u32 {
        x.phi(l)
    }

    fn weight(&self, x: &KRPattern) -> AffineWeight {
        affine_weight(x)
    }
}

/// Connected component of `start` under the given colors, in BFS order.
pub fn component<C: Crystal>(crystal: &C, start: &C::Element, colors: &[usize]) -> Vec<C::Element> {
    let mut seen: HashSet<C::Element> = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(x) = queue.pop_front() {
        for &l in colors {
            for y in [crystal.f(&x, l), crystal.e(&x, l)].into_iter().flatten() {
                if seen.insert(y.clone()) {
                    order.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

/// Raises `x` to its classical highest weight element by always applying the
/// smallest color with `eps > 0`. Returns the element and the colors used, in
/// application order.
pub fn raise_to_highest_weight<C: Crystal>(crystal: &C, x: &C::Element) -> (C::Element, Vec<usize>) {
    let mut current = x.clone();
    let mut word = Vec::new();
    'outer: loop {
        for l in 1..=crystal.rank() {
            if let Some(y) = crystal.e(&current, l) {
                current = y;
                word.push(l);
                continue 'outer;
            }
        }
        return (current, word);
    }
}

/// Applies `f` along the reverse of a raising word.
pub fn lower_along<C: Crystal>(crystal: &C, x: &C::Element, raising_word: &[usize]) -> Option<C::Element> {
    raising_word.iter().rev().try_fold(x.clone(), |y, &l| crystal.f(&y, l))
}

/// Builds the unique color-preserving bijection between the components of
/// `a_start` in `a` and `b_start` in `b` that sends `a_start` to `b_start`
/// and commutes with `f_l` and `e_l` for the given colors. Returns `None`
/// if propagation conflicts or the components differ in size.
pub fn match_components<A: Crystal, B: Crystal>(
    a: &A,
    a_start: &A::Element,
    b: &B,
    b_start: &B::Element,
    colors: &[usize],
) -> Option<HashMap<A::Element, B::Element>> {
    let mut forward: HashMap<A::Element, B::Element> = HashMap::new();
    let mut backward: HashMap<B::Element, A::Element> = HashMap::new();
    forward.insert(a_start.clone(), b_start.clone());
    backward.insert(b_start.clone(), a_start.clone());
    let mut queue = VecDeque::from([(a_start.clone(), b_start.clone())]);
    while let Some((x, y)) = queue.pop_front() {
        for &l in colors {
            let moves = [(a.f(&x, l), b.f(&y, l)), (a.e(&x, l), b.e(&y, l))];
            for pair in moves {
                match pair {
                    (None, None) => {}
                    (Some(x2), Some(y2)) => match (forward.get(&x2), backward.get(&y2)) {
                        (None, None) => {
                            forward.insert(x2.clone(), y2.clone());
                            backward.insert(y2.clone(), x2.clone());
                            queue.push_back((x2, y2));
                        }
                        (Some(seen_y), Some(seen_x)) if *seen_y == y2 && *seen_x == x2 => {}
                        _ => return None,
                    },
                    _ => return None,
                }
            }
        }
    }
    Some(forward)
}
