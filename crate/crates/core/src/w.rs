//! The n-category `W` of index tuples.
//!
//! A level-`l` cell is `(i_l, [i_{l-1} … i_0 ; j_{l-1} … j_0])` with
//! `0 <= j_k <= i_k` and `i_{k+1} < i_k - j_k`. Identities have the shape
//! `(0, [i ; i])`, which the strict bound excludes, so a level with `i_k = j_k`
//! is accepted when the entry directly above it is `0`.
//!
//! Composition adds heads and spine entries above the matching level; it is
//! strict, so `normalize` is the identity.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::error::{CellError, Constraint};

/// One `(i_k, j_k)` spine entry.
pub type IndexPair = (u32, u32);

/// A cell of `W`. The spine is stored top-down: `spine[0]` is level `l-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WCell {
    head: u32,
    spine: Vec<IndexPair>,
}

/// Checks the bound between an entry `(i, j)` and the value `next` directly
/// above it.
fn bound_holds(next: u32, (i, j): IndexPair) -> bool {
    next < i - j || (i == j && next == 0)
}

impl WCell {
    /// Validating constructor.
    pub fn new(head: u32, spine: Vec<IndexPair>) -> Result<Self, CellError> {
        let l = spine.len();
        for (pos, &(i, j)) in spine.iter().enumerate() {
            let level = l - 1 - pos;
            if j > i {
                return Err(CellError::ConstraintViolation {
                    level: Some(level),
                    constraint: Constraint::TargetExceedsSource,
                });
            }
        }
        for (pos, &entry) in spine.iter().enumerate() {
            let next = if pos == 0 { head } else { spine[pos - 1].0 };
            if !bound_holds(next, entry) {
                // the offending value is the one above the entry
                let level = if pos == 0 { None } else { Some(l - pos) };
                return Err(CellError::ConstraintViolation {
                    level,
                    constraint: Constraint::IndexBound,
                });
            }
        }
        Ok(WCell { head, spine })
    }

    /// A 0-cell, i.e. an element of `W(0) = ℕ₀`.
    pub fn object(i: u32) -> Self {
        WCell {
            head: i,
            spine: Vec::new(),
        }
    }

    pub fn head(&self) -> u32 {
        self.head
    }

    pub fn spine(&self) -> &[IndexPair] {
        &self.spine
    }

    pub fn level(&self) -> usize {
        self.spine.len()
    }

    /// The `(i_k, j_k)` entry at level `k < l`.
    pub fn entry(&self, k: usize) -> IndexPair {
        self.spine[self.spine.len() - 1 - k]
    }

    pub fn source(&self) -> Result<WCell, CellError> {
        let (&(i, _), rest) = self.spine.split_first().ok_or(CellError::NoSource)?;
        Ok(WCell {
            head: i,
            spine: rest.to_vec(),
        })
    }

    pub fn target(&self) -> Result<WCell, CellError> {
        let (&(_, j), rest) = self.spine.split_first().ok_or(CellError::NoSource)?;
        Ok(WCell {
            head: j,
            spine: rest.to_vec(),
        })
    }

    pub fn identity(&self) -> WCell {
        let mut spine = Vec::with_capacity(self.spine.len() + 1);
        spine.push((self.head, self.head));
        spine.extend_from_slice(&self.spine);
        WCell { head: 0, spine }
    }

    /// Whether `self ∘_p a` is defined: entries agree below `p` and the
    /// level-`p` entries chain as `(u, v)` then `(v, w)`.
    pub fn composable_after(&self, p: usize, a: &WCell) -> bool {
        let l = self.level();
        if a.level() != l || p >= l {
            return false;
        }
        (0..p).all(|k| self.entry(k) == a.entry(k)) && self.entry(p).0 == a.entry(p).1
    }

    /// `self ∘_p a`.
    pub fn compose_after(&self, p: usize, a: &WCell) -> Result<WCell, CellError> {
        let l = self.level();
        if a.level() != l {
            return Err(CellError::LevelMismatch {
                left: l,
                right: a.level(),
            });
        }
        if !self.composable_after(p, a) {
            return Err(CellError::NotComposable { p });
        }
        let spine = (0..l)
            .rev()
            .map(|k| {
                let (ai, aj) = a.entry(k);
                let (ci, cj) = self.entry(k);
                match k.cmp(&p) {
                    std::cmp::Ordering::Greater => (ai + ci, aj + cj),
                    std::cmp::Ordering::Equal => (ai, cj),
                    std::cmp::Ordering::Less => (ai, aj),
                }
            })
            .collect();
        Ok(WCell {
            head: self.head + a.head,
            spine,
        })
    }
}

impl fmt::Display for WCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spine.is_empty() {
            return write!(f, "{}", self.head);
        }
        let is: Vec<String> = self.spine.iter().map(|(i, _)| i.to_string()).collect();
        let js: Vec<String> = self.spine.iter().map(|(_, j)| j.to_string()).collect();
        write!(f, "({}, [{} ; {}])", self.head, is.join(" "), js.join(" "))
    }
}

/// Every valid cell of `level` whose entries are all `<= bound`, sorted.
pub fn enumerate(level: usize, bound: u32) -> Vec<WCell> {
    // Build spines bottom-up; each entry only depends on the one below it.
    let mut partial: Vec<Vec<IndexPair>> = vec![Vec::new()];
    for _ in 0..level {
        let mut next = Vec::new();
        for lower in &partial {
            for i in 0..=bound {
                if let Some(&below) = lower.last() {
                    if !bound_holds(i, below) {
                        continue;
                    }
                }
                for j in 0..=i {
                    let mut s = lower.clone();
                    s.push((i, j));
                    next.push(s);
                }
            }
        }
        partial = next;
    }
    let mut out = Vec::new();
    for bottom_up in partial {
        for head in 0..=bound {
            if let Some(&top) = bottom_up.last() {
                if !bound_holds(head, top) {
                    continue;
                }
            }
            let spine = bottom_up.iter().rev().copied().collect();
            out.push(WCell { head, spine });
        }
    }
    out.sort();
    out
}

fn random_above<R: Rng + ?Sized>(rng: &mut R, below: Option<IndexPair>, bound: u32) -> u32 {
    match below {
        None => rng.random_range(0..=bound),
        Some((i, j)) if i == j => 0,
        Some((i, j)) => rng.random_range(0..(i - j).min(bound + 1)),
    }
}

/// Extends the bottom-up entries `fixed` with random valid levels until the
/// cell reaches `level`.
fn random_extend<R: Rng + ?Sized>(
    rng: &mut R,
    mut bottom_up: Vec<IndexPair>,
    level: usize,
    bound: u32,
) -> WCell {
    while bottom_up.len() < level {
        let i = random_above(rng, bottom_up.last().copied(), bound);
        let j = rng.random_range(0..=i);
        bottom_up.push((i, j));
    }
    let head = random_above(rng, bottom_up.last().copied(), bound);
    bottom_up.reverse();
    WCell {
        head,
        spine: bottom_up,
    }
}

/// A uniformly built random valid cell; entries at level 0 are `<= bound`.
pub fn random_cell<R: Rng + ?Sized>(rng: &mut R, level: usize, bound: u32) -> WCell {
    random_extend(rng, Vec::new(), level, bound)
}

/// A random pair `(c, a)` with `c ∘_p a` defined.
pub fn random_composable_pair<R: Rng + ?Sized>(
    rng: &mut R,
    level: usize,
    p: usize,
    bound: u32,
) -> (WCell, WCell) {
    assert!(p < level, "p must be below the level");
    let a = random_cell(rng, level, bound);
    let mut bottom_up: Vec<IndexPair> = (0..p).map(|k| a.entry(k)).collect();
    let v = a.entry(p).1;
    bottom_up.push((v, rng.random_range(0..=v)));
    let c = random_extend(rng, bottom_up, level, bound);
    (c, a)
}

/// `W` truncated at `max_level`; `bound` limits enumeration only.
#[derive(Clone, Copy, Debug)]
pub struct WCategory {
    pub max_level: usize,
    pub bound: u32,
}

impl WCategory {
    pub fn new(max_level: usize, bound: u32) -> Self {
        WCategory { max_level, bound }
    }
}

impl Category for WCategory {
    type Cell = WCell;

    fn max_level(&self) -> usize {
        self.max_level
    }

    fn level(&self, cell: &WCell) -> usize {
        cell.level()
    }

    fn source(&self, cell: &WCell) -> Result<WCell, CellError> {
        cell.source()
    }

    fn target(&self, cell: &WCell) -> Result<WCell, CellError> {
        cell.target()
    }

    fn identity(&self, cell: &WCell) -> Result<WCell, CellError> {
        if cell.level() >= self.max_level {
            return Err(CellError::NoIdentity {
                level: cell.level(),
                max_level: self.max_level,
            });
        }
        Ok(cell.identity())
    }

    fn compose(&self, p: usize, c: &WCell, a: &WCell) -> Result<WCell, CellError> {
        c.compose_after(p, a)
    }

    fn cells(&self, level: usize) -> Vec<WCell> {
        if level > self.max_level {
            return Vec::new();
        }
        enumerate(level, self.bound)
    }

    fn render(&self, cell: &WCell) -> String {
        cell.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(head: u32, spine: &[IndexPair]) -> WCell {
        WCell::new(head, spine.to_vec()).unwrap()
    }

    #[test]
    fn make_accepts_and_rejects() {
        assert!(WCell::new(0, vec![(2, 1)]).is_ok());
        assert!(WCell::new(0, vec![(2, 2)]).is_ok());
        assert_eq!(
            WCell::new(1, vec![(2, 1)]),
            Err(CellError::ConstraintViolation {
                level: None,
                constraint: Constraint::IndexBound
            })
        );
        assert_eq!(
            WCell::new(0, vec![(1, 2)]),
            Err(CellError::ConstraintViolation {
                level: Some(0),
                constraint: Constraint::TargetExceedsSource
            })
        );
        // i_1 = 2 is not below i_0 - j_0 = 2
        assert_eq!(
            WCell::new(0, vec![(2, 0), (2, 0)]),
            Err(CellError::ConstraintViolation {
                level: Some(1),
                constraint: Constraint::IndexBound
            })
        );
    }

    #[test]
    fn source_and_target() {
        assert_eq!(w(1, &[(2, 0)]).source().unwrap(), WCell::object(2));
        assert_eq!(w(0, &[(1, 0), (2, 0)]).target().unwrap(), w(0, &[(2, 0)]));
        let id2 = WCell::object(2).identity();
        assert_eq!(id2.source().unwrap(), WCell::object(2));
        assert_eq!(id2.target().unwrap(), WCell::object(2));
        assert_eq!(WCell::object(3).source(), Err(CellError::NoSource));
    }

    #[test]
    fn identities() {
        assert_eq!(WCell::object(2).identity(), w(0, &[(2, 2)]));
        assert_eq!(w(0, &[(2, 1)]).identity(), w(0, &[(0, 0), (2, 1)]));
        let tower = WCell::object(2).identity().identity();
        assert_eq!(tower, w(0, &[(0, 0), (2, 2)]));
        assert_eq!(tower.source().unwrap().source().unwrap(), WCell::object(2));
    }

    #[test]
    fn compose_examples() {
        let c = w(0, &[(1, 0)]);
        let a = w(0, &[(2, 1)]);
        assert_eq!(c.compose_after(0, &a).unwrap(), w(0, &[(2, 0)]));

        let x = w(0, &[(0, 0), (2, 1)]);
        assert_eq!(x.compose_after(1, &x).unwrap(), x);

        let c = w(0, &[(0, 0), (1, 0)]);
        let a = w(0, &[(0, 0), (2, 1)]);
        assert_eq!(c.compose_after(0, &a).unwrap(), w(0, &[(0, 0), (2, 0)]));

        assert_eq!(
            a.compose_after(0, &a),
            Err(CellError::NotComposable { p: 0 })
        );
        assert_eq!(
            a.compose_after(0, &w(0, &[(2, 1)])),
            Err(CellError::LevelMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn render() {
        assert_eq!(w(0, &[(2, 1)]).to_string(), "(0, [2 ; 1])");
        assert_eq!(w(0, &[(1, 0), (2, 0)]).to_string(), "(0, [1 2 ; 0 0])");
        assert_eq!(WCell::object(2).to_string(), "2");
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(
            enumerate(0, 2),
            vec![WCell::object(0), WCell::object(1), WCell::object(2)]
        );
        let l1 = enumerate(1, 2);
        assert!(l1.contains(&w(0, &[(2, 1)])));
        assert!(l1.contains(&w(0, &[(2, 2)])));
        assert!(l1.contains(&w(1, &[(2, 0)])));
        assert!(!l1.iter().any(|c| c.head == 1 && c.spine == vec![(2, 1)]));
        for c in enumerate(2, 2) {
            assert!(WCell::new(c.head, c.spine.clone()).is_ok());
        }
    }

    #[test]
    fn random_pairs_compose() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let l = rng.random_range(1..=4);
            let p = rng.random_range(0..l);
            let (c, a) = random_composable_pair(&mut rng, l, p, 5);
            assert!(WCell::new(a.head, a.spine.clone()).is_ok());
            assert!(WCell::new(c.head, c.spine.clone()).is_ok());
            assert!(c.composable_after(p, &a));
        }
    }
}
