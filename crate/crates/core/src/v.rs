//! The n-category `V` of hom-space tuples
//! `(ℝ^{i_l}, Hom(ℝ^{i_{l-1}}, ℝ^{j_{l-1}}), …, Hom(ℝ^{i_0}, ℝ^{j_0}))`.
//!
//! Only dimensions are stored. The canonical isomorphisms of `V`
//! (`ℝ^{a+b} ≃ ℝ^a × ℝ^b`, `ℝ^0 × ℝ^a ≃ ℝ^a`) act trivially on dimensions,
//! so every operation delegates to the matching operation on [`WCell`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::error::CellError;
use crate::w::{self, WCell};

/// A cell of `V`, carried by its dimension skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VCell(WCell);

impl VCell {
    pub fn from_w(dims: WCell) -> Self {
        VCell(dims)
    }

    pub fn to_w(&self) -> WCell {
        self.0.clone()
    }

    pub fn dims(&self) -> &WCell {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.level()
    }

    pub fn source(&self) -> Result<VCell, CellError> {
        self.0.source().map(VCell)
    }

    pub fn target(&self) -> Result<VCell, CellError> {
        self.0.target().map(VCell)
    }

    pub fn identity(&self) -> VCell {
        VCell(self.0.identity())
    }

    /// `self ∘_p a`.
    pub fn compose_after(&self, p: usize, a: &VCell) -> Result<VCell, CellError> {
        self.0.compose_after(p, &a.0).map(VCell)
    }
}

impl From<WCell> for VCell {
    fn from(dims: WCell) -> Self {
        VCell(dims)
    }
}

impl fmt::Display for VCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.0;
        if d.level() == 0 {
            return write!(f, "R^{}", d.head());
        }
        write!(f, "(R^{}", d.head())?;
        for (i, j) in d.spine() {
            write!(f, ", Hom(R^{i},R^{j})")?;
        }
        f.write_str(")")
    }
}

/// `V` truncated at `max_level`.
#[derive(Clone, Copy, Debug)]
pub struct VCategory {
    pub max_level: usize,
    pub bound: u32,
}

impl VCategory {
    pub fn new(max_level: usize, bound: u32) -> Self {
        VCategory { max_level, bound }
    }
}

impl Category for VCategory {
    type Cell = VCell;

    fn max_level(&self) -> usize {
        self.max_level
    }

    fn level(&self, cell: &VCell) -> usize {
        cell.level()
    }

    fn source(&self, cell: &VCell) -> Result<VCell, CellError> {
        cell.source()
    }

    fn target(&self, cell: &VCell) -> Result<VCell, CellError> {
        cell.target()
    }

    fn identity(&self, cell: &VCell) -> Result<VCell, CellError> {
        if cell.level() >= self.max_level {
            return Err(CellError::NoIdentity {
                level: cell.level(),
                max_level: self.max_level,
            });
        }
        Ok(cell.identity())
    }

    fn compose(&self, p: usize, c: &VCell, a: &VCell) -> Result<VCell, CellError> {
        c.compose_after(p, a)
    }

    fn cells(&self, level: usize) -> Vec<VCell> {
        if level > self.max_level {
            return Vec::new();
        }
        w::enumerate(level, self.bound)
            .into_iter()
            .map(VCell)
            .collect()
    }

    fn render(&self, cell: &VCell) -> String {
        cell.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(head: u32, spine: &[(u32, u32)]) -> VCell {
        VCell::from_w(WCell::new(head, spine.to_vec()).unwrap())
    }

    #[test]
    fn render_forms() {
        assert_eq!(v(0, &[(2, 1)]).to_string(), "(R^0, Hom(R^2,R^1))");
        assert_eq!(VCell::from_w(WCell::object(2)).to_string(), "R^2");
        assert_eq!(
            v(0, &[(1, 0), (2, 0)]).to_string(),
            "(R^0, Hom(R^1,R^0), Hom(R^2,R^0))"
        );
        assert!(WCell::new(0, vec![(1, 2), (2, 0)]).is_err());
    }

    #[test]
    fn operations_delegate() {
        let r2 = VCell::from_w(WCell::object(2));
        assert_eq!(r2.identity(), v(0, &[(2, 2)]));
        assert_eq!(r2.identity().to_string(), "(R^0, Hom(R^2,R^2))");
        assert_eq!(v(0, &[(2, 1)]).source().unwrap(), r2);
        assert_eq!(
            v(0, &[(1, 0)]).compose_after(0, &v(0, &[(2, 1)])).unwrap(),
            v(0, &[(2, 0)])
        );
    }

    #[test]
    fn round_trip() {
        for c in w::enumerate(2, 3) {
            assert_eq!(VCell::from_w(c.clone()).to_w(), c);
        }
    }
}
