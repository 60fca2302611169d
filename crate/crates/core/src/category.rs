//! The contract shared by every (almost) strict n-category instance.
//!
//! An instance is an n-globular set (cells graded by level, with source and
//! target maps one level down) together with identities one level up and
//! partial composites `∘_p`. Almost strict instances additionally supply a
//! normalizer that picks a canonical representative of each isomorphism
//! class; two cells are considered equal when their normal forms agree.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::CellError;

pub trait Category {
    type Cell: Clone + Eq + Hash + Ord + Debug;

    /// The `n` of the n-category.
    fn max_level(&self) -> usize;

    fn level(&self, cell: &Self::Cell) -> usize;

    fn source(&self, cell: &Self::Cell) -> Result<Self::Cell, CellError>;

    fn target(&self, cell: &Self::Cell) -> Result<Self::Cell, CellError>;

    fn identity(&self, cell: &Self::Cell) -> Result<Self::Cell, CellError>;

    /// `c ∘_p a`, defined when `s^{l-p}(c) = t^{l-p}(a)`.
    fn compose(&self, p: usize, c: &Self::Cell, a: &Self::Cell) -> Result<Self::Cell, CellError>;

    /// Canonical representative under the instance's canonical isomorphisms.
    /// Must be idempotent. Strict instances keep the default.
    fn normalize(&self, cell: &Self::Cell) -> Self::Cell {
        cell.clone()
    }

    /// All cells of one level, in a deterministic order.
    fn cells(&self, level: usize) -> Vec<Self::Cell>;

    fn render(&self, cell: &Self::Cell) -> String;

    fn equivalent(&self, x: &Self::Cell, y: &Self::Cell) -> bool {
        x == y || self.normalize(x) == self.normalize(y)
    }
}

/// `s^k(cell)`.
pub fn source_pow<C: Category + ?Sized>(
    cat: &C,
    cell: &C::Cell,
    k: usize,
) -> Result<C::Cell, CellError> {
    let mut out = cell.clone();
    for _ in 0..k {
        out = cat.source(&out)?;
    }
    Ok(out)
}

/// `t^k(cell)`.
pub fn target_pow<C: Category + ?Sized>(
    cat: &C,
    cell: &C::Cell,
    k: usize,
) -> Result<C::Cell, CellError> {
    let mut out = cell.clone();
    for _ in 0..k {
        out = cat.target(&out)?;
    }
    Ok(out)
}

/// `1^k(cell)`.
pub fn identity_pow<C: Category + ?Sized>(
    cat: &C,
    cell: &C::Cell,
    k: usize,
) -> Result<C::Cell, CellError> {
    let mut out = cell.clone();
    for _ in 0..k {
        out = cat.identity(&out)?;
    }
    Ok(out)
}

/// Whether `(c, a)` lies in `Y(l) ×_p Y(l)`, i.e. `s^{l-p}(c) = t^{l-p}(a)`
/// up to normalization.
pub fn composable<C: Category + ?Sized>(
    cat: &C,
    p: usize,
    c: &C::Cell,
    a: &C::Cell,
) -> Result<bool, CellError> {
    let l = cat.level(a);
    let lc = cat.level(c);
    if l != lc {
        return Err(CellError::InvalidArguments(format!(
            "operands live on levels {lc} and {l}"
        )));
    }
    if p >= l {
        return Err(CellError::InvalidArguments(format!(
            "p = {p} must be below the cell level {l}"
        )));
    }
    let lhs = source_pow(cat, c, l - p)?;
    let rhs = target_pow(cat, a, l - p)?;
    Ok(cat.equivalent(&lhs, &rhs))
}

/// Composes after checking composability.
pub fn compose_checked<C: Category + ?Sized>(
    cat: &C,
    p: usize,
    c: &C::Cell,
    a: &C::Cell,
) -> Result<C::Cell, CellError> {
    if !composable(cat, p, c, a)? {
        return Err(CellError::NotComposable { p });
    }
    cat.compose(p, c, a)
}
