//! Cells of the Morse n-category X and their operations.
//!
//! A level-`l` cell is a critical point `a_l` of the Morse function on
//! `M̂(a_{l-1}, b_{l-1})[a_{l-2}, …; b_{l-2}, …]`, stored as the head label
//! plus the spine of endpoint pairs, top-down. Composites pair labels; the
//! normal form additionally identifies everything over a diagonal
//! (singleton) space with its unique point.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::category::{source_pow, target_pow, Category};
use crate::error::CellError;
use crate::morse::flow::{FlowData, ModuliKey};
use crate::morse::label::{self, Label};

pub type LabelPair = (Label, Label);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XCell {
    head: Label,
    spine: Vec<LabelPair>,
}

impl XCell {
    /// A cell as given, not normalized.
    pub fn new(head: Label, spine: Vec<LabelPair>) -> Self {
        XCell { head, spine }
    }

    pub fn object(id: impl Into<String>) -> Self {
        XCell::new(Label::atom(id), Vec::new())
    }

    pub fn head(&self) -> &Label {
        &self.head
    }

    /// Endpoint pairs from level `l - 1` down to level 0.
    pub fn spine(&self) -> &[LabelPair] {
        &self.spine
    }

    pub fn level(&self) -> usize {
        self.spine.len()
    }

    /// The pair at level `k`.
    pub fn entry(&self, k: usize) -> &LabelPair {
        &self.spine[self.level() - 1 - k]
    }

    /// The space the head lives on, `None` at level 0.
    pub fn key(&self) -> Option<ModuliKey> {
        let ((source, target), history) = self.spine.split_first()?;
        Some(ModuliKey {
            source: source.clone(),
            target: target.clone(),
            history: history.to_vec(),
        })
    }

    /// Whether the head lives on a diagonal space.
    pub fn is_over_diagonal(&self) -> bool {
        self.spine.first().is_some_and(|(s, t)| s == t)
    }

    pub fn source_raw(&self) -> Result<XCell, CellError> {
        let ((s, _), rest) = self.spine.split_first().ok_or(CellError::NoSource)?;
        Ok(XCell::new(s.clone(), rest.to_vec()))
    }

    pub fn target_raw(&self) -> Result<XCell, CellError> {
        let ((_, t), rest) = self.spine.split_first().ok_or(CellError::NoSource)?;
        Ok(XCell::new(t.clone(), rest.to_vec()))
    }

    pub fn identity_raw(&self) -> XCell {
        let mut spine = Vec::with_capacity(self.spine.len() + 1);
        spine.push((self.head.clone(), self.head.clone()));
        spine.extend(self.spine.iter().cloned());
        XCell::new(Label::pt(self.head.clone()), spine)
    }

    /// `self ∘_p a` without the composability check or normalization.
    pub fn compose_raw(&self, p: usize, a: &XCell) -> Result<XCell, CellError> {
        let l = a.level();
        if self.level() != l {
            return Err(CellError::LevelMismatch {
                left: self.level(),
                right: l,
            });
        }
        if p >= l {
            return Err(CellError::InvalidArguments(format!(
                "p = {p} must be below the cell level {l}"
            )));
        }
        let at_p = l - 1 - p;
        let mut spine = Vec::with_capacity(l);
        for (i, ((as_, at), (cs, ct))) in a.spine.iter().zip(&self.spine).enumerate() {
            spine.push(if i < at_p {
                (
                    Label::pair(as_.clone(), cs.clone()),
                    Label::pair(at.clone(), ct.clone()),
                )
            } else if i == at_p {
                (as_.clone(), ct.clone())
            } else {
                (as_.clone(), at.clone())
            });
        }
        Ok(XCell::new(
            Label::pair(a.head.clone(), self.head.clone()),
            spine,
        ))
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for XCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.key() {
            None => write!(f, "{}", self.head),
            Some(key) => write!(f, "({}, {key})", self.head),
        }
    }
}

impl Serialize for XCell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Canonical representative: labels are normalized, and anything living
/// over a diagonal `M̂(v, v)` is replaced by its unique point `pt(v)`.
pub fn normalize_cell(cell: &XCell) -> XCell {
    let mut spine: Vec<LabelPair> =
        vec![(Label::Seq(Vec::new()), Label::Seq(Vec::new())); cell.level()];
    let mut diagonal: Option<Label> = None;
    for i in (0..cell.level()).rev() {
        let pair = match diagonal.take() {
            Some(v) => (Label::pt(v.clone()), Label::pt(v)),
            None => {
                let (s, t) = &cell.spine[i];
                (label::normalize(s), label::normalize(t))
            }
        };
        if pair.0 == pair.1 {
            diagonal = Some(pair.0.clone());
        }
        spine[i] = pair;
    }
    let head = match diagonal {
        Some(u) => Label::pt(u),
        None => label::normalize(&cell.head),
    };
    XCell::new(head, spine)
}

/// Dimension of the space an atom lives on; base points count as 0.
pub fn home_dim(fd: &FlowData, id: &str) -> u32 {
    fd.home_of(id).map_or(0, |m| m.dim)
}

/// A cell whose identity is a genuine cell of the next level: it lives over
/// a diagonal, or is a critical point on a 0-dimensional space.
fn is_pointlike(fd: &FlowData, cell: &XCell) -> bool {
    if cell.level() == 0 {
        return false;
    }
    if cell.is_over_diagonal() {
        return true;
    }
    match cell.head() {
        Label::Atom(id) => home_dim(fd, id) == 0,
        _ => false,
    }
}

/// The generated level-`l` cells: one per critical point of each level-`l`
/// moduli space, plus the unique point over each diagonal `M̂(A, A)` for
/// pointlike `A`. Normalized, sorted, deduplicated. Empty past the data depth.
pub fn x_cells(fd: &FlowData, l: usize) -> Vec<XCell> {
    if l > fd.max_level() {
        return Vec::new();
    }
    if l == 0 {
        return fd.points_at(0).map(|p| XCell::object(&p.id)).collect();
    }
    let mut out = BTreeSet::new();
    for m in fd.moduli().iter().filter(|m| m.level == l) {
        let key = m.key();
        let mut spine = vec![(key.source, key.target)];
        spine.extend(key.history);
        for cp in &m.critical_points {
            out.insert(normalize_cell(&XCell::new(Label::atom(cp), spine.clone())));
        }
    }
    for below in x_cells(fd, l - 1) {
        if is_pointlike(fd, &below) {
            out.insert(normalize_cell(&below.identity_raw()));
        }
    }
    out.into_iter().collect()
}

/// The Morse n-category of one flow-data set.
#[derive(Clone, Debug)]
pub struct XCategory {
    fd: FlowData,
}

impl XCategory {
    pub fn new(fd: FlowData) -> Self {
        XCategory { fd }
    }

    pub fn flow_data(&self) -> &FlowData {
        &self.fd
    }
}

impl Category for XCategory {
    type Cell = XCell;

    fn max_level(&self) -> usize {
        self.fd.max_level()
    }

    fn level(&self, cell: &XCell) -> usize {
        cell.level()
    }

    fn source(&self, cell: &XCell) -> Result<XCell, CellError> {
        Ok(normalize_cell(&cell.source_raw()?))
    }

    fn target(&self, cell: &XCell) -> Result<XCell, CellError> {
        Ok(normalize_cell(&cell.target_raw()?))
    }

    fn identity(&self, cell: &XCell) -> Result<XCell, CellError> {
        if cell.level() >= self.fd.max_level() {
            return Err(CellError::NoIdentity {
                level: cell.level(),
                max_level: self.fd.max_level(),
            });
        }
        Ok(normalize_cell(&cell.identity_raw()))
    }

    fn compose(&self, p: usize, c: &XCell, a: &XCell) -> Result<XCell, CellError> {
        let raw = c.compose_raw(p, a)?;
        let k = a.level() - p;
        if normalize_cell(&source_pow(self, c, k)?) != normalize_cell(&target_pow(self, a, k)?) {
            return Err(CellError::NotComposable { p });
        }
        Ok(normalize_cell(&raw))
    }

    fn normalize(&self, cell: &XCell) -> XCell {
        normalize_cell(cell)
    }

    fn cells(&self, level: usize) -> Vec<XCell> {
        x_cells(&self.fd, level)
    }

    fn render(&self, cell: &XCell) -> String {
        cell.to_string()
    }
}

/// All `(C, A)` with `s^{l-p}(C) = t^{l-p}(A)`, drawn from `cells` (one
/// level), sorted.
pub fn composable_pairs_in(cat: &XCategory, cells: &[XCell], p: usize) -> Vec<(XCell, XCell)> {
    let Some(l) = cells.first().map(XCell::level) else {
        return Vec::new();
    };
    if p >= l {
        return Vec::new();
    }
    let mut by_target: HashMap<XCell, Vec<&XCell>> = HashMap::new();
    for a in cells {
        if let Ok(t) = target_pow(cat, a, l - p) {
            by_target.entry(normalize_cell(&t)).or_default().push(a);
        }
    }
    let mut out = Vec::new();
    for c in cells {
        let Ok(s) = source_pow(cat, c, l - p) else {
            continue;
        };
        if let Some(as_) = by_target.get(&normalize_cell(&s)) {
            out.extend(as_.iter().map(|a| (c.clone(), (*a).clone())));
        }
    }
    out.sort();
    out
}

/// `X(l) ×_p X(l)` over the generated cells.
pub fn x_composable_pairs(fd: &FlowData, l: usize, p: usize) -> Vec<(XCell, XCell)> {
    let cat = XCategory::new(fd.clone());
    composable_pairs_in(&cat, &x_cells(fd, l), p)
}

/// Generated cells closed under identities and composites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    /// Cells per level `0..=max_level`, sorted.
    pub levels: Vec<Vec<XCell>>,
    /// False when the cell cap stopped the iteration early.
    pub complete: bool,
}

impl Closure {
    pub fn all(&self) -> impl Iterator<Item = &XCell> {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub const DEFAULT_CLOSURE_CAP: usize = 50_000;

/// Closes the generated cells of levels `0..=max_level` under identities and
/// all composites, stopping once more than `cap` cells exist.
pub fn x_closure(fd: &FlowData, max_level: usize, cap: usize) -> Closure {
    let top = max_level.min(fd.max_level());
    let cat = XCategory::new(fd.clone());
    let mut levels: Vec<BTreeSet<XCell>> = (0..=top)
        .map(|l| x_cells(fd, l).into_iter().collect())
        .collect();
    loop {
        let before: usize = levels.iter().map(BTreeSet::len).sum();
        for l in 1..=top {
            let ids: Vec<XCell> = levels[l - 1]
                .iter()
                .filter_map(|c| cat.identity(c).ok())
                .collect();
            levels[l].extend(ids);
            let current: Vec<XCell> = levels[l].iter().cloned().collect();
            for p in 0..l {
                for (c, a) in composable_pairs_in(&cat, &current, p) {
                    if let Ok(x) = cat.compose(p, &c, &a) {
                        levels[l].insert(x);
                    }
                }
            }
        }
        let after: usize = levels.iter().map(BTreeSet::len).sum();
        if after == before || after > cap {
            return Closure {
                levels: levels
                    .into_iter()
                    .map(|s| s.into_iter().collect())
                    .collect(),
                complete: after == before,
            };
        }
    }
}
