//! The index functors `G: X → W` and `F: X → V`, and a checker for the
//! functor laws over a closed sample of Morse cells.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::category::Category;
use crate::error::{CellError, FunctorError};
use crate::morse::cell::{
    composable_pairs_in, normalize_cell, x_closure, XCategory, XCell, DEFAULT_CLOSURE_CAP,
};
use crate::morse::flow::FlowData;
use crate::morse::label::Label;
use crate::report::{CheckEntry, CheckReport, Failure};
use crate::v::{VCategory, VCell};
use crate::w::{WCategory, WCell};

/// Morse indices of every atom in a flow-data set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndEnv {
    indices: HashMap<String, u32>,
}

impl IndEnv {
    pub fn from_flow_data(fd: &FlowData) -> Self {
        IndEnv {
            indices: fd.points().map(|p| (p.id.clone(), p.index)).collect(),
        }
    }

    pub fn insert(&mut self, id: impl Into<String>, index: u32) {
        self.indices.insert(id.into(), index);
    }

    pub fn get(&self, id: &str) -> Option<u32> {
        self.indices.get(id).copied()
    }

    pub fn max_index(&self) -> u32 {
        self.indices.values().copied().max().unwrap_or(0)
    }
}

/// `Ind` extended additively over pairings and by zero on diagonal points.
pub fn ind(label: &Label, env: &IndEnv) -> Result<u32, FunctorError> {
    match label {
        Label::Atom(id) => env
            .get(id)
            .ok_or_else(|| FunctorError::UnknownAtom(id.clone())),
        Label::Pt(_) => Ok(0),
        Label::Seq(parts) => parts.iter().map(|p| ind(p, env)).sum(),
    }
}

/// Indices of head and spine without checking the `W` constraints.
pub fn index_profile(cell: &XCell, env: &IndEnv) -> Result<(u32, Vec<(u32, u32)>), FunctorError> {
    let head = ind(cell.head(), env)?;
    let spine = cell
        .spine()
        .iter()
        .map(|(s, t)| Ok((ind(s, env)?, ind(t, env)?)))
        .collect::<Result<_, FunctorError>>()?;
    Ok((head, spine))
}

pub fn functor_g(cell: &XCell, env: &IndEnv) -> Result<WCell, FunctorError> {
    let (head, spine) = index_profile(cell, env)?;
    WCell::new(head, spine).map_err(FunctorError::Inconsistent)
}

pub fn functor_f(cell: &XCell, env: &IndEnv) -> Result<VCell, FunctorError> {
    functor_g(cell, env).map(VCell::from_w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctorTarget {
    G,
    F,
}

impl fmt::Display for FunctorTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctorTarget::G => "g",
            FunctorTarget::F => "f",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctorLaw {
    ImageValid,
    NormalizeInvariance,
    IndexBound,
    Source,
    Target,
    Identity,
    Composite,
}

impl FunctorLaw {
    pub fn id(self) -> &'static str {
        match self {
            FunctorLaw::ImageValid => "image-valid",
            FunctorLaw::NormalizeInvariance => "normalize-invariance",
            FunctorLaw::IndexBound => "index-bound",
            FunctorLaw::Source => "source",
            FunctorLaw::Target => "target",
            FunctorLaw::Identity => "identity",
            FunctorLaw::Composite => "composite",
        }
    }
}

impl fmt::Display for FunctorLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

pub type FunctorReport = CheckReport<FunctorLaw>;

fn fail(cells: &[&XCell], detail: impl Into<String>) -> Failure {
    Failure {
        witnesses: cells.iter().map(|c| c.to_string()).collect(),
        detail: detail.into(),
    }
}

/// Checks the laws of `G` or `F` on all generated cells up to `max_level`,
/// closed under identities and composites.
pub fn check_functor_laws(
    fd: &FlowData,
    env: &IndEnv,
    max_level: usize,
    target: FunctorTarget,
) -> FunctorReport {
    let closure = x_closure(fd, max_level, DEFAULT_CLOSURE_CAP);
    let x = XCategory::new(fd.clone());
    let n = fd.max_level();
    let bound = env.max_index();
    match target {
        FunctorTarget::G => check_laws(&x, &WCategory::new(n, bound), &closure.levels, env, |c| {
            functor_g(c, env)
        }),
        FunctorTarget::F => check_laws(&x, &VCategory::new(n, bound), &closure.levels, env, |c| {
            functor_f(c, env)
        }),
    }
}

/// The law checks for any functor out of `X` that factors through the index
/// profile; `levels[l]` holds the level-`l` sample.
pub fn check_laws<T, M>(
    x: &XCategory,
    target: &T,
    levels: &[Vec<XCell>],
    env: &IndEnv,
    map: M,
) -> FunctorReport
where
    T: Category,
    M: Fn(&XCell) -> Result<T::Cell, FunctorError>,
{
    let mut report = FunctorReport::default();
    let show = |r: &Result<T::Cell, _>| match r {
        Ok(c) => target.render(c),
        Err(e) => format!("error: {e}"),
    };
    let agree = |lhs: Result<T::Cell, FunctorError>,
                 rhs: Result<T::Cell, FunctorError>,
                 cells: &[&XCell]| {
        match (&lhs, &rhs) {
            (Ok(a), Ok(b)) if target.equivalent(a, b) => Ok(()),
            _ => Err(fail(cells, format!("{} vs {}", show(&lhs), show(&rhs)))),
        }
    };
    let lift = |r: Result<T::Cell, CellError>| r.map_err(FunctorError::Inconsistent);

    for (l, cells) in levels.iter().enumerate() {
        let mut valid = CheckEntry::new(FunctorLaw::ImageValid, l, None, None);
        let mut invariant = CheckEntry::new(FunctorLaw::NormalizeInvariance, l, None, None);
        let mut bound = CheckEntry::new(FunctorLaw::IndexBound, l, None, None);
        let mut source = CheckEntry::new(FunctorLaw::Source, l, None, None);
        let mut tgt = CheckEntry::new(FunctorLaw::Target, l, None, None);
        let mut identity = CheckEntry::new(FunctorLaw::Identity, l, None, None);

        for a in cells {
            valid.record(map(a).map(|_| ()).map_err(|e| fail(&[a], e.to_string())));

            if l >= 1 {
                if !a.is_over_diagonal() {
                    bound.record(match index_profile(a, env) {
                        Ok((h, spine)) => {
                            let (i, j) = spine[0];
                            if i > j && h < i - j {
                                Ok(())
                            } else {
                                Err(fail(&[a], format!("Ind {h} not below {i} - {j}")))
                            }
                        }
                        Err(e) => Err(fail(&[a], e.to_string())),
                    });
                }
                let lhs = x
                    .source(a)
                    .map_err(FunctorError::Inconsistent)
                    .and_then(|s| map(&s));
                let rhs = map(a).and_then(|g| lift(target.source(&g)));
                source.record(agree(lhs, rhs, &[a]));
                let lhs = x
                    .target(a)
                    .map_err(FunctorError::Inconsistent)
                    .and_then(|t| map(&t));
                let rhs = map(a).and_then(|g| lift(target.target(&g)));
                tgt.record(agree(lhs, rhs, &[a]));
            }
            if l < x.max_level() {
                let lhs = x
                    .identity(a)
                    .map_err(FunctorError::Inconsistent)
                    .and_then(|i| map(&i));
                let rhs = map(a).and_then(|g| lift(target.identity(&g)));
                identity.record(agree(lhs, rhs, &[a]));
                invariant.record(profile_invariant(&a.identity_raw(), env));
            }
            invariant.record(profile_invariant(a, env));
        }
        report.entries.push(valid);
        report.entries.push(invariant);
        if l >= 1 {
            report.entries.push(bound);
            report.entries.push(source);
            report.entries.push(tgt);
        }
        if l < x.max_level() {
            report.entries.push(identity);
        }

        for p in 0..l {
            let mut comp = CheckEntry::new(FunctorLaw::Composite, l, Some(p), None);
            let mut raw_inv = CheckEntry::new(FunctorLaw::NormalizeInvariance, l, Some(p), None);
            for (c, a) in composable_pairs_in(x, cells, p) {
                let lhs = x
                    .compose(p, &c, &a)
                    .map_err(FunctorError::Inconsistent)
                    .and_then(|ca| map(&ca));
                let rhs =
                    map(&c).and_then(|gc| map(&a).and_then(|ga| lift(target.compose(p, &gc, &ga))));
                comp.record(agree(lhs, rhs, &[&c, &a]));
                match c.compose_raw(p, &a) {
                    Ok(raw) => raw_inv.record(profile_invariant(&raw, env)),
                    Err(e) => raw_inv.record(Err(fail(&[&c, &a], e.to_string()))),
                }
            }
            report.entries.push(comp);
            report.entries.push(raw_inv);
        }
    }
    report
}

/// `G(cell) = G(normalize(cell))`, compared on index profiles so that
/// unnormalized inputs need not satisfy the `W` constraints.
fn profile_invariant(cell: &XCell, env: &IndEnv) -> Result<(), Failure> {
    let normal = normalize_cell(cell);
    match (index_profile(cell, env), index_profile(&normal, env)) {
        (Ok(a), Ok(b)) if a == b => Ok(()),
        (Ok(a), Ok(b)) => Err(fail(
            &[cell],
            format!("{a:?} becomes {b:?} under normalization"),
        )),
        (Err(e), _) | (_, Err(e)) => Err(fail(&[cell], e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> IndEnv {
        let mut e = IndEnv::default();
        for (id, i) in [("w", 2), ("x", 1), ("z", 0), ("wx_d", 0), ("xz_s", 0)] {
            e.insert(id, i);
        }
        e
    }

    #[test]
    fn ind_is_additive_and_zero_on_points() {
        let e = env();
        assert_eq!(ind(&Label::atom("w"), &e), Ok(2));
        assert_eq!(ind(&Label::pt(Label::atom("w")), &e), Ok(0));
        assert_eq!(
            ind(&Label::pair(Label::atom("w"), Label::atom("x")), &e),
            Ok(3)
        );
        assert_eq!(
            ind(&Label::atom("q"), &e),
            Err(FunctorError::UnknownAtom("q".into()))
        );
    }

    #[test]
    fn images() {
        let e = env();
        let cell = XCell::new(
            Label::atom("wx_d"),
            vec![(Label::atom("w"), Label::atom("x"))],
        );
        assert_eq!(
            functor_g(&cell, &e).unwrap(),
            WCell::new(0, vec![(2, 1)]).unwrap()
        );
        assert_eq!(
            functor_f(&cell, &e).unwrap().to_string(),
            "(R^0, Hom(R^2,R^1))"
        );
        let id = normalize_cell(&XCell::object("w").identity_raw());
        assert_eq!(
            functor_g(&id, &e).unwrap(),
            WCell::new(0, vec![(2, 2)]).unwrap()
        );
    }
}
