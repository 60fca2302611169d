//! Critical-point labels and their canonical rewriting.
//!
//! A label is a declared critical point (`Atom`), the unique point of a
//! singleton diagonal moduli space (`Pt`), or an ordered pairing of points
//! produced by composition (`Seq`). The rewrite system
//!
//! 1. flattens nested pairings,
//! 2. drops `Pt` factors from a pairing that has a non-unit factor,
//! 3. fuses a pairing of only `Pt` factors into `Pt` of the pairing,
//!
//! is terminating and confluent; [`normalize`] computes its normal form
//! directly. Collapsing a pairing over a diagonal needs to know what the
//! label lives on, so it is done per cell in [`super::cell`].

use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Atom(String),
    Pt(Box<Label>),
    Seq(Vec<Label>),
}

impl Label {
    pub fn atom(id: impl Into<String>) -> Label {
        Label::Atom(id.into())
    }

    pub fn pt(of: Label) -> Label {
        Label::Pt(Box::new(of))
    }

    /// The pairing `(a, c)`, not normalized.
    pub fn pair(a: Label, c: Label) -> Label {
        Label::Seq(vec![a, c])
    }

    pub fn is_pt(&self) -> bool {
        matches!(self, Label::Pt(_))
    }

    /// Whether the label denotes the point of a singleton, i.e. normalizes
    /// to a `Pt`.
    pub fn is_unit(&self) -> bool {
        match self {
            Label::Atom(_) => false,
            Label::Pt(_) => true,
            Label::Seq(parts) => parts.iter().all(Label::is_unit),
        }
    }

    pub fn is_normal(&self) -> bool {
        rewrite_steps(self).is_empty()
    }

    /// Atom ids in left-to-right order.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Label::Atom(id) => out.push(id),
            Label::Pt(x) => x.collect_atoms(out),
            Label::Seq(parts) => parts.iter().for_each(|p| p.collect_atoms(out)),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(id) => f.write_str(id),
            Label::Pt(x) => write!(f, "pt({x})"),
            Label::Seq(parts) => {
                f.write_str("(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Normal form under flattening, unit absorption and `Pt` fusion.
pub fn normalize(label: &Label) -> Label {
    match label {
        Label::Atom(_) => label.clone(),
        Label::Pt(x) => Label::pt(normalize(x)),
        Label::Seq(parts) => {
            let mut flat = Vec::with_capacity(parts.len());
            for p in parts {
                match normalize(p) {
                    Label::Seq(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            if flat.iter().all(Label::is_pt) {
                let contents: Vec<Label> = flat
                    .into_iter()
                    .map(|p| match p {
                        Label::Pt(x) => *x,
                        _ => unreachable!(),
                    })
                    .collect();
                return match contents.len() {
                    0 => Label::Seq(Vec::new()),
                    1 => Label::pt(contents.into_iter().next().unwrap()),
                    _ => Label::pt(normalize(&Label::Seq(contents))),
                };
            }
            flat.retain(|p| !p.is_pt());
            if flat.len() == 1 {
                flat.pop().unwrap()
            } else {
                Label::Seq(flat)
            }
        }
    }
}

/// Every label reachable from `label` by one rewrite step, at any position.
/// Empty iff `label` is in normal form.
pub fn rewrite_steps(label: &Label) -> Vec<Label> {
    let mut out = Vec::new();
    match label {
        Label::Atom(_) => {}
        Label::Pt(x) => {
            out.extend(rewrite_steps(x).into_iter().map(Label::pt));
        }
        Label::Seq(parts) => {
            // flatten one nested pairing
            for (i, p) in parts.iter().enumerate() {
                if let Label::Seq(inner) = p {
                    let mut v = parts[..i].to_vec();
                    v.extend(inner.iter().cloned());
                    v.extend(parts[i + 1..].iter().cloned());
                    out.push(collapse_singleton(v));
                }
            }
            let pts = parts.iter().filter(|p| p.is_pt()).count();
            if pts == parts.len() && !parts.is_empty() {
                // fuse
                let contents = parts
                    .iter()
                    .map(|p| match p {
                        Label::Pt(x) => (**x).clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                out.push(Label::pt(collapse_singleton(contents)));
            } else if pts > 0 && parts.iter().any(|p| !p.is_unit()) {
                // drop one unit factor, but only next to a genuine point
                for (i, p) in parts.iter().enumerate() {
                    if p.is_pt() {
                        let mut v = parts.clone();
                        v.remove(i);
                        out.push(collapse_singleton(v));
                    }
                }
            }
            for (i, p) in parts.iter().enumerate() {
                for r in rewrite_steps(p) {
                    let mut v = parts.clone();
                    v[i] = r;
                    out.push(Label::Seq(v));
                }
            }
            if parts.len() == 1 {
                out.push(parts[0].clone());
            }
        }
    }
    out
}

fn collapse_singleton(mut parts: Vec<Label>) -> Label {
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        Label::Seq(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(id: &str) -> Label {
        Label::atom(id)
    }

    #[test]
    fn unit_factor_is_absorbed() {
        let l = Label::pair(a("a"), Label::pt(a("a")));
        assert_eq!(normalize(&l), a("a"));
    }

    #[test]
    fn pt_pairs_fuse() {
        let l = Label::pair(Label::pt(a("u")), Label::pt(a("v")));
        assert_eq!(normalize(&l), Label::pt(Label::pair(a("u"), a("v"))));
    }

    #[test]
    fn flattening() {
        let l = Label::pair(Label::pair(a("a"), a("b")), Label::pair(a("c"), a("d")));
        assert_eq!(
            normalize(&l),
            Label::Seq(vec![a("a"), a("b"), a("c"), a("d")])
        );
        let nested = Label::pair(
            Label::pair(Label::pt(a("a")), Label::pt(a("b"))),
            Label::pt(a("c")),
        );
        assert_eq!(
            normalize(&nested),
            Label::pt(Label::Seq(vec![a("a"), a("b"), a("c")]))
        );
    }

    #[test]
    fn normal_forms_have_no_steps() {
        for l in [
            a("w"),
            Label::pt(a("w")),
            Label::pt(Label::pt(a("z"))),
            Label::pair(a("wx_d"), a("xz_s")),
        ] {
            assert!(l.is_normal(), "{l}");
            assert_eq!(normalize(&l), l);
        }
        assert!(!Label::pair(a("x"), Label::pt(a("y"))).is_normal());
    }

    #[test]
    fn display() {
        let l = Label::pair(Label::pt(a("w")), Label::pair(a("a"), a("b")));
        assert_eq!(l.to_string(), "(pt(w), (a, b))");
    }
}
