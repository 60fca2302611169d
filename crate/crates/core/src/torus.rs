//! The height function `cos(2πx) + cos(2πy)` on the two-torus as flow data,
//! with the expected results written out by hand.
//!
//! Critical points: the maximum `w`, saddles `x` and `y`, the minimum `z`.
//! Each of `M̂(w,x)`, `M̂(w,y)`, `M̂(x,z)`, `M̂(y,z)` consists of two points,
//! in components `d` and `s`. `M̂(w,z)` is four intervals; the chosen Morse
//! function on each has its maximum at a `(w,y,z)` broken line and its
//! minimum at a `(w,x,z)` broken line, so each interval contributes one
//! level-2 space joining the two.

use crate::morse::cell::XCell;
use crate::morse::flow::{BasePointDoc, CritPointDoc, EdgeDoc, FlowData, FlowDocument, ModuliDoc};
use crate::morse::label::Label;
use crate::w::WCell;

/// The four intervals of `M̂(w,z)`: component, maximum, minimum.
pub const INTERVALS: [(&str, &str, &str); 4] = [
    ("sq", "wy_s.yz_d", "wx_d.xz_s"),
    ("tri", "wy_d.yz_d", "wx_d.xz_d"),
    ("spade", "wy_d.yz_s", "wx_s.xz_d"),
    ("club", "wy_s.yz_s", "wx_s.xz_s"),
];

const SIDES: [&str; 2] = ["d", "s"];

fn point(id: &str, index: u32, component: &str) -> CritPointDoc {
    CritPointDoc {
        id: id.into(),
        index,
        component: component.into(),
    }
}

fn edge(source: &str, target: &str) -> EdgeDoc {
    EdgeDoc {
        source: source.into(),
        target: target.into(),
    }
}

pub fn torus_document() -> FlowDocument {
    let base_points = [("w", 2), ("x", 1), ("y", 1), ("z", 0)]
        .into_iter()
        .map(|(id, index)| BasePointDoc {
            id: id.into(),
            index,
        })
        .collect();

    let mut moduli = Vec::new();
    for (s, t) in [("w", "x"), ("w", "y"), ("x", "z"), ("y", "z")] {
        moduli.push(ModuliDoc {
            level: 1,
            source: s.into(),
            target: t.into(),
            dim: 0,
            components: SIDES.iter().map(|c| c.to_string()).collect(),
            boundary: Vec::new(),
            critical_points: SIDES
                .iter()
                .map(|c| point(&format!("{s}{t}_{c}"), 0, c))
                .collect(),
        });
    }
    let mut critical_points = Vec::new();
    for (comp, max, min) in INTERVALS {
        critical_points.push(point(max, 1, comp));
        critical_points.push(point(min, 0, comp));
    }
    moduli.push(ModuliDoc {
        level: 1,
        source: "w".into(),
        target: "z".into(),
        dim: 1,
        components: INTERVALS.iter().map(|(c, _, _)| c.to_string()).collect(),
        boundary: vec![
            vec![edge("w", "x"), edge("x", "z")],
            vec![edge("w", "y"), edge("y", "z")],
        ],
        critical_points,
    });
    for (comp, max, min) in INTERVALS {
        moduli.push(ModuliDoc {
            level: 2,
            source: max.into(),
            target: min.into(),
            dim: 0,
            components: vec![comp.into()],
            boundary: Vec::new(),
            critical_points: vec![point(&format!("m_{comp}"), 0, comp)],
        });
    }

    FlowDocument {
        name: "torus".into(),
        max_level: 2,
        base_points,
        moduli,
    }
}

pub fn torus_flow_data() -> FlowData {
    FlowData::from_document(torus_document()).expect("torus fixture resolves")
}

/// Shape classes of generated torus cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellClass {
    Point(&'static str),
    /// A point of `M̂(s, t)` for a dimension-0 base space.
    Flow(&'static str, &'static str),
    Maximum,
    Minimum,
    /// The point over the diagonal at a point of `M̂(s, t)`.
    Down(&'static str, &'static str),
    /// A point of a level-2 space.
    Suit,
}

/// The hand-written expectations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusOracle {
    /// `|X(0)|, |X(1)|, |X(2)|`.
    pub sizes: [usize; 3],
    pub g_images: Vec<(CellClass, WCell)>,
    /// `|X(1) ×_0 X(1)|`.
    pub pairs_1_0: usize,
    /// `|X(2) ×_1 X(2)|`.
    pub pairs_2_1: usize,
    /// Listed members of `X(2) ×_0 X(2)` as `(C, A)`.
    pub listed_pairs_2_0: Vec<(XCell, XCell)>,
}

impl TorusOracle {
    pub fn g_of(&self, class: CellClass) -> Option<&WCell> {
        self.g_images
            .iter()
            .find(|(c, _)| *c == class)
            .map(|(_, w)| w)
    }
}

fn w(head: u32, spine: &[(u32, u32)]) -> WCell {
    WCell::new(head, spine.to_vec()).expect("oracle entry is a W cell")
}

fn down(id: &str, s: &str, t: &str) -> XCell {
    let l = Label::atom(id);
    XCell::new(
        Label::pt(l.clone()),
        vec![(l.clone(), l), (Label::atom(s), Label::atom(t))],
    )
}

pub fn torus_expected() -> TorusOracle {
    use CellClass::*;
    let g_images = vec![
        (Point("w"), w(2, &[])),
        (Point("x"), w(1, &[])),
        (Point("y"), w(1, &[])),
        (Point("z"), w(0, &[])),
        (Flow("w", "x"), w(0, &[(2, 1)])),
        (Flow("w", "y"), w(0, &[(2, 1)])),
        (Flow("x", "z"), w(0, &[(1, 0)])),
        (Flow("y", "z"), w(0, &[(1, 0)])),
        (Minimum, w(0, &[(2, 0)])),
        (Maximum, w(1, &[(2, 0)])),
        (Down("w", "x"), w(0, &[(0, 0), (2, 1)])),
        (Down("w", "y"), w(0, &[(0, 0), (2, 1)])),
        (Down("x", "z"), w(0, &[(0, 0), (1, 0)])),
        (Down("y", "z"), w(0, &[(0, 0), (1, 0)])),
        (Suit, w(0, &[(1, 0), (2, 0)])),
    ];
    let mut listed = Vec::new();
    for q in ["x", "y"] {
        for i in SIDES {
            listed.push((
                down(&format!("{q}z_{i}"), q, "z"),
                down(&format!("w{q}_{i}"), "w", q),
            ));
        }
    }
    TorusOracle {
        sizes: [4, 16, 12],
        g_images,
        pairs_1_0: 8,
        pairs_2_1: 8,
        listed_pairs_2_0: listed,
    }
}

fn base(l: &Label) -> Option<&'static str> {
    match l {
        Label::Atom(id) => ["w", "x", "y", "z"].into_iter().find(|b| b == id),
        _ => None,
    }
}

/// The class of a generated torus cell, `None` for composites and cells
/// outside the fixture.
pub fn class_of(cell: &XCell) -> Option<CellClass> {
    let spine = cell.spine();
    match cell.level() {
        0 => base(cell.head()).map(CellClass::Point),
        1 => {
            let (s, t) = (base(&spine[0].0)?, base(&spine[0].1)?);
            let Label::Atom(id) = cell.head() else {
                return None;
            };
            if (s, t) == ("w", "z") {
                if INTERVALS.iter().any(|(_, max, _)| max == id) {
                    Some(CellClass::Maximum)
                } else if INTERVALS.iter().any(|(_, _, min)| min == id) {
                    Some(CellClass::Minimum)
                } else {
                    None
                }
            } else {
                Some(CellClass::Flow(s, t))
            }
        }
        2 => {
            let (s, t) = (base(&spine[1].0)?, base(&spine[1].1)?);
            if cell.is_over_diagonal() && matches!(spine[0].0, Label::Atom(_)) {
                Some(CellClass::Down(s, t))
            } else if let Label::Atom(id) = cell.head() {
                id.starts_with("m_").then_some(CellClass::Suit)
            } else {
                None
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_resolves() {
        let fd = torus_flow_data();
        assert_eq!(fd.points_at(0).count(), 4);
        assert_eq!(
            fd.moduli_between("w", "z").unwrap().critical_points.len(),
            8
        );
        assert_eq!(fd.moduli_between("w", "x").unwrap().dim, 0);
    }

    #[test]
    fn history_of_level_two_spaces() {
        let fd = torus_flow_data();
        let m = fd.moduli_between("wy_s.yz_d", "wx_d.xz_s").unwrap();
        assert_eq!(m.history, vec![("w".to_string(), "z".to_string())]);
    }
}
