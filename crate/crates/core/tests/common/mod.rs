//! Shared helpers for the integration tests.

#![allow(dead_code)]

use ncat::morse::flow::{BasePointDoc, CritPointDoc, FlowDocument, ModuliDoc};
use rand::Rng;

/// Independent validity predicate for `W` cells given as head plus top-down
/// spine: `j <= i` at every level, and the value above a level `(i, j)` is
/// below `i - j`, or zero when `i = j`.
pub fn w_valid(head: u32, spine: &[(u32, u32)]) -> bool {
    let mut above = head;
    for &(i, j) in spine {
        if j > i {
            return false;
        }
        let ok = if i == j { above == 0 } else { above < i - j };
        if !ok {
            return false;
        }
        above = i;
    }
    true
}

/// Random flow data of depth 1 or 2 whose indices respect the dimension
/// formula and the bounds a Morse function on each space must satisfy.
pub fn random_flow_document<R: Rng + ?Sized>(rng: &mut R) -> FlowDocument {
    let max_level = rng.random_range(1..=2usize);
    let n_base = rng.random_range(2..=4usize);
    let base_points: Vec<BasePointDoc> = (0..n_base)
        .map(|k| BasePointDoc {
            id: format!("b{k}"),
            index: rng.random_range(0..=3),
        })
        .collect();

    let mut moduli = Vec::new();
    let mut level1_points: Vec<(String, u32, String, usize)> = Vec::new();
    for s in &base_points {
        for t in &base_points {
            if s.index <= t.index || !rng.random_bool(0.8) {
                continue;
            }
            let dim = s.index - t.index - 1;
            let n_comp = rng.random_range(1..=2usize);
            let components: Vec<String> = (0..n_comp).map(|c| format!("c{c}")).collect();
            let space = moduli.len();
            let mut critical_points = Vec::new();
            for (k, comp) in components.iter().enumerate() {
                for m in 0..rng.random_range(1..=2usize) {
                    let id = format!("{}{}_{k}{m}", s.id, t.id);
                    let index = rng.random_range(0..=dim);
                    level1_points.push((id.clone(), index, comp.clone(), space));
                    critical_points.push(CritPointDoc {
                        id,
                        index,
                        component: comp.clone(),
                    });
                }
            }
            moduli.push(ModuliDoc {
                level: 1,
                source: s.id.clone(),
                target: t.id.clone(),
                dim,
                components,
                boundary: Vec::new(),
                critical_points,
            });
        }
    }

    if max_level == 2 {
        for (sid, si, scomp, sspace) in &level1_points {
            for (tid, ti, tcomp, tspace) in &level1_points {
                if sspace != tspace || scomp != tcomp || si <= ti {
                    continue;
                }
                let dim = si - ti - 1;
                moduli.push(ModuliDoc {
                    level: 2,
                    source: sid.clone(),
                    target: tid.clone(),
                    dim,
                    components: vec!["c0".into()],
                    boundary: Vec::new(),
                    critical_points: vec![CritPointDoc {
                        id: format!("{sid}~{tid}"),
                        index: rng.random_range(0..=dim),
                        component: "c0".into(),
                    }],
                });
            }
        }
    }

    FlowDocument {
        name: "random".into(),
        max_level,
        base_points,
        moduli,
    }
}
