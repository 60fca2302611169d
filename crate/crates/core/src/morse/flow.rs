//! Combinatorial iterated Morse data: critical points per level, the moduli
//! spaces between them, and the JSON document format they are read from.
//!
//! A level-`l` moduli space `M̂(x, y)` joins two level-`(l-1)` critical points
//! living on the same space. The critical points of the Morse function chosen
//! on it are the level-`l` points. Histories are never stored in the input;
//! they are rebuilt by following each point's home space downwards.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::FlowError;
use crate::morse::label::Label;

/// The on-disk flow-data document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowDocument {
    pub name: String,
    pub max_level: usize,
    pub base_points: Vec<BasePointDoc>,
    pub moduli: Vec<ModuliDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasePointDoc {
    pub id: String,
    pub index: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuliDoc {
    pub level: usize,
    pub source: String,
    pub target: String,
    pub dim: u32,
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary: Vec<Vec<EdgeDoc>>,
    pub critical_points: Vec<CritPointDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CritPointDoc {
    pub id: String,
    pub index: u32,
    pub component: String,
}

/// Where a critical point lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Home {
    Base,
    /// Index into [`FlowData::moduli`].
    Moduli(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CritPoint {
    pub id: String,
    pub index: u32,
    pub level: usize,
    pub home: Home,
    /// `None` for base points.
    pub component: Option<String>,
}

/// `M̂(source, target)` over the given history, top-down
/// (`history[0]` is the pair one level below).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuliKey {
    pub source: Label,
    pub target: Label,
    pub history: Vec<(Label, Label)>,
}

impl ModuliKey {
    pub fn is_diagonal(&self) -> bool {
        self.source == self.target
    }
}

impl std::fmt::Display for ModuliKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "M({}, {})", self.source, self.target)?;
        if !self.history.is_empty() {
            let s: Vec<String> = self.history.iter().map(|(a, _)| a.to_string()).collect();
            let t: Vec<String> = self.history.iter().map(|(_, b)| b.to_string()).collect();
            write!(f, "[{}; {}]", s.join(", "), t.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliSpace {
    pub level: usize,
    pub source: String,
    pub target: String,
    /// Pairs below this space, top-down, as atom ids.
    pub history: Vec<(String, String)>,
    pub dim: u32,
    pub components: Vec<String>,
    /// Boundary strata as chains of `(source, target)` factor pairs.
    pub boundary: Vec<Vec<(String, String)>>,
    /// Ids of the critical points living on this space, sorted.
    pub critical_points: Vec<String>,
}

impl ModuliSpace {
    pub fn key(&self) -> ModuliKey {
        ModuliKey {
            source: Label::atom(&self.source),
            target: Label::atom(&self.target),
            history: self
                .history
                .iter()
                .map(|(a, b)| (Label::atom(a), Label::atom(b)))
                .collect(),
        }
    }
}

/// Resolved, immutable flow data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowData {
    name: String,
    max_level: usize,
    points: BTreeMap<String, CritPoint>,
    moduli: Vec<ModuliSpace>,
    by_endpoints: HashMap<(String, String), usize>,
    document: FlowDocument,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> FlowError {
    FlowError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

impl FlowData {
    /// Parses and resolves a JSON flow-data document.
    pub fn parse(text: &str) -> Result<FlowData, FlowError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: FlowDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            schema(path, e.into_inner().to_string())
        })?;
        FlowData::from_document(doc)
    }

    pub fn from_document(doc: FlowDocument) -> Result<FlowData, FlowError> {
        let mut points: BTreeMap<String, CritPoint> = BTreeMap::new();
        for bp in &doc.base_points {
            if points.contains_key(&bp.id) {
                return Err(FlowError::DuplicateId(bp.id.clone()));
            }
            points.insert(
                bp.id.clone(),
                CritPoint {
                    id: bp.id.clone(),
                    index: bp.index,
                    level: 0,
                    home: Home::Base,
                    component: None,
                },
            );
        }

        for (i, m) in doc.moduli.iter().enumerate() {
            if m.level == 0 || m.level > doc.max_level {
                return Err(schema(
                    format!("moduli[{i}].level"),
                    format!("level must lie in 1..={}", doc.max_level),
                ));
            }
            if m.source == m.target {
                return Err(schema(
                    format!("moduli[{i}]"),
                    "diagonal moduli spaces are implicit and must not be listed",
                ));
            }
        }

        // Resolve level by level so every endpoint is registered before use.
        let mut order: Vec<usize> = (0..doc.moduli.len()).collect();
        order.sort_by_key(|&i| doc.moduli[i].level);

        let mut moduli: Vec<ModuliSpace> = Vec::with_capacity(doc.moduli.len());
        let mut by_endpoints = HashMap::new();
        for i in order {
            let m = &doc.moduli[i];
            let mut homes = Vec::with_capacity(2);
            for (field, id) in [("source", &m.source), ("target", &m.target)] {
                let p = points.get(id).ok_or_else(|| FlowError::UnknownId {
                    id: id.clone(),
                    path: format!("moduli[{i}].{field}"),
                })?;
                if p.level + 1 != m.level {
                    return Err(schema(
                        format!("moduli[{i}].{field}"),
                        format!(
                            "{id:?} is a level-{} point, expected level {}",
                            p.level,
                            m.level - 1
                        ),
                    ));
                }
                homes.push(p.home);
            }
            if homes[0] != homes[1] {
                return Err(schema(
                    format!("moduli[{i}]"),
                    format!("{:?} and {:?} live on different spaces", m.source, m.target),
                ));
            }
            let history = match homes[0] {
                Home::Base => Vec::new(),
                Home::Moduli(h) => {
                    let below = &moduli[h];
                    let mut hist = vec![(below.source.clone(), below.target.clone())];
                    hist.extend(below.history.iter().cloned());
                    hist
                }
            };
            let endpoints = (m.source.clone(), m.target.clone());
            if by_endpoints.contains_key(&endpoints) {
                return Err(FlowError::DuplicateId(format!(
                    "M({}, {})",
                    m.source, m.target
                )));
            }
            for (s, stratum) in m.boundary.iter().enumerate() {
                for (f, edge) in stratum.iter().enumerate() {
                    for (field, id) in [("source", &edge.source), ("target", &edge.target)] {
                        if !points.contains_key(id) {
                            return Err(FlowError::UnknownId {
                                id: id.clone(),
                                path: format!("moduli[{i}].boundary[{s}][{f}].{field}"),
                            });
                        }
                    }
                }
            }
            let idx = moduli.len();
            let mut cps = Vec::with_capacity(m.critical_points.len());
            for cp in &m.critical_points {
                if points.contains_key(&cp.id) {
                    return Err(FlowError::DuplicateId(cp.id.clone()));
                }
                points.insert(
                    cp.id.clone(),
                    CritPoint {
                        id: cp.id.clone(),
                        index: cp.index,
                        level: m.level,
                        home: Home::Moduli(idx),
                        component: Some(cp.component.clone()),
                    },
                );
                cps.push(cp.id.clone());
            }
            cps.sort();
            by_endpoints.insert(endpoints, idx);
            moduli.push(ModuliSpace {
                level: m.level,
                source: m.source.clone(),
                target: m.target.clone(),
                history,
                dim: m.dim,
                components: m.components.clone(),
                boundary: m
                    .boundary
                    .iter()
                    .map(|st| {
                        st.iter()
                            .map(|e| (e.source.clone(), e.target.clone()))
                            .collect()
                    })
                    .collect(),
                critical_points: cps,
            });
        }

        Ok(FlowData {
            name: doc.name.clone(),
            max_level: doc.max_level,
            points,
            moduli,
            by_endpoints,
            document: doc,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn document(&self) -> &FlowDocument {
        &self.document
    }

    /// Pretty JSON of the source document, byte-stable across runs.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.document).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn point(&self, id: &str) -> Option<&CritPoint> {
        self.points.get(id)
    }

    /// All critical points, sorted by id.
    pub fn points(&self) -> impl Iterator<Item = &CritPoint> {
        self.points.values()
    }

    /// Points of one level, sorted by id.
    pub fn points_at(&self, level: usize) -> impl Iterator<Item = &CritPoint> {
        self.points.values().filter(move |p| p.level == level)
    }

    /// Moduli spaces in resolution order (by level, then input order).
    pub fn moduli(&self) -> &[ModuliSpace] {
        &self.moduli
    }

    pub fn moduli_between(&self, source: &str, target: &str) -> Option<&ModuliSpace> {
        self.by_endpoints
            .get(&(source.to_string(), target.to_string()))
            .map(|&i| &self.moduli[i])
    }

    /// The space a point lives on, `None` for base points.
    pub fn home_of(&self, id: &str) -> Option<&ModuliSpace> {
        match self.points.get(id)?.home {
            Home::Base => None,
            Home::Moduli(i) => Some(&self.moduli[i]),
        }
    }

    pub fn index_of(&self, id: &str) -> Option<u32> {
        self.points.get(id).map(|p| p.index)
    }
}
