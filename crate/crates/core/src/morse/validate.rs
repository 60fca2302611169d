//! Combinatorial consistency of flow data: the dimension formula for
//! unparametrized moduli spaces, the shape of declared boundary strata,
//! component bookkeeping, and index bounds for the next-level Morse functions.

use std::fmt;

use serde::Serialize;

use crate::morse::flow::{FlowData, ModuliSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    /// `dim M̂(x, y) = Ind(x) - Ind(y) - 1`
    DimensionFormula,
    /// Stratum chains run from source to target with strictly falling index.
    BoundaryChain,
    /// A stratum with `k + 1` factors has dimension `dim - k`.
    BoundaryDimension,
    /// Each critical point's component is declared on its home space.
    ComponentReference,
    /// Endpoints of a higher moduli space lie in one component.
    EndpointComponent,
    /// A critical point of a Morse function on a `d`-dimensional space has
    /// index at most `d`.
    CriticalIndexBound,
}

impl CheckName {
    pub fn id(self) -> &'static str {
        match self {
            CheckName::DimensionFormula => "dimension-formula",
            CheckName::BoundaryChain => "boundary-chain",
            CheckName::BoundaryDimension => "boundary-dimension",
            CheckName::ComponentReference => "component-reference",
            CheckName::EndpointComponent => "endpoint-component",
            CheckName::CriticalIndexBound => "critical-index-bound",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check: CheckName,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, check: CheckName, subject: impl Into<String>, passed: bool, detail: String) {
        self.checks.push(Check {
            check,
            subject: subject.into(),
            passed,
            detail,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<22} {:<40} {}  {}",
                c.check.id(),
                c.subject,
                if c.passed { "PASS" } else { "FAIL" },
                c.detail
            )?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "total checks={} failed={}  {}",
            self.checks.len(),
            failed,
            if failed == 0 { "PASS" } else { "FAIL" }
        )
    }
}

fn subject(m: &ModuliSpace) -> String {
    m.key().to_string()
}

/// Expected `dim M̂(x, y)` from the indices, `None` when the space is empty.
fn expected_dim(fd: &FlowData, source: &str, target: &str) -> Option<u32> {
    let is = fd.index_of(source)?;
    let it = fd.index_of(target)?;
    (is > it).then(|| is - it - 1)
}

pub fn validate_flow_data(fd: &FlowData) -> ValidationReport {
    let mut report = ValidationReport::default();
    for m in fd.moduli() {
        let subj = subject(m);
        let (is, it) = (
            fd.index_of(&m.source).unwrap_or(0),
            fd.index_of(&m.target).unwrap_or(0),
        );
        match expected_dim(fd, &m.source, &m.target) {
            Some(d) => report.push(
                CheckName::DimensionFormula,
                &subj,
                d == m.dim,
                format!("{is} - {it} - 1 = {d}, declared {}", m.dim),
            ),
            None => report.push(
                CheckName::DimensionFormula,
                &subj,
                false,
                format!("Ind(source) = {is} is not above Ind(target) = {it}"),
            ),
        }

        for stratum in &m.boundary {
            let desc: Vec<String> = stratum
                .iter()
                .map(|(s, t)| format!("M({s}, {t})"))
                .collect();
            let desc = desc.join(" x ");
            report.push_chain(fd, m, stratum, &desc);
            report.push_stratum_dim(fd, m, stratum, &desc);
        }

        if m.level >= 2 {
            let cs = fd.point(&m.source).and_then(|p| p.component.clone());
            let ct = fd.point(&m.target).and_then(|p| p.component.clone());
            report.push(
                CheckName::EndpointComponent,
                &subj,
                cs == ct,
                format!(
                    "{:?} / {:?}",
                    cs.unwrap_or_default(),
                    ct.unwrap_or_default()
                ),
            );
        }

        for id in &m.critical_points {
            let p = fd.point(id).expect("registered");
            let comp = p.component.clone().unwrap_or_default();
            report.push(
                CheckName::ComponentReference,
                id.as_str(),
                m.components.contains(&comp),
                format!("component {comp:?} on {subj}"),
            );
            report.push(
                CheckName::CriticalIndexBound,
                id.as_str(),
                p.index <= m.dim,
                format!("Ind = {} on a {}-dimensional space", p.index, m.dim),
            );
        }
    }
    report
}

impl ValidationReport {
    fn push_chain(
        &mut self,
        fd: &FlowData,
        m: &ModuliSpace,
        stratum: &[(String, String)],
        desc: &str,
    ) {
        let mut problems = Vec::new();
        if stratum.len() < 2 {
            problems.push("a stratum needs at least two factors".to_string());
        }
        match (stratum.first(), stratum.last()) {
            (Some((s, _)), Some((_, t))) => {
                if *s != m.source || *t != m.target {
                    problems.push(format!(
                        "chain runs {s} -> {t}, space is {} -> {}",
                        m.source, m.target
                    ));
                }
            }
            _ => problems.push("empty stratum".to_string()),
        }
        for w in stratum.windows(2) {
            if w[0].1 != w[1].0 {
                problems.push(format!("{} does not continue at {}", w[1].0, w[0].1));
            }
        }
        let mut chain: Vec<&str> = stratum.iter().map(|(s, _)| s.as_str()).collect();
        if let Some((_, t)) = stratum.last() {
            chain.push(t);
        }
        let indices: Vec<Option<u32>> = chain.iter().map(|id| fd.index_of(id)).collect();
        for (id, ix) in chain.iter().zip(&indices) {
            match fd.point(id) {
                Some(p) if p.level + 1 == m.level => {}
                _ if ix.is_none() => problems.push(format!("unknown point {id}")),
                _ => problems.push(format!("{id} is not on the level of the endpoints")),
            }
        }
        if indices
            .windows(2)
            .any(|w| !matches!((w[0], w[1]), (Some(a), Some(b)) if a > b))
        {
            problems.push("indices are not strictly decreasing".to_string());
        }
        let shown: Vec<String> = indices
            .iter()
            .map(|i| i.map_or("?".into(), |i| i.to_string()))
            .collect();
        let passed = problems.is_empty();
        let detail = if passed {
            format!("indices {}", shown.join(" > "))
        } else {
            problems.join("; ")
        };
        self.push(CheckName::BoundaryChain, desc, passed, detail);
    }

    fn push_stratum_dim(
        &mut self,
        fd: &FlowData,
        m: &ModuliSpace,
        stratum: &[(String, String)],
        desc: &str,
    ) {
        let mut total = 0u32;
        let mut known = true;
        for (s, t) in stratum {
            let d = fd
                .moduli_between(s, t)
                .map(|f| f.dim)
                .or_else(|| expected_dim(fd, s, t));
            match d {
                Some(d) => total += d,
                None => known = false,
            }
        }
        let breaks = stratum.len().saturating_sub(1) as u32;
        let want = m.dim.checked_sub(breaks);
        let passed = known && want == Some(total);
        let detail = match want {
            Some(w) => format!("factor dims sum to {total}, depth-{breaks} stratum needs {w}"),
            None => format!("{breaks} breaks exceed dim {}", m.dim),
        };
        self.push(CheckName::BoundaryDimension, desc, passed, detail);
    }
}
