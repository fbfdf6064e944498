//! JSON records. Big integers are decimal strings.

use lintersect::bounds::{BoundReport, Universe};
use lintersect::qspace::{Subspace, SubspaceFamily};
use lintersect::search::{Conformance, SearchProblem, SearchResult, Witness};
use lintersect::setfamily::{IntersectionSpec, LSet, Mode, SizeRule, Subset, SubsetFamily};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemRecord {
    pub universe: String,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u32>,
    #[serde(rename = "L")]
    pub l: Vec<u32>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none", default)]
    pub k: Option<Vec<u32>>,
    pub t: usize,
    pub size_rule: String,
    pub sperner: bool,
}

impl ProblemRecord {
    pub fn from_problem(p: &SearchProblem) -> Self {
        let (universe, n, q) = match p.universe {
            Universe::Sets { n } => ("sets", n, None),
            Universe::Subspaces { n, q } => ("subspaces", n, Some(q)),
        };
        ProblemRecord {
            universe: universe.into(),
            n,
            q,
            l: p.spec.l().values().to_vec(),
            k: p.spec.k().map(<[u32]>::to_vec),
            t: p.spec.t(),
            size_rule: p.spec.size_rule().to_string(),
            sperner: p.sperner,
        }
    }

    pub fn universe(&self) -> Result<Universe, String> {
        match (self.universe.as_str(), self.q) {
            ("sets", _) => Ok(Universe::Sets { n: self.n }),
            ("subspaces", Some(q)) => Ok(Universe::Subspaces { n: self.n, q }),
            (other, _) => Err(format!("unknown universe `{other}`")),
        }
    }

    pub fn spec(&self) -> Result<IntersectionSpec, String> {
        let l = LSet::new(self.l.clone()).map_err(|e| e.to_string())?;
        let rule: SizeRule = self.size_rule.parse().map_err(|e: String| e)?;
        let mode = if self.t == 2 { Mode::Pairwise } else { Mode::TWise };
        IntersectionSpec::new(l, self.k.clone(), self.t, mode, rule).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub theorem: String,
    pub value: String,
    pub applies: bool,
    pub strict: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl From<&BoundReport> for BoundRecord {
    fn from(b: &BoundReport) -> Self {
        BoundRecord {
            theorem: b.theorem.id().into(),
            value: b.value.to_string(),
            applies: b.hypotheses_met,
            strict: b.strict(),
            notes: b.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub problem: ProblemRecord,
    pub optimum: usize,
    pub witness: Value,
    pub bounds: Vec<BoundRecord>,
    pub nodes: u64,
    pub completed: bool,
    #[serde(default)]
    pub tight: Vec<String>,
    #[serde(default)]
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub regime: Option<String>,
}

impl SearchRecord {
    pub fn new(p: &SearchProblem, r: &SearchResult, conf: &Conformance) -> Self {
        SearchRecord {
            problem: ProblemRecord::from_problem(p),
            optimum: r.optimum,
            witness: witness_json(&r.witness),
            bounds: r.bound_reports.iter().map(BoundRecord::from).collect(),
            nodes: r.nodes_explored,
            completed: r.completed,
            tight: conf.tight.iter().map(|t| t.id().to_string()).collect(),
            violations: conf.violations.iter().map(|t| t.id().to_string()).collect(),
            regime: None,
        }
    }
}

/// Sets as element lists; subspaces as lists of basis rows written as digit
/// strings.
pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Sets(f) => Value::from(
            f.members()
                .iter()
                .map(|s| Value::from(s.elements().collect::<Vec<u32>>()))
                .collect::<Vec<_>>(),
        ),
        Witness::Subspaces(f) => Value::from(
            f.members()
                .iter()
                .map(|s| {
                    Value::from(
                        s.basis()
                            .iter()
                            .map(|r| r.iter().map(|d| char::from_digit(*d, 10).unwrap_or('?')).collect::<String>())
                            .collect::<Vec<_>>(),
                    )
                })
                .collect::<Vec<_>>(),
        ),
    }
}

/// Inverse of [`witness_json`].
pub fn witness_from_json(universe: Universe, v: &Value) -> Result<Witness, String> {
    let members = v.as_array().ok_or("witness must be an array")?;
    match universe {
        Universe::Sets { n } => {
            let mut sets = Vec::with_capacity(members.len());
            for m in members {
                let elems = m.as_array().ok_or("set members must be arrays")?;
                let elems: Vec<u32> = elems
                    .iter()
                    .map(|e| e.as_u64().map(|x| x as u32).ok_or("elements must be integers"))
                    .collect::<Result<_, _>>()?;
                if elems.iter().any(|&e| e == 0 || e > n) {
                    return Err(format!("element outside 1..{n}"));
                }
                sets.push(Subset::from_elements(elems));
            }
            SubsetFamily::new(n, sets).map(Witness::Sets).map_err(|e| e.to_string())
        }
        Universe::Subspaces { n, q } => {
            let mut spaces = Vec::with_capacity(members.len());
            for m in members {
                let rows = m.as_array().ok_or("subspace members must be arrays of rows")?;
                let rows: Vec<Vec<u32>> = rows
                    .iter()
                    .map(|r| {
                        let r = r.as_str().ok_or("rows must be digit strings")?;
                        r.chars().map(|c| c.to_digit(10).ok_or("rows must be digit strings")).collect()
                    })
                    .collect::<Result<_, &str>>()?;
                spaces.push(Subspace::span(n, q, rows).map_err(|e| e.to_string())?);
            }
            SubspaceFamily::new(n, q, spaces).map(Witness::Subspaces).map_err(|e| e.to_string())
        }
    }
}
