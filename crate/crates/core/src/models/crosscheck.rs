use std::collections::BTreeMap;

use serde::Serialize;

use super::group::enumerate_abelian_groups;
use super::ring::CompiledStatement;
use super::search::{collect_rings, AxiomSet};
use super::{ModelError, MAX_ORDER};
use crate::checker::TheoremRegistry;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub theorem: String,
    pub order: usize,
    pub group: String,
    pub assignment: Vec<(String, u8)>,
}

/// Models examined for one set of hypotheses.
#[derive(Debug, Clone, Serialize)]
pub struct HypothesisSummary {
    pub hypotheses: Vec<String>,
    pub theorems: Vec<String>,
    pub rings_by_order: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    pub max_order: usize,
    pub theorems: usize,
    pub rings_checked: usize,
    pub hypothesis_sets: Vec<HypothesisSummary>,
    pub violations: Vec<Violation>,
}

/// Evaluates every registered theorem in every ring of order up to
/// `max_order` that satisfies the theorem's context.
pub fn crosscheck(registry: &TheoremRegistry, max_order: usize) -> Result<CrosscheckReport, ModelError> {
    if max_order == 0 || max_order > MAX_ORDER {
        return Err(ModelError::OrderOutOfRange(max_order));
    }
    // Theorems sharing a context share one enumeration.
    let mut groups: BTreeMap<Vec<String>, Vec<usize>> = BTreeMap::new();
    let theorems: Vec<_> = registry.iter().collect();
    for (i, t) in theorems.iter().enumerate() {
        let mut key: Vec<String> = t.context.iter().map(|s| s.display()).collect();
        key.sort();
        groups.entry(key).or_default().push(i);
    }

    let mut report = CrosscheckReport {
        max_order,
        theorems: theorems.len(),
        rings_checked: 0,
        hypothesis_sets: Vec::new(),
        violations: Vec::new(),
    };
    for (key, members) in groups {
        let axioms = AxiomSet::new(&theorems[members[0]].context)?;
        let goals: Vec<(String, CompiledStatement)> = members
            .iter()
            .map(|&i| Ok((theorems[i].name().to_string(), CompiledStatement::new(&theorems[i].statement)?)))
            .collect::<Result<_, ModelError>>()?;
        let mut by_order = Vec::new();
        for m in 1..=max_order {
            let mut n = 0;
            for group in enumerate_abelian_groups(m)? {
                for ring in collect_rings(&group, &axioms) {
                    n += 1;
                    for (name, goal) in &goals {
                        if let Some(vals) = ring.counterexample(goal) {
                            report.violations.push(Violation {
                                theorem: name.clone(),
                                order: m,
                                group: group.label.clone(),
                                assignment: goal.statement.vars().iter().cloned().zip(vals).collect(),
                            });
                        }
                    }
                }
            }
            by_order.push((m, n));
            report.rings_checked += n;
        }
        report.hypothesis_sets.push(HypothesisSummary {
            hypotheses: key,
            theorems: goals.into_iter().map(|(n, _)| n).collect(),
            rings_by_order: by_order,
        });
    }
    Ok(report)
}
