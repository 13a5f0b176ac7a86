use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::LocalComponent;
use crate::error::{Error, Result};
use crate::groups::{FinAbGroup, GroupElement, Subgroup};

/// Rule applied to every prime without an explicit entry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DefaultRule {
    #[default]
    Any,
    Unramified,
    InertiaDividesQ,
}

/// Named predicates on the pair (inertia, decomposition group).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalPredicate {
    DecompositionCyclic,
    DecompositionNotEqual(Subgroup),
    InertiaDividesQOrDecompositionCyclic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Any,
    Unramified,
    InertiaDividesQ,
    AllowedComponents(Vec<LocalComponent>),
    FullLocalPredicate(LocalPredicate),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalConditionSet {
    pub default: DefaultRule,
    pub rules: BTreeMap<u64, Rule>,
}

impl From<DefaultRule> for Rule {
    fn from(d: DefaultRule) -> Rule {
        match d {
            DefaultRule::Any => Rule::Any,
            DefaultRule::Unramified => Rule::Unramified,
            DefaultRule::InertiaDividesQ => Rule::InertiaDividesQ,
        }
    }
}

fn smallest_prime(g: &FinAbGroup) -> u64 {
    g.smallest_prime().unwrap_or(1)
}

impl LocalPredicate {
    pub fn holds(&self, inertia: &Subgroup, decomposition: &Subgroup) -> bool {
        match self {
            LocalPredicate::DecompositionCyclic => decomposition.is_cyclic(),
            LocalPredicate::DecompositionNotEqual(a) => decomposition != a,
            LocalPredicate::InertiaDividesQOrDecompositionCyclic => {
                smallest_prime(inertia.ambient()) % inertia.order() == 0 || decomposition.is_cyclic()
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LocalPredicate::DecompositionCyclic => "decomposition_cyclic",
            LocalPredicate::DecompositionNotEqual(_) => "decomposition_not_equal",
            LocalPredicate::InertiaDividesQOrDecompositionCyclic => {
                "inertia_divides_q_or_decomposition_cyclic"
            }
        }
    }
}

impl Rule {
    /// Verdict from the unit part alone, or `None` if the rule needs the
    /// decomposition group.
    pub fn admits_component(&self, g: &FinAbGroup, comp: &LocalComponent) -> Option<bool> {
        match self {
            Rule::Any => Some(true),
            Rule::Unramified => Some(comp.is_trivial()),
            Rule::InertiaDividesQ => Some(smallest_prime(g) % comp.inertia(g).order() == 0),
            Rule::AllowedComponents(list) => Some(list.contains(comp)),
            Rule::FullLocalPredicate(_) => None,
        }
    }

    pub fn needs_decomposition(&self) -> bool {
        matches!(self, Rule::FullLocalPredicate(_))
    }
}

/// Whether the local data at one prime satisfies a rule.
pub fn matches_condition(
    rule: &Rule,
    inertia: &Subgroup,
    decomposition: &Subgroup,
    comp: &LocalComponent,
) -> bool {
    match rule {
        Rule::Any => true,
        Rule::Unramified => inertia.is_trivial(),
        Rule::InertiaDividesQ => smallest_prime(inertia.ambient()) % inertia.order() == 0,
        Rule::AllowedComponents(list) => list.contains(comp),
        Rule::FullLocalPredicate(pred) => pred.holds(inertia, decomposition),
    }
}

impl LocalConditionSet {
    pub fn any() -> Self {
        Self::default()
    }

    pub fn with_default(default: DefaultRule) -> Self {
        LocalConditionSet { default, rules: BTreeMap::new() }
    }

    pub fn with_rule(mut self, p: u64, rule: Rule) -> Self {
        self.rules.insert(p, rule);
        self
    }

    pub fn rule_at(&self, p: u64) -> Rule {
        self.rules.get(&p).cloned().unwrap_or_else(|| self.default.into())
    }

    pub fn is_unconditional(&self) -> bool {
        self.default == DefaultRule::Any && self.rules.values().all(|r| *r == Rule::Any)
    }

    /// Parses the JSON list form, e.g.
    /// `[{"default": "any"}, {"p": 3, "rule": "unramified"}]`.
    pub fn from_json(g: &FinAbGroup, v: &Value) -> Result<Self> {
        let entries = v
            .as_array()
            .ok_or_else(|| Error::Parse("conditions must be a JSON list".into()))?;
        let mut set = LocalConditionSet::default();
        let mut saw_default = false;
        for e in entries {
            if let Some(d) = e.get("default") {
                if saw_default {
                    return Err(Error::Parse("more than one default entry".into()));
                }
                saw_default = true;
                set.default = match d.as_str() {
                    Some("any") => DefaultRule::Any,
                    Some("unramified") => DefaultRule::Unramified,
                    Some("inertia_divides_q") => DefaultRule::InertiaDividesQ,
                    _ => return Err(Error::Parse(format!("unknown default rule {d}"))),
                };
                continue;
            }
            let p = e
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("condition without prime: {e}")))?;
            crate::arith::require_prime(p)?;
            let rule = match e.get("rule").and_then(Value::as_str) {
                Some("any") => Rule::Any,
                Some("unramified") => Rule::Unramified,
                Some("inertia_divides_q") => Rule::InertiaDividesQ,
                Some("allowed_components") => {
                    let list = e
                        .get("components")
                        .and_then(Value::as_array)
                        .ok_or_else(|| Error::Parse("allowed_components needs a list".into()))?;
                    let comps = list
                        .iter()
                        .map(|c| LocalComponent::from_json(g, c))
                        .collect::<Result<Vec<_>>>()?;
                    if comps.iter().any(|c| c.p() != p) {
                        return Err(Error::Parse(format!("component listed at the wrong prime {p}")));
                    }
                    Rule::AllowedComponents(comps)
                }
                Some("predicate") => Rule::FullLocalPredicate(parse_predicate(g, e)?),
                other => return Err(Error::Parse(format!("unknown rule {other:?}"))),
            };
            if set.rules.insert(p, rule).is_some() {
                return Err(Error::Parse(format!("two rules for p = {p}")));
            }
        }
        Ok(set)
    }

    pub fn to_json(&self) -> Value {
        let d = match self.default {
            DefaultRule::Any => "any",
            DefaultRule::Unramified => "unramified",
            DefaultRule::InertiaDividesQ => "inertia_divides_q",
        };
        let mut out = vec![json!({"default": d})];
        for (&p, rule) in &self.rules {
            out.push(match rule {
                Rule::Any => json!({"p": p, "rule": "any"}),
                Rule::Unramified => json!({"p": p, "rule": "unramified"}),
                Rule::InertiaDividesQ => json!({"p": p, "rule": "inertia_divides_q"}),
                Rule::AllowedComponents(list) => json!({
                    "p": p,
                    "rule": "allowed_components",
                    "components": list.iter().map(LocalComponent::to_json).collect::<Vec<_>>(),
                }),
                Rule::FullLocalPredicate(pred) => {
                    let mut v = json!({"p": p, "rule": "predicate", "name": pred.name()});
                    if let LocalPredicate::DecompositionNotEqual(a) = pred {
                        v["subgroup"] = json!(a.generators().iter().map(|x| x.coords.clone()).collect::<Vec<_>>());
                    }
                    v
                }
            });
        }
        Value::Array(out)
    }
}

fn parse_predicate(g: &FinAbGroup, e: &Value) -> Result<LocalPredicate> {
    match e.get("name").and_then(Value::as_str) {
        Some("decomposition_cyclic") => Ok(LocalPredicate::DecompositionCyclic),
        Some("inertia_divides_q_or_decomposition_cyclic") => {
            Ok(LocalPredicate::InertiaDividesQOrDecompositionCyclic)
        }
        Some("decomposition_not_equal") => {
            let gens = e
                .get("subgroup")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("decomposition_not_equal needs \"subgroup\"".into()))?;
            let elems = gens
                .iter()
                .map(|x| {
                    let c: Vec<u64> = serde_json::from_value(x.clone())?;
                    g.element(c)
                })
                .collect::<Result<Vec<GroupElement>>>()?;
            Ok(LocalPredicate::DecompositionNotEqual(Subgroup::generated(g, &elems)))
        }
        other => Err(Error::Parse(format!("unknown predicate {other:?}"))),
    }
}
