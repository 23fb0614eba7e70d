use serde::{Deserialize, Serialize};

use super::{Calculus, CalculusError, RuleSchema};

pub const CALCULUS_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CalculusDocument {
    version: u32,
    name: String,
    rules: Vec<RuleSchema>,
    antecedent_bound: Option<usize>,
    succedent_bound: Option<usize>,
}

pub(super) fn to_json(c: &Calculus) -> String {
    let doc = CalculusDocument {
        version: CALCULUS_FORMAT_VERSION,
        name: c.name.clone(),
        rules: c.rules.clone(),
        antecedent_bound: c.antecedent_bound,
        succedent_bound: c.succedent_bound,
    };
    serde_json::to_string_pretty(&doc).expect("calculus serializes")
}

pub(super) fn from_json(text: &str) -> Result<Calculus, CalculusError> {
    let doc: CalculusDocument = serde_json::from_str(text).map_err(|e| CalculusError::Format(e.to_string()))?;
    if doc.version != CALCULUS_FORMAT_VERSION {
        return Err(CalculusError::Format(format!("unsupported version {}", doc.version)));
    }
    let c = Calculus {
        name: doc.name,
        rules: doc.rules,
        antecedent_bound: doc.antecedent_bound,
        succedent_bound: doc.succedent_bound,
    };
    if let Some(dup) = c.duplicate_rule_names().first() {
        return Err(CalculusError::Format(format!("duplicate rule name `{dup}`")));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{builtin_calculus, BuiltinId};

    #[test]
    fn builtins_round_trip() {
        for id in BuiltinId::ALL {
            let c = builtin_calculus(id);
            assert_eq!(Calculus::from_json(&c.to_json()).unwrap(), c);
        }
    }

    #[test]
    fn item_encoding() {
        let json = builtin_calculus(BuiltinId::Lk).to_json();
        assert!(json.contains(r#""kind": "ctx""#));
        assert!(json.contains(r#""kind": "fvar""#));
        assert!(json.contains(r#""op": "imp""#));
        assert!(json.contains(r#""kind": "eigenvariable_fresh""#));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(Calculus::from_json("{").is_err());
        let json = builtin_calculus(BuiltinId::Lk).to_json().replace("\"version\": 1", "\"version\": 7");
        assert!(matches!(Calculus::from_json(&json), Err(CalculusError::Format(m)) if m.contains("version")));
    }
}
