//! JSON records printed by `fubpark map`.

use serde::{Deserialize, Serialize};

use fubini_park::bijections::ExceedancePointer;
use fubini_park::{FubiniRanking, OrderedSetPartition, PreferenceList};

/// The object a record carries, tagged by kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Object {
    Pf(PreferenceList),
    Upf(PreferenceList),
    Fr(FubiniRanking),
    Osp(OrderedSetPartition),
    ExceedancePointer(ExceedancePointer),
}

/// Derived facts about the payload; absent fields are omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_minima: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position_vector: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lucky: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_blocks: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceedances: Option<Vec<usize>>,
}

impl Meta {
    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }
}

/// `{"kind": ..., "payload": ..., "meta": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    #[serde(flatten)]
    pub object: Object,
    #[serde(default, skip_serializing_if = "Meta::is_empty")]
    pub meta: Meta,
}

impl OutputRecord {
    pub fn new(object: Object) -> Self {
        Self {
            object,
            meta: Meta::default(),
        }
    }

    pub fn with_meta(object: Object, meta: Meta) -> Self {
        Self { object, meta }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let rec = OutputRecord::with_meta(
            Object::Upf(PreferenceList::new(vec![1, 1, 2]).unwrap()),
            Meta {
                lucky: Some(vec![1]),
                ..Meta::default()
            },
        );
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"kind":"upf","payload":[1,1,2],"meta":{"lucky":[1]}}"#);
        assert_eq!(serde_json::from_str::<OutputRecord>(&json).unwrap(), rec);

        let rec = OutputRecord::new(Object::Osp(OrderedSetPartition::new(vec![vec![1, 2]]).unwrap()));
        assert_eq!(serde_json::to_string(&rec).unwrap(), r#"{"kind":"osp","payload":[[1,2]]}"#);
    }

    #[test]
    fn invalid_payload_rejected() {
        let bad = r#"{"kind":"fr","payload":[2,2]}"#;
        assert!(serde_json::from_str::<OutputRecord>(bad).is_err());
        let bad = r#"{"kind":"exceedance_pointer","payload":{"perm":[2,1],"index":2}}"#;
        assert!(serde_json::from_str::<OutputRecord>(bad).is_err());
    }
}
