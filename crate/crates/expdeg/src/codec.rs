//! JSON interchange: strict decoding with field-level error paths, plus the
//! reproducibility manifest the command-line front end records.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Serializes `BTreeMap<u64, u32>` with stringified keys, the JSON object
/// form used by every level -> multiplicity table.
pub mod level_map {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<u64, u32>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        let as_strings: BTreeMap<String, u32> =
            map.iter().map(|(&k, &v)| (k.to_string(), v)).collect();
        as_strings.serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<BTreeMap<u64, u32>, D::Error> {
        let as_strings = BTreeMap::<String, u32>::deserialize(deserializer)?;
        as_strings
            .into_iter()
            .map(|(k, v)| {
                k.parse::<u64>()
                    .map(|key| (key, v))
                    .map_err(|_| D::Error::custom(format!("level key `{k}` is not an integer")))
            })
            .collect()
    }
}

/// Serializes `BTreeMap<usize, V>` with stringified keys.
pub mod count_map {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, V: Serialize>(
        map: &BTreeMap<usize, V>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        let as_strings: BTreeMap<String, &V> =
            map.iter().map(|(&k, v)| (k.to_string(), v)).collect();
        as_strings.serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, V: Deserialize<'de>>(
        deserializer: D,
    ) -> Result<BTreeMap<usize, V>, D::Error> {
        let as_strings = BTreeMap::<String, V>::deserialize(deserializer)?;
        as_strings
            .into_iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|key| (key, v))
                    .map_err(|_| D::Error::custom(format!("count key `{k}` is not an integer")))
            })
            .collect()
    }
}

/// Decodes a typed artifact from JSON text. Unknown fields are rejected and
/// the error carries the path of the offending field.
pub fn decode<T: DeserializeOwned>(text: &str) -> Result<T, Error> {
    let de = &mut serde_json::Deserializer::from_str(text);
    match serde_path_to_error(de) {
        Ok(v) => Ok(v),
        Err((path, message)) => Err(Error::Schema { path, message }),
    }
}

fn serde_path_to_error<'de, T: Deserialize<'de>>(
    de: &mut serde_json::Deserializer<impl serde_json::de::Read<'de>>,
) -> Result<T, (String, String)> {
    // serde_json reports the line/column; the message itself names the field
    // for unknown-field and missing-field failures.
    T::deserialize(de).map_err(|e| {
        let path = format!("line {}, column {}", e.line(), e.column());
        (path, e.to_string())
    })
}

/// Encodes an artifact as pretty JSON with a trailing newline. Paired with
/// [`decode`] this is the identity on every crate type.
pub fn encode<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("crate types serialize infallibly");
    s.push('\n');
    s
}

/// What a command-line invocation was: enough to replay it exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub command: String,
    /// Input file paths, or `-` for standard input.
    pub inputs: Vec<String>,
    /// Flag map, stringly typed on both sides.
    #[serde(default)]
    pub options: BTreeMap<String, String>,
    #[serde(default)]
    pub seed: u64,
}

impl Manifest {
    pub fn new(command: impl Into<String>) -> Self {
        Manifest {
            command: command.into(),
            inputs: Vec::new(),
            options: BTreeMap::new(),
            seed: 0,
        }
    }

    pub fn input(mut self, path: impl Into<String>) -> Self {
        self.inputs.push(path.into());
        self
    }

    pub fn option(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.options.insert(key.into(), value.to_string());
        self
    }
}
