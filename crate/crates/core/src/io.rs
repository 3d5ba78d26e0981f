//! JSON serialization of monoids and the other input formats.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{LrbError, Result};
use crate::lrb::Lrb;

/// `{"size": n, "identity": i, "names": [...], "table": [[...]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidJson {
    pub size: usize,
    pub identity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
}

impl MonoidJson {
    pub fn from_lrb(b: &Lrb) -> MonoidJson {
        MonoidJson {
            size: b.size(),
            identity: b.identity(),
            names: Some(b.names().to_vec()),
            table: b.table_rows(),
        }
    }

    /// Validates every axiom, including associativity.
    pub fn to_lrb(&self) -> Result<Lrb> {
        if self.table.len() != self.size {
            return Err(LrbError::MalformedTable(format!(
                "size is {} but the table has {} rows",
                self.size,
                self.table.len()
            )));
        }
        Lrb::new(&self.table, self.identity, self.names.clone())
    }
}

/// Canonical pretty JSON: elements reordered by R-rank, then name.
pub fn write_monoid(b: &Lrb) -> String {
    to_pretty_json(&MonoidJson::from_lrb(&b.canonical()))
}

pub fn read_monoid(text: &str) -> Result<Lrb> {
    parse_json::<MonoidJson>(text)?.to_lrb()
}

/// Parses JSON, mapping syntax and shape errors to [`LrbError::InvalidInput`].
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| LrbError::InvalidInput(format!("bad JSON: {e}")))
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}
