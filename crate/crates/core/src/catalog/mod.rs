//! Named presentations: the order-`p^5` families handled by the engine, a
//! few standard families used as cross-check fixtures, and a loader for
//! presentation files carrying metadata headers.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::pcgroup::{parse_document, PcPresentation};

mod families;

pub use families::{
    abelian, dihedral, heisenberg, phi5_2111, phi7_15, phi7_2111br, phi8_32, phi9_skeleton, quaternion, Phi9Variant,
};

/// A catalog or file-backed presentation with its metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Canonical descriptor, e.g. `phi7_2111br?p=5&r=2`.
    pub key: String,
    pub prime: Option<u64>,
    pub residue: Option<u64>,
    pub provenance: String,
    /// Caveats attached to this entry (parameter range, conventions).
    pub warnings: Vec<String>,
    pub presentation: PcPresentation,
}

/// A catalog key with its parameters and constraints, for listings.
#[derive(Clone, Copy, Debug)]
pub struct KeyInfo {
    pub name: &'static str,
    pub parameters: &'static str,
    pub description: &'static str,
}

pub const KEYS: &[KeyInfo] = &[
    KeyInfo {
        name: "phi5_2111",
        parameters: "p: prime > 3 (3 accepted with a warning)",
        description: "class 2, order p^5: [a1,a2] = [a3,a4] = a1^p = b",
    },
    KeyInfo {
        name: "phi7_15",
        parameters: "p: prime > 3 (3 accepted with a warning)",
        description: "class 3, order p^5: [a_i,a] = a_(i+1), [a1,b] = a3",
    },
    KeyInfo {
        name: "phi7_2111br",
        parameters: "p: prime > 3; r: 1 or the least quadratic non-residue mod p; literal: 0 | 1",
        description: "class 3, order p^5: [b2,b1] = b3, [b3,b1] = [b2,b5] = b4, b2^(p) = b4^r",
    },
    KeyInfo {
        name: "phi8_32",
        parameters: "p: prime > 3 (3 accepted with a warning)",
        description: "class 3, order p^5: [a1,a2] = b = a1^p, relative orders (p, p^2, p^2)",
    },
    KeyInfo {
        name: "phi9_skeleton",
        parameters: "p: prime > 3; variant: a_like | b_like",
        description: "class 4, order p^5: [a_i,a] = a_(i+1) for i = 1,2,3; power relations partly chosen",
    },
    KeyInfo {
        name: "abelian",
        parameters: "orders: comma-separated cyclic factor orders, each >= 2",
        description: "direct product of cyclic groups",
    },
    KeyInfo {
        name: "heisenberg",
        parameters: "p: prime",
        description: "unitriangular 3x3 matrices over F_p (extraspecial of exponent p for odd p)",
    },
    KeyInfo {
        name: "dihedral",
        parameters: "order: power of 2, >= 4",
        description: "dihedral group of the given order",
    },
    KeyInfo {
        name: "quaternion",
        parameters: "order: power of 2, >= 8",
        description: "(generalized) quaternion group of the given order",
    },
];

/// Parameters as `name=value` pairs.
pub type Params = BTreeMap<String, String>;

/// Splits `key?a=1&b=2` into the key and its parameters.
pub fn parse_descriptor(descriptor: &str) -> Result<(String, Params)> {
    let (key, query) = descriptor.split_once('?').unwrap_or((descriptor, ""));
    let mut params = Params::new();
    for part in query.split('&').filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected name=value, got `{part}`")))?;
        if params.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::InvalidParameter(format!("parameter `{k}` given twice")));
        }
    }
    Ok((key.to_string(), params))
}

fn take_u64(params: &mut Params, name: &str) -> Result<Option<u64>> {
    params
        .remove(name)
        .map(|v| {
            v.parse()
                .map_err(|_| Error::InvalidParameter(format!("{name} must be a non-negative integer, got `{v}`")))
        })
        .transpose()
}

fn require_u64(params: &mut Params, name: &str, key: &str) -> Result<u64> {
    take_u64(params, name)?.ok_or_else(|| Error::InvalidParameter(format!("{key} needs parameter `{name}`")))
}

/// Builds a catalog entry from `key?params`.
pub fn entry(descriptor: &str) -> Result<CatalogEntry> {
    let (key, mut params) = parse_descriptor(descriptor)?;
    let built = match key.as_str() {
        "phi5_2111" => phi5_2111(require_u64(&mut params, "p", &key)?)?,
        "phi7_15" => phi7_15(require_u64(&mut params, "p", &key)?)?,
        "phi7_2111br" => {
            let p = require_u64(&mut params, "p", &key)?;
            let r = take_u64(&mut params, "r")?.unwrap_or(1);
            let literal = take_u64(&mut params, "literal")?.unwrap_or(0) != 0;
            phi7_2111br(p, r, literal)?
        }
        "phi8_32" => phi8_32(require_u64(&mut params, "p", &key)?)?,
        "phi9_skeleton" => {
            let p = require_u64(&mut params, "p", &key)?;
            let variant = params.remove("variant").unwrap_or_else(|| "a_like".into());
            phi9_skeleton(p, variant.parse()?)?
        }
        "abelian" => {
            let orders = params
                .remove("orders")
                .ok_or_else(|| Error::InvalidParameter("abelian needs parameter `orders`".into()))?;
            let orders: Vec<u64> = orders
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::InvalidParameter(format!("invalid cyclic order `{s}`")))
                })
                .collect::<Result<_>>()?;
            abelian(&orders)?
        }
        "heisenberg" => heisenberg(require_u64(&mut params, "p", &key)?)?,
        "dihedral" => dihedral(require_u64(&mut params, "order", &key)?)?,
        "quaternion" => quaternion(take_u64(&mut params, "order")?.unwrap_or(8))?,
        _ => return Err(Error::UnknownKey(key)),
    };
    if let Some(extra) = params.keys().next() {
        return Err(Error::InvalidParameter(format!("unexpected parameter `{extra}` for {key}")));
    }
    Ok(built)
}

/// Renders an entry as a presentation file with metadata headers; the
/// output re-parses to an equal presentation.
pub fn emit(entry: &CatalogEntry) -> String {
    let mut out = String::new();
    out.push_str(&format!("key: {}\n", entry.key));
    out.push_str(&format!("provenance: {}\n", entry.provenance));
    if let Some(p) = entry.prime {
        out.push_str(&format!("prime: {p}\n"));
    }
    for w in &entry.warnings {
        out.push_str(&format!("# warning: {w}\n"));
    }
    out.push_str(&entry.presentation.to_source());
    out
}

/// Parses presentation text with optional `key:`, `provenance:` and
/// `prime:` headers and checks consistency.
pub fn load_presentation_str(text: &str, default_key: &str) -> Result<CatalogEntry> {
    let doc = parse_document(text)?;
    let prime = doc
        .metadata("prime")
        .map(|v| {
            v.parse::<u64>()
                .map_err(|_| Error::InvalidParameter(format!("invalid prime header `{v}`")))
        })
        .transpose()?;
    let report = doc.presentation.check_consistency();
    if !report.is_consistent() {
        return Err(Error::Inconsistent {
            failures: report.failures.into_iter().map(|f| f.overlap).collect(),
        });
    }
    Ok(CatalogEntry {
        key: doc.metadata("key").unwrap_or(default_key).to_string(),
        prime,
        residue: None,
        provenance: doc.metadata("provenance").unwrap_or("user file").to_string(),
        warnings: vec![],
        presentation: doc.presentation,
    })
}

/// Reads a presentation file; the key defaults to the file stem.
pub fn load_presentation_file(path: &Path) -> Result<CatalogEntry> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("file");
    load_presentation_str(&text, stem)
}

#[cfg(test)]
mod tests;
