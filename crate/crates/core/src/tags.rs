//! Named special members, each a bundle of monomial-exclusion tags.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::Tag;
use crate::wps::Cqs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NamedAssumption {
    pub name: &'static str,
    pub families: &'static [u32],
    pub centre: Cqs,
    pub tags: &'static [&'static str],
    pub meaning: &'static str,
}

pub const REGISTRY: &[NamedAssumption] = &[
    NamedAssumption {
        name: "z3t-absent-in-g",
        families: &[102, 105],
        centre: Cqs { r: 3, b: [1, 1, 2] },
        tags: &["z3t-absent-in-g"],
        meaning: "ξ³t does not appear in g; the game ends on the anticanonical ray",
    },
    NamedAssumption {
        name: "105-alpha0",
        families: &[105],
        centre: Cqs { r: 5, b: [1, 1, 4] },
        tags: &["tv-absent-in-f"],
        meaning: "coefficient of tv in f vanishes",
    },
    NamedAssumption {
        name: "123-beta",
        families: &[123],
        centre: Cqs { r: 3, b: [1, 1, 2] },
        tags: &["y4x-absent-in-f"],
        meaning: "coefficient of y⁴x in f vanishes",
    },
    NamedAssumption {
        name: "125-beta-gamma0",
        families: &[125],
        centre: Cqs { r: 2, b: [1, 1, 1] },
        tags: &["x5t-absent-in-g", "x5z-absent-in-g", "x4v-absent-in-g"],
        meaning: "g has no x⁵t, x⁵z or x⁴v term",
    },
    NamedAssumption {
        name: "117-bi",
        families: &[117],
        centre: Cqs { r: 4, b: [1, 1, 3] },
        tags: &["z2v-absent-in-g"],
        meaning: "g has no z²v term; the link is a birational involution",
    },
    NamedAssumption {
        name: "125-bi",
        families: &[125],
        centre: Cqs { r: 2, b: [1, 1, 1] },
        tags: &["x4v-absent-in-g"],
        meaning: "g has no x⁴v term; the link is a birational involution",
    },
];

impl NamedAssumption {
    pub fn parsed_tags(&self) -> Vec<Tag> {
        self.tags.iter().map(|t| t.parse().expect("registry tags parse")).collect()
    }
}

pub fn lookup(name: &str) -> Option<&'static NamedAssumption> {
    REGISTRY.iter().find(|a| a.name == name)
}

/// Resolves registry names and raw tags alike.
pub fn resolve(items: &[String]) -> Result<Vec<Tag>> {
    let mut out: Vec<Tag> = Vec::new();
    for s in items {
        let tags = match lookup(s) {
            Some(a) => a.parsed_tags(),
            None => vec![s.parse().map_err(|e: Error| match e {
                Error::BadTag { tag, reason } => {
                    Error::BadTag { tag, reason: format!("{reason}; not a registry name either") }
                }
                other => other,
            })?],
        };
        for t in tags {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    Ok(out)
}
