//! The deformation-family database and catalog file loading.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Tag;
use crate::wps::{self, Cqs};

const BUILTIN: &str = include_str!("../data/catalog.json");

/// Families whose shipped data could not be confirmed independently.
pub const DATA_UNVERIFIED: &[u32] = &[106];

/// Centres where the 2-ray game on Y leaves the game on the ambient and an
/// unprojection to a codimension-4 model is needed.
pub const COD4_CENTRES: &[(u32, Cqs)] = &[
    (99, Cqs { r: 3, b: [1, 1, 2] }),
    (103, Cqs { r: 3, b: [1, 1, 2] }),
    (104, Cqs { r: 5, b: [1, 1, 4] }),
    (106, Cqs { r: 3, b: [1, 1, 2] }),
    (111, Cqs { r: 7, b: [1, 1, 6] }),
];

pub const I_CB: &[u32] = &[87, 112, 113, 118, 119];
pub const I_DP: &[u32] = &[88, 89, 90, 91, 103, 114, 116, 120, 121, 122, 123, 124, 125];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Solidity {
    S,
    Cb,
    #[serde(rename = "dP")]
    DP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasketEntry {
    pub r: i64,
    pub a: [i64; 3],
    pub mult: u32,
}

impl BasketEntry {
    pub fn sing(&self) -> Cqs {
        Cqs::new(self.r, self.a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WciFamily {
    pub id: u32,
    pub weights: [i64; 6],
    pub degrees: [i64; 2],
    pub fano_index: i64,
    pub basket: Vec<BasketEntry>,
    pub solidity: Solidity,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<String>,
}

impl WciFamily {
    pub fn tags(&self) -> Result<Vec<Tag>> {
        self.assumptions.iter().map(|s| s.parse()).collect()
    }

    pub fn is_data_unverified(&self) -> bool {
        DATA_UNVERIFIED.contains(&self.id)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |invariant: String| Err(Error::Invariant { id: self.id, invariant });
        if self.weights.iter().any(|&w| w < 1) || self.degrees.iter().any(|&d| d < 1) || self.fano_index < 1 {
            return fail("weights, degrees and index must be positive".into());
        }
        if self.degrees[0] > self.degrees[1] {
            return fail("degrees must satisfy d1 <= d2".into());
        }
        let sum: i64 = self.weights.iter().sum();
        if sum - self.degrees[0] - self.degrees[1] != self.fano_index {
            return fail(format!(
                "adjunction: sum of weights {} - d1 - d2 = {} but fano_index = {}",
                sum,
                sum - self.degrees[0] - self.degrees[1],
                self.fano_index
            ));
        }
        let iota = self.fano_index;
        if iota == 4 {
            let even = self.weights.iter().filter(|&&w| w % 2 == 0).count();
            if even != 2 {
                return fail(format!("index rule: index 4 needs exactly two even weights, found {even}"));
            }
        } else {
            let multiples = self.weights.iter().filter(|&&w| w % iota == 0).count();
            if !self.weights.contains(&iota) || multiples != 2 {
                return fail(format!(
                    "index rule: need one weight equal to {iota} and exactly one other multiple of it"
                ));
            }
        }
        if !wps::is_well_formed(&self.weights) {
            return fail("weights are not well formed".into());
        }
        for b in &self.basket {
            if b.mult == 0 || !wps::is_terminal(&b.sing()) {
                return fail(format!("basket entry {} x{} is not a terminal quotient", b.sing(), b.mult));
            }
        }
        if (87..=125).contains(&self.id) {
            let expected = if I_CB.contains(&self.id) {
                Solidity::Cb
            } else if I_DP.contains(&self.id) {
                Solidity::DP
            } else {
                Solidity::S
            };
            if expected != self.solidity {
                return fail(format!("solidity should be {expected:?}"));
            }
        }
        self.tags().map_err(|e| Error::Invariant { id: self.id, invariant: e.to_string() })?;
        Ok(())
    }
}

/// How a basket entry is realised on the generic member.
#[derive(Debug, Clone, PartialEq)]
pub enum BasketCheck {
    Coordinate { index: usize },
    Normalized { index: usize, tags: Vec<Tag> },
    NonCoordinate,
    Mismatch(String),
}

pub fn check_basket(f: &WciFamily) -> Vec<(BasketEntry, BasketCheck)> {
    f.basket
        .iter()
        .map(|b| {
            let check = match wps::locate_centre(f, &b.sing(), &[]) {
                Ok(c) if c.normalization.is_empty() => BasketCheck::Coordinate { index: c.index },
                Ok(c) => BasketCheck::Normalized { index: c.index, tags: c.normalization },
                Err(Error::NonCoordinateCentre(_)) => {
                    if f.weights.iter().filter(|&&w| w % b.r == 0).count() >= 2 {
                        BasketCheck::NonCoordinate
                    } else {
                        BasketCheck::Mismatch(format!("no point of type {} found", b.sing()))
                    }
                }
                Err(e) => BasketCheck::Mismatch(e.to_string()),
            };
            (*b, check)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    families: Vec<WciFamily>,
}

impl Catalog {
    pub fn builtin() -> Catalog {
        Catalog::from_json(BUILTIN).expect("shipped catalog is valid")
    }

    pub fn from_json(s: &str) -> Result<Catalog> {
        let families: Vec<WciFamily> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Catalog::new(families)
    }

    pub fn new(families: Vec<WciFamily>) -> Result<Catalog> {
        let mut seen = std::collections::HashSet::new();
        for f in &families {
            if !seen.insert(f.id) {
                return Err(Error::DuplicateId(f.id));
            }
            f.validate()?;
        }
        Ok(Catalog { families })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Catalog> {
        let path = path.as_ref();
        let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Catalog::from_json(&s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.families).expect("families serialize")
    }

    pub fn families(&self) -> &[WciFamily] {
        &self.families
    }

    pub fn ids(&self) -> Vec<u32> {
        self.families.iter().map(|f| f.id).collect()
    }

    pub fn family(&self, id: u32) -> Result<&WciFamily> {
        self.families.iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFamily {
            id,
            available: self.ids().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", "),
        })
    }
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<WciFamily>> {
    Ok(Catalog::load(path)?.families)
}
