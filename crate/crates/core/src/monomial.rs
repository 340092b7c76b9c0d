//! Monomial supports of generic members and monomial-exclusion tags.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exponent vector over the six ambient coordinates.
pub type Mono = [u32; 6];

/// Conventional coordinate names, in catalog weight order.
pub const NAMES: [char; 6] = ['x', 'y', 'z', 't', 'v', 'w'];

/// All monomials of weighted degree `d`.
pub fn monomials(weights: &[i64; 6], d: i64) -> Vec<Mono> {
    fn rec(w: &[i64; 6], i: usize, rem: i64, cur: &mut Mono, out: &mut Vec<Mono>) {
        if i == 6 {
            if rem == 0 {
                out.push(*cur);
            }
            return;
        }
        let mut e = 0;
        while e as i64 * w[i] <= rem {
            cur[i] = e;
            rec(w, i + 1, rem - e as i64 * w[i], cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if d >= 0 {
        rec(weights, 0, d, &mut [0; 6], &mut out);
    }
    out
}

pub fn degree(weights: &[i64; 6], m: &Mono) -> i64 {
    m.iter().zip(weights).map(|(e, w)| *e as i64 * w).sum()
}

pub fn render(m: &Mono) -> String {
    let mut s = String::new();
    for (i, &e) in m.iter().enumerate() {
        if e > 0 {
            s.push(NAMES[i]);
            if e > 1 {
                s.push_str(&e.to_string());
            }
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// A monomial declared absent from one of the two equations, written like
/// `z3t-absent-in-g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tag {
    pub mono: Mono,
    /// 0 for f (degree d₁), 1 for g (degree d₂).
    pub eq: usize,
}

impl Tag {
    pub fn pure_power(i: usize, e: u32, eq: usize) -> Tag {
        let mut mono = [0; 6];
        mono[i] = e;
        Tag { mono, eq }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-absent-in-{}", render(&self.mono), ['f', 'g'][self.eq])
    }
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tag> {
        let bad = |reason: &str| Error::BadTag { tag: s.to_string(), reason: reason.to_string() };
        let (mono_part, eq_part) = s
            .split_once("-absent-in-")
            .ok_or_else(|| bad("expected <monomial>-absent-in-<f|g>"))?;
        let eq = match eq_part {
            "f" => 0,
            "g" => 1,
            _ => return Err(bad("equation must be f or g")),
        };
        let mut mono = [0u32; 6];
        let chars: Vec<char> = mono_part.chars().collect();
        if chars.is_empty() {
            return Err(bad("empty monomial"));
        }
        let mut i = 0;
        while i < chars.len() {
            let v = NAMES
                .iter()
                .position(|&c| c == chars[i])
                .ok_or_else(|| bad("unknown variable"))?;
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let e: u32 = if start == i {
                1
            } else {
                chars[start..i].iter().collect::<String>().parse().map_err(|_| bad("bad exponent"))?
            };
            if e == 0 {
                return Err(bad("zero exponent"));
            }
            mono[v] += e;
        }
        Ok(Tag { mono, eq })
    }
}

impl serde::Serialize for Tag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Tag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Tag, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Monomial supports of f and g for the generic member, minus tagged monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct Support {
    pub eqs: [Vec<Mono>; 2],
}

impl Support {
    pub fn generic(weights: &[i64; 6], degrees: &[i64; 2], tags: &[Tag]) -> Support {
        let eqs = [0, 1].map(|h| {
            monomials(weights, degrees[h])
                .into_iter()
                .filter(|m| !tags.iter().any(|t| t.eq == h && t.mono == *m))
                .collect()
        });
        Support { eqs }
    }

    pub fn contains(&self, eq: usize, m: &Mono) -> bool {
        self.eqs[eq].contains(m)
    }
}
