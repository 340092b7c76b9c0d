//! Weighted projective spaces, coordinate points and cyclic quotient germs.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::catalog::WciFamily;
use crate::error::{Error, Result};
use crate::monomial::{Support, Tag};
use crate::Q;

/// The germ 1/r(b₁,b₂,b₃).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cqs {
    pub r: i64,
    pub b: [i64; 3],
}

impl Cqs {
    pub fn new(r: i64, b: [i64; 3]) -> Cqs {
        Cqs { r, b }
    }

    /// The `a` of a normal form 1/r(1, a, r−a).
    pub fn a(&self) -> i64 {
        self.b[1]
    }
}

impl fmt::Display for Cqs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}({},{},{})", self.r, self.b[0], self.b[1], self.b[2])
    }
}

impl FromStr for Cqs {
    type Err = Error;

    fn from_str(s: &str) -> Result<Cqs> {
        let bad = || Error::Parse(format!("bad singularity spec {s:?}, expected 1/r(b1,b2,b3)"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = t.strip_prefix("1/").ok_or_else(bad)?;
        let (r, tail) = rest.split_once('(').ok_or_else(bad)?;
        let inner = tail.strip_suffix(')').ok_or_else(bad)?;
        let r: i64 = r.parse().map_err(|_| bad())?;
        let b: Vec<i64> = inner
            .split(',')
            .map(|x| x.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        if r < 1 || b.len() != 3 {
            return Err(bad());
        }
        Ok(Cqs { r, b: [b[0], b[1], b[2]] })
    }
}

impl Serialize for Cqs {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Cqs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Cqs, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_well_formed(weights: &[i64]) -> bool {
    (0..weights.len()).all(|i| {
        weights
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(0i64, |g, (_, &w)| g.gcd(&w))
            == 1
    })
}

/// Modular inverse of `a` mod `r`, if it exists.
pub fn inverse_mod(a: i64, r: i64) -> Option<i64> {
    let e = a.rem_euclid(r).extended_gcd(&r);
    (e.gcd == 1).then(|| e.x.rem_euclid(r))
}

/// Canonical representative of a germ up to units mod r and permutation.
///
/// Terminal germs come back as 1/r(1, a, r−a) with the least possible `a`;
/// others come back with first entry 1 and the remaining pair minimal.
pub fn cqs_normal_form(s: &Cqs) -> Result<Cqs> {
    let r = s.r;
    if r < 2 || s.b.iter().any(|b| b.gcd(&r) != 1) {
        return Err(Error::IllFormedGerm(s.to_string()));
    }
    let mut best_terminal: Option<[i64; 3]> = None;
    let mut best_other: Option<[i64; 3]> = None;
    for u in 1..r {
        if u.gcd(&r) != 1 {
            continue;
        }
        let c = s.b.map(|b| (b * u).rem_euclid(r));
        for pos in 0..3 {
            if c[pos] != 1 {
                continue;
            }
            let mut rest: Vec<i64> = (0..3).filter(|&k| k != pos).map(|k| c[k]).collect();
            rest.sort();
            let cand = [1, rest[0], rest[1]];
            let slot = if (rest[0] + rest[1]) % r == 0 { &mut best_terminal } else { &mut best_other };
            if slot.is_none_or(|b| cand < b) {
                *slot = Some(cand);
            }
        }
    }
    let b = best_terminal.or(best_other).expect("a unit always sends a coprime entry to 1");
    Ok(Cqs { r, b })
}

pub fn is_terminal(s: &Cqs) -> bool {
    match cqs_normal_form(s) {
        Ok(n) => (n.b[1] + n.b[2]) % n.r == 0,
        Err(_) => false,
    }
}

/// A³ = d₁d₂/Πaᵢ.
pub fn anticanonical_degree(f: &WciFamily) -> Q {
    Q::new(f.degrees[0] * f.degrees[1], f.weights.iter().product())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointType {
    NotOnX,
    SmoothPoint,
    /// A cyclic quotient point, with the coordinates eliminated by ξ^m x_j ∈ f and ξ^m' x_k ∈ g.
    Cqs { sing: Cqs, eliminated: [usize; 2] },
    Ambiguous(Vec<Cqs>),
}

/// Singularity type of the generic member at the coordinate point of `i`.
pub fn coordinate_point_type(f: &WciFamily, i: usize) -> Result<PointType> {
    coordinate_point_type_with(&f.weights, &f.degrees, i, &f.tags()?)
}

pub fn coordinate_point_type_with(
    weights: &[i64; 6],
    degrees: &[i64; 2],
    i: usize,
    tags: &[Tag],
) -> Result<PointType> {
    let a = weights[i];
    if a == 1 {
        return Ok(PointType::SmoothPoint);
    }
    let supp = Support::generic(weights, degrees, tags);
    for h in 0..2 {
        if degrees[h] % a == 0 {
            let t = Tag::pure_power(i, (degrees[h] / a) as u32, h);
            if supp.contains(h, &t.mono) {
                return Ok(PointType::NotOnX);
            }
        }
    }
    let cands = |h: usize| -> Vec<usize> {
        (0..6)
            .filter(|&j| j != i)
            .filter(|&j| {
                let rem = degrees[h] - weights[j];
                rem > 0 && rem % a == 0 && {
                    let mut m = [0u32; 6];
                    m[i] = (rem / a) as u32;
                    m[j] += 1;
                    supp.contains(h, &m)
                }
            })
            .collect()
    };
    let (js, ks) = (cands(0), cands(1));
    let mut types: Vec<(Cqs, [usize; 2])> = Vec::new();
    for &j in &js {
        for &k in &ks {
            if j == k {
                continue;
            }
            let rest: Vec<i64> = (0..6).filter(|&l| l != i && l != j && l != k).map(|l| weights[l]).collect();
            let germ = Cqs { r: a, b: [rest[0], rest[1], rest[2]] };
            let nf = cqs_normal_form(&germ).unwrap_or(germ);
            if !types.iter().any(|(t, _)| *t == nf) {
                types.push((nf, [j, k]));
            }
        }
    }
    match types.len() {
        0 => Err(Error::NotQuasismooth(i)),
        1 => Ok(PointType::Cqs { sing: types[0].0, eliminated: types[0].1 }),
        _ => {
            let mut v: Vec<Cqs> = types.into_iter().map(|t| t.0).collect();
            v.sort();
            Ok(PointType::Ambiguous(v))
        }
    }
}

/// A basket point realised as a coordinate point of the generic member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Centre {
    pub index: usize,
    pub sing: Cqs,
    /// Every tag in force: the family's, the caller's and any normalisation tags.
    pub tags: Vec<Tag>,
    /// Pure powers dropped to move the point onto a coordinate vertex.
    pub normalization: Vec<Tag>,
}

/// Finds a coordinate point of type `sing` on the member cut out by the family's tags plus `extra`.
///
/// When the basket point sits on a stratum ℙ(r, r, …) rather than at a vertex, the
/// pure powers of one stratum coordinate are dropped so that its vertex lies on X.
pub fn locate_centre(f: &WciFamily, sing: &Cqs, extra: &[Tag]) -> Result<Centre> {
    let nf = cqs_normal_form(sing)?;
    let mut tags = f.tags()?;
    for t in extra {
        if !tags.contains(t) {
            tags.push(*t);
        }
    }
    let r = nf.r;
    let mut ambiguous = None;
    for i in (0..6).filter(|&i| f.weights[i] == r) {
        match coordinate_point_type_with(&f.weights, &f.degrees, i, &tags) {
            Ok(PointType::Cqs { sing, .. }) if sing == nf => {
                return Ok(Centre { index: i, sing: nf, tags, normalization: vec![] });
            }
            Ok(PointType::Ambiguous(c)) if c.contains(&nf) => ambiguous = Some((i, c)),
            _ => {}
        }
    }
    let stratum: Vec<usize> = (0..6).filter(|&i| f.weights[i] % r == 0).collect();
    if stratum.len() < 2 {
        return Err(ambiguous.map_or(Error::NonCoordinateCentre(nf), |(index, candidates)| Error::Ambiguous { index, candidates }));
    }
    for &i in stratum.iter().filter(|&&i| f.weights[i] == r) {
        let norm: Vec<Tag> = (0..2)
            .filter(|&h| f.degrees[h] % r == 0)
            .map(|h| Tag::pure_power(i, (f.degrees[h] / r) as u32, h))
            .filter(|t| !tags.contains(t))
            .collect();
        let mut all = tags.clone();
        all.extend(norm.iter().copied());
        if let Ok(PointType::Cqs { sing, .. }) = coordinate_point_type_with(&f.weights, &f.degrees, i, &all) {
            if sing == nf {
                return Ok(Centre { index: i, sing: nf, tags: all, normalization: norm });
            }
        }
    }
    if let Some((index, candidates)) = ambiguous {
        return Err(Error::Ambiguous { index, candidates });
    }
    Err(Error::NonCoordinateCentre(nf))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms() {
        let nf = |r, b| cqs_normal_form(&Cqs::new(r, b)).unwrap();
        assert_eq!(nf(9, [2, 2, 7]), Cqs::new(9, [1, 1, 8]));
        assert_eq!(nf(5, [2, 2, 3]), Cqs::new(5, [1, 1, 4]));
        assert_eq!(nf(2, [1, 1, 1]), Cqs::new(2, [1, 1, 1]));
        assert!(cqs_normal_form(&Cqs::new(4, [2, 1, 1])).is_err());
    }

    #[test]
    fn terminality() {
        assert!(is_terminal(&Cqs::new(7, [1, 2, 5])));
        assert!(!is_terminal(&Cqs::new(4, [1, 1, 1])));
        assert!(is_terminal(&Cqs::new(2, [1, 1, 1])));
    }

    #[test]
    fn well_formedness() {
        assert!(is_well_formed(&[1, 2, 2, 5, 7, 9]));
        assert!(!is_well_formed(&[2, 2, 4, 6, 8, 10]));
        assert!(is_well_formed(&[2, 3, 3, 4, 5, 7]));
    }

    #[test]
    fn parse_display() {
        let c: Cqs = "1/9(1,1,8)".parse().unwrap();
        assert_eq!(c, Cqs::new(9, [1, 1, 8]));
        assert_eq!(c.to_string(), "1/9(1,1,8)");
        assert!("1/9(1,1)".parse::<Cqs>().is_err());
    }
}
