//! Numerical tests that rule out maximal centres.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::blowup::KawamataBlowup;
use crate::catalog::WciFamily;
use crate::error::{Error, Result};
use crate::wps::{self, Cqs};
use crate::Q;

/// The class anti·(−K_Y) + exc·E.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass2 {
    #[serde(with = "crate::qstr")]
    pub anti: Q,
    #[serde(with = "crate::qstr")]
    pub exc: Q,
}

impl DivisorClass2 {
    pub fn new(anti: Q, exc: Q) -> DivisorClass2 {
        DivisorClass2 { anti, exc }
    }

    pub fn anticanonical() -> DivisorClass2 {
        DivisorClass2::new(Q::from_integer(1), Q::from_integer(0))
    }

    pub fn exceptional() -> DivisorClass2 {
        DivisorClass2::new(Q::from_integer(0), Q::from_integer(1))
    }

    pub fn scale(self, c: Q) -> DivisorClass2 {
        DivisorClass2::new(self.anti * c, self.exc * c)
    }
}

impl std::ops::Add for DivisorClass2 {
    type Output = DivisorClass2;
    fn add(self, o: DivisorClass2) -> DivisorClass2 {
        DivisorClass2::new(self.anti + o.anti, self.exc + o.exc)
    }
}

impl fmt::Display for DivisorClass2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "-({})K_Y + ({})E", self.anti, self.exc)
    }
}

/// E³ = r²/(a(r−a)) for the Kawamata blowup of 1/r(1,a,r−a).
pub fn e_cubed(s: &Cqs) -> Result<Q> {
    if !wps::is_terminal(s) {
        return Err(Error::NonTerminal(*s));
    }
    let n = wps::cqs_normal_form(s)?;
    let a = n.a();
    Ok(Q::new(n.r * n.r, a * (n.r - a)))
}

/// Product of three classes on the Kawamata blowup of `s` on a member of `f`.
///
/// Uses −K_Y = φ*(−K_X) − (1/r)E, (φ*(−K_X))³ = ι³A³ and vanishing mixed terms.
pub fn triple_product_at(f: &WciFamily, s: &Cqs, c: [DivisorClass2; 3]) -> Result<Q> {
    let e3 = e_cubed(s)?;
    let iota = Q::from_integer(f.fano_index);
    let p3 = iota * iota * iota * wps::anticanonical_degree(f);
    let r = Q::from_integer(s.r);
    let pull = c[0].anti * c[1].anti * c[2].anti;
    let exc: Q = c.iter().map(|x| x.exc - x.anti / r).product();
    Ok(pull * p3 + exc * e3)
}

pub fn triple_product(b: &KawamataBlowup, c1: DivisorClass2, c2: DivisorClass2, c3: DivisorClass2) -> Result<Q> {
    triple_product_at(&b.family, &b.sing, [c1, c2, c3])
}

/// (−K_Y)²·(−K_Y − E), negative for the centres excluded as bad links.
pub fn badlink_product(f: &WciFamily, s: &Cqs) -> Result<Q> {
    let k = DivisorClass2::anticanonical();
    let one = Q::from_integer(1);
    triple_product_at(f, s, [k, k, DivisorClass2::new(one, -one)])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveVerdict {
    AllCurvesExcluded,
    DegreeBound(#[serde(with = "crate::qstr")] Q),
}

/// A curve centre has 1 ≤ deg Γ < ι²A³.
pub fn curve_exclusion(f: &WciFamily) -> CurveVerdict {
    let iota = Q::from_integer(f.fano_index);
    let bound = iota * iota * wps::anticanonical_degree(f);
    if bound <= Q::from_integer(1) {
        CurveVerdict::AllCurvesExcluded
    } else {
        CurveVerdict::DegreeBound(bound)
    }
}

/// 4/(ι²A³).
pub fn isolating_threshold(f: &WciFamily) -> Q {
    let iota = Q::from_integer(f.fano_index);
    Q::from_integer(4) / (iota * iota * wps::anticanonical_degree(f))
}

/// max lcm(a_j, a_l) over l ∉ {j} ∪ K.
pub fn lcm_isolation(f: &WciFamily, j: usize, excluded: &[usize]) -> Result<i64> {
    (0..6)
        .filter(|&l| l != j && !excluded.contains(&l))
        .map(|l| f.weights[j].lcm(&f.weights[l]))
        .max()
        .ok_or(Error::EmptyComparisonSet)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefTest {
    #[serde(with = "crate::qstr")]
    pub c: Q,
    /// M·(−K_Y)² for M = −K_Y + cE.
    #[serde(with = "crate::qstr")]
    pub value: Q,
}

impl NefTest {
    pub fn excludes(&self) -> bool {
        self.value < Q::from_integer(0)
    }
}

/// Test class from isolating lifts D̃ᵢ ~ −bᵢK_Y + eᵢE.
pub fn nef_test_class_at(f: &WciFamily, s: &Cqs, lifts: &[(Q, Q)]) -> Result<NefTest> {
    let zero = Q::from_integer(0);
    let c = lifts.iter().map(|&(b, e)| e / b).fold(zero, Q::max);
    if c > Q::new(1, s.r) {
        return Err(Error::NefHypothesis(c.to_string()));
    }
    let k = DivisorClass2::anticanonical();
    let m = k + DivisorClass2::exceptional().scale(c);
    let value = triple_product_at(f, s, [m, k, k])?;
    Ok(NefTest { c, value })
}

pub fn nef_test_class(b: &KawamataBlowup, lifts: &[(Q, Q)]) -> Result<NefTest> {
    nef_test_class_at(&b.family, &b.sing, lifts)
}

/// Isolating lifts worked out by hand for centres the engine cannot blow up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownNefTest {
    pub family: u32,
    pub centre: Cqs,
    pub variables: &'static [&'static str],
    /// (b, e) as numerator/denominator pairs.
    pub raw: &'static [((i64, i64), (i64, i64))],
}

impl KnownNefTest {
    pub fn lifts(&self) -> Vec<(Q, Q)> {
        self.raw.iter().map(|&((bn, bd), (en, ed))| (Q::new(bn, bd), Q::new(en, ed))).collect()
    }
}

pub const KNOWN_NEF_TESTS: &[KnownNefTest] = &[KnownNefTest {
    family: 111,
    centre: Cqs { r: 3, b: [1, 1, 2] },
    variables: &["x", "t", "w"],
    raw: &[((1, 1), (0, 1)), ((7, 2), (1, 2)), ((11, 2), (1, 2))],
}];
