//! Kawamata blowups of coordinate cyclic quotient points and their ambient toric varieties.

use serde::{Deserialize, Serialize};

use crate::catalog::WciFamily;
use crate::error::{Error, Result};
use crate::exclusion::DivisorClass2;
use crate::monomial::{Mono, Support, Tag, NAMES};
use crate::toric::{Column, RankTwoToric};
use crate::wps::{self, Cqs, PointType};
use crate::Q;

/// Exponents over the ambient columns `u, ξ, …`.
pub type LiftedMono = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftEntry {
    pub var: String,
    pub class: DivisorClass2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KawamataBlowup {
    pub family: WciFamily,
    pub centre: usize,
    pub sing: Cqs,
    pub r: i64,
    pub k: i64,
    pub tags: Vec<Tag>,
    /// Variables eliminated by ξ^{m_j}x_j ∈ f and ξ^{m_k}x_k ∈ g.
    pub eliminated: [usize; 2],
    /// The exponents m_j, m_k of ξ in those monomials.
    pub xi_powers: [u32; 2],
    #[serde(with = "crate::qstr::vec")]
    pub vanishing_orders: Vec<Q>,
    #[serde(with = "crate::qstr::vec")]
    pub m: Vec<Q>,
    pub lift_table: Vec<LiftEntry>,
    pub ambient: RankTwoToric,
    /// Column of each of the six original variables.
    pub var_column: [usize; 6],
    pub eq_bidegrees: [[i64; 2]; 2],
    pub anticanonical: [i64; 2],
    /// Generic supports of f̃ and g̃ with their u-exponents.
    pub lifted: [Vec<LiftedMono>; 2],
}

impl KawamataBlowup {
    pub fn iota(&self) -> i64 {
        self.family.fano_index
    }

    /// κ = (kι − 1)/r, the E-coordinate of −K_Y.
    pub fn kappa(&self) -> i64 {
        self.anticanonical[1]
    }

    pub fn column_name(&self, c: usize) -> &str {
        &self.ambient.columns[c].name
    }

    /// Coordinates of an ambient class in the basis (−K_Y, E).
    pub fn class_of(&self, v: [i64; 2]) -> DivisorClass2 {
        let iota = self.iota();
        let anti = Q::new(v[0], iota);
        DivisorClass2 { anti, exc: Q::from_integer(v[1]) - anti * self.kappa() }
    }

    pub fn eq_classes(&self) -> [DivisorClass2; 2] {
        self.eq_bidegrees.map(|d| self.class_of(d))
    }
}

/// Least Σ eᵢνᵢ over a monomial support.
pub fn min_vanishing_order(support: &[Mono], nu: &[Q; 6], degree: i64) -> Result<Q> {
    support
        .iter()
        .map(|m| m.iter().zip(nu).map(|(&e, &v)| v * e as i64).sum::<Q>())
        .min()
        .ok_or(Error::DegenerateMember(degree))
}

fn order(m: &Mono, nu: &[Option<Q>; 6]) -> Option<Q> {
    let mut s = Q::from_integer(0);
    for (i, &e) in m.iter().enumerate() {
        if e > 0 {
            s += nu[i]? * e as i64;
        }
    }
    Some(s)
}

fn opt_min(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// ξ^m x_j candidates for one equation, as (j, m).
fn normalizing_candidates(weights: &[i64; 6], degree: i64, xi: usize, supp: &[Mono]) -> Vec<(usize, u32)> {
    let r = weights[xi];
    (0..6)
        .filter(|&j| j != xi)
        .filter_map(|j| {
            let rem = degree - weights[j];
            if rem <= 0 || rem % r != 0 {
                return None;
            }
            let mut m = [0u32; 6];
            m[xi] = (rem / r) as u32;
            m[j] += 1;
            supp.contains(&m).then_some((j, m[xi]))
        })
        .collect()
}

pub fn kawamata_blowup(f: &WciFamily, centre: usize, tags: &[Tag]) -> Result<KawamataBlowup> {
    let (w, d, iota) = (&f.weights, &f.degrees, f.fano_index);
    let sing = match wps::coordinate_point_type_with(w, d, centre, tags)? {
        PointType::Cqs { sing, .. } => sing,
        PointType::NotOnX => return Err(Error::NotOnX(centre)),
        PointType::SmoothPoint => return Err(Error::SmoothCentre(centre)),
        PointType::Ambiguous(candidates) => return Err(Error::Ambiguous { index: centre, candidates }),
    };
    if !wps::is_terminal(&sing) {
        return Err(Error::NonTerminal(sing));
    }
    let r = w[centre];
    let k = wps::inverse_mod(iota, r).ok_or(Error::NonTerminal(sing))?;
    let supp = Support::generic(w, d, tags);
    if supp.eqs[0].is_empty() {
        return Err(Error::DegenerateMember(d[0]));
    }
    if supp.eqs[1].is_empty() {
        return Err(Error::DegenerateMember(d[1]));
    }

    let (cf, cg) = (
        normalizing_candidates(w, d[0], centre, &supp.eqs[0]),
        normalizing_candidates(w, d[1], centre, &supp.eqs[1]),
    );
    let mut best: Option<(u32, usize, usize, u32, u32)> = None;
    for &(j, mj) in &cf {
        for &(kk, mk) in &cg {
            if j != kk && best.is_none_or(|b| mj + mk < b.0) {
                best = Some((mj + mk, j, kk, mj, mk));
            }
        }
    }
    let (_, j, kk, mj, mk) = best.ok_or(Error::NotQuasismooth(centre))?;

    let excluded = |h: usize, m: &Mono| -> bool {
        let own = if h == 0 { mj } else { mk };
        let other = if h == 0 { mk } else { mj };
        m[centre] >= own || (d[0] == d[1] && m[centre] >= other)
    };

    let mut nu: [Option<Q>; 6] = [None; 6];
    nu[centre] = Some(Q::from_integer(0));
    for l in (0..6).filter(|&l| l != centre && l != j && l != kk) {
        nu[l] = Some(Q::new((k * w[l]).rem_euclid(r), r));
    }
    // joint monotone iteration for the orders of x_j and x_k
    let (mut mf, mut mg): (Option<Q>, Option<Q>) = (None, None);
    loop {
        let mut cur = nu;
        cur[j] = mf;
        cur[kk] = mg;
        let step = |h: usize| {
            supp.eqs[h].iter().filter(|m| !excluded(h, m)).fold(None, |acc, m| opt_min(acc, order(m, &cur)))
        };
        let nf = opt_min(step(0), mf);
        let ng = opt_min(step(1), mg);
        if (nf, ng) == (mf, mg) {
            break;
        }
        mf = nf;
        mg = ng;
    }
    let mf = mf.ok_or(Error::DegenerateMember(d[0]))?;
    let mg = mg.ok_or(Error::DegenerateMember(d[1]))?;
    nu[j] = Some(mf);
    nu[kk] = Some(mg);
    let nu: [Q; 6] = nu.map(|x| x.expect("all orders set"));

    // columns: u, ξ, then the rest in index order
    let mut columns = vec![
        Column { name: "u".into(), v: [0, 1] },
        Column { name: NAMES[centre].to_string(), v: [r, k] },
    ];
    let mut var_column = [0usize; 6];
    var_column[centre] = 1;
    for i in (0..6).filter(|&i| i != centre) {
        let b = nu[i] * r;
        let s = (Q::from_integer(k * w[i]) - b) / r;
        if !b.is_integer() || !s.is_integer() {
            return Err(Error::Integrality(format!(
                "family {} centre {}: column of {} is ({}, {})",
                f.id, NAMES[centre], NAMES[i], w[i], s
            )));
        }
        var_column[i] = columns.len();
        columns.push(Column { name: NAMES[i].to_string(), v: [w[i], s.to_integer()] });
    }
    let n_cols = columns.len();
    let ambient = RankTwoToric::new(columns, (vec![0, 1], (2..n_cols).collect()));

    let m = [mf, mg];
    let mut eq_bidegrees = [[0i64; 2]; 2];
    for h in 0..2 {
        let s = (Q::from_integer(k * d[h]) - m[h] * r) / r;
        if !s.is_integer() {
            return Err(Error::Integrality(format!("family {}: bidegree of equation {} is ({}, {})", f.id, h + 1, d[h], s)));
        }
        eq_bidegrees[h] = [d[h], s.to_integer()];
    }
    let anticanonical = [iota, (k * iota - 1) / r];

    let mut lifted: [Vec<LiftedMono>; 2] = [vec![], vec![]];
    for h in 0..2 {
        let (jj, mm) = if h == 0 { (j, mj) } else { (kk, mk) };
        for mono in &supp.eqs[h] {
            let normalizing = mono[centre] == mm && mono[jj] == 1 && mono.iter().sum::<u32>() == mm + 1;
            if excluded(h, mono) && !normalizing {
                continue;
            }
            let e = mono.iter().zip(&nu).map(|(&x, &v)| v * x as i64).sum::<Q>() - m[h];
            if !e.is_integer() || e < Q::from_integer(0) {
                return Err(Error::Integrality(format!(
                    "family {}: {} lifts with u-exponent {}",
                    f.id,
                    crate::monomial::render(mono),
                    e
                )));
            }
            let mut lm = vec![0u32; n_cols];
            lm[0] = e.to_integer() as u32;
            for i in 0..6 {
                lm[var_column[i]] = mono[i];
            }
            lifted[h].push(lm);
        }
    }

    let mut b = KawamataBlowup {
        family: f.clone(),
        centre,
        sing,
        r,
        k,
        tags: tags.to_vec(),
        eliminated: [j, kk],
        xi_powers: [mj, mk],
        vanishing_orders: nu.to_vec(),
        m: m.to_vec(),
        lift_table: vec![],
        ambient,
        var_column,
        eq_bidegrees,
        anticanonical,
        lifted,
    };
    b.lift_table = b
        .ambient
        .columns
        .iter()
        .map(|c| LiftEntry { var: c.name.clone(), class: b.class_of(c.v) })
        .collect();
    Ok(b)
}

/// Blowup at a located basket centre.
pub fn blowup_at(f: &WciFamily, centre: &wps::Centre) -> Result<KawamataBlowup> {
    kawamata_blowup(f, centre.index, &centre.tags)
}

/// Both equations take the form ξx_j + …, ξx_k + … and the three local weights contain ι.
pub fn is_linear(f: &WciFamily, centre: usize) -> bool {
    let (w, d) = (&f.weights, &f.degrees);
    let a = w[centre];
    let others: Vec<usize> = (0..6).filter(|&i| i != centre).collect();
    others.iter().any(|&j| {
        w[j] == d[0] - a
            && others.iter().any(|&k| {
                k != j && w[k] == d[1] - a && {
                    let rest: Vec<i64> = others.iter().filter(|&&l| l != j && l != k).map(|&l| w[l]).collect();
                    rest.contains(&f.fano_index)
                }
            })
    })
}

/// The linear terminal basket centre of highest index on the generic member, if any.
pub fn has_linear_cqs(f: &WciFamily) -> Option<wps::Centre> {
    let mut best: Option<wps::Centre> = None;
    for b in &f.basket {
        let Ok(c) = wps::locate_centre(f, &b.sing(), &[]) else {
            continue;
        };
        if wps::is_terminal(&c.sing) && is_linear(f, c.index) && best.as_ref().is_none_or(|x| c.sing.r > x.sing.r) {
            best = Some(c);
        }
    }
    best
}
