//! The 2-ray game on the blown-up 3-fold and the resulting Sarkisov link.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::blowup::{self, KawamataBlowup, LiftedMono};
use crate::catalog::{WciFamily, COD4_CENTRES};
use crate::error::{Error, Result};
use crate::toric::{det, primitive, WallLoci};
use crate::wps::{self, Centre, Cqs};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiberKind {
    Conic,
    DelPezzo {
        #[serde(with = "crate::qstr")]
        degree: Q,
    },
}

/// Germ of the target at the image of the contracted divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum PointGerm {
    Smooth,
    Quotient { sing: Cqs, terminal: bool },
    Hypersurface { index: i64, weights: Vec<i64>, degrees: Vec<i64> },
}

impl std::fmt::Display for PointGerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PointGerm::Smooth => write!(f, "smooth point"),
            PointGerm::Quotient { sing, .. } => write!(f, "{sing}"),
            PointGerm::Hypersurface { index, weights, degrees } => {
                write!(f, "1/{index}({};{})", join(weights), join(degrees))
            }
        }
    }
}

pub(crate) fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum LinkStep {
    Isomorphism {
        wall: [i64; 2],
    },
    Flop {
        wall: [i64; 2],
        #[serde(with = "crate::qstr::opt")]
        count: Option<Q>,
    },
    Flip {
        wall: [i64; 2],
        weights: Vec<i64>,
        degrees: Vec<i64>,
        loci: WallLoci,
        eliminated: Vec<String>,
    },
    Antiflip {
        wall: [i64; 2],
        weights: Vec<i64>,
        degrees: Vec<i64>,
        loci: WallLoci,
        eliminated: Vec<String>,
    },
    DivisorialToPoint {
        ray: [i64; 2],
        contracted: String,
        target_weights: Vec<i64>,
        target_degrees: Vec<i64>,
        target_index: i64,
        point: PointGerm,
        /// Weights 1/e(…) of the blowup extracting the contracted divisor.
        blowup_weights: Vec<i64>,
        blowup_index: i64,
        #[serde(with = "crate::qstr")]
        discrepancy: Q,
        residual_order: i64,
    },
    DivisorialToCurve {
        ray: [i64; 2],
        contracted: String,
        target_weights: Vec<i64>,
        target_degrees: Vec<i64>,
        target_index: i64,
        curve_weights: Vec<i64>,
        curve_degrees: Vec<i64>,
        #[serde(with = "crate::qstr")]
        discrepancy: Q,
        residual_order: i64,
    },
    Fibration {
        ray: [i64; 2],
        base_weights: Vec<i64>,
        base_degrees: Vec<i64>,
        fiber: FiberKind,
        fiber_weights: Vec<i64>,
        fiber_degrees: Vec<i64>,
    },
    RequiresUnprojection {
        wall: [i64; 2],
        reason: String,
    },
}

impl LinkStep {
    pub fn is_small(&self) -> bool {
        matches!(self, LinkStep::Isomorphism { .. } | LinkStep::Flop { .. } | LinkStep::Flip { .. } | LinkStep::Antiflip { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "TypeI-MoriFibreSpace")]
    TypeI,
    #[serde(rename = "TypeII-FanoModel")]
    TypeII,
    BirationalInvolution,
    BadLink,
    RequiresUnprojection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SarkisovLink {
    pub blowup: KawamataBlowup,
    pub steps: Vec<LinkStep>,
    pub verdict: Verdict,
    /// Discrepancy of the initial extraction, recomputed from the ambient.
    #[serde(with = "crate::qstr")]
    pub initial_discrepancy: Q,
}

impl SarkisovLink {
    pub fn end(&self) -> Option<&LinkStep> {
        self.steps.last()
    }
}

/// m₂/(n₂m₁ − n₁m₂) where the pullback of −K_{X'} is −m₁K_Y − m₂E and E' ~ −n₁K_Y − n₂E.
pub fn discrepancy(m1: Q, m2: Q, n1: Q, n2: Q) -> Result<Q> {
    let den = n2 * m1 - n1 * m2;
    if den <= Q::from_integer(0) {
        return Err(Error::EndpointNotInterior);
    }
    Ok(m2 / den)
}

fn disc_of(b: &KawamataBlowup, m: [i64; 2], n: [i64; 2]) -> Result<Q> {
    let (m, n) = (b.class_of(m), b.class_of(n));
    discrepancy(m.anti, -m.exc, n.anti, -n.exc)
}

fn side(rho: [i64; 2], v: [i64; 2]) -> i64 {
    det(rho, v).signum()
}

/// Multiple λ with v = λ·rho, for v on the ray.
fn multiple(rho: [i64; 2], v: [i64; 2]) -> i64 {
    if rho[0] != 0 {
        v[0] / rho[0]
    } else {
        v[1] / rho[1]
    }
}

/// Largest matching of equations to candidate variables; the first maximum in
/// depth-first order (skipping before assigning) wins.
fn max_matching(cands: &[Vec<usize>]) -> Vec<(usize, usize)> {
    fn rec(c: &[Vec<usize>], h: usize, used: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, best: &mut Vec<(usize, usize)>) {
        if h == c.len() {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
            return;
        }
        rec(c, h + 1, used, cur, best);
        for &v in &c[h] {
            if !used.contains(&v) {
                used.push(v);
                cur.push((h, v));
                rec(c, h + 1, used, cur, best);
                cur.pop();
                used.pop();
            }
        }
    }
    let mut best = vec![];
    rec(cands, 0, &mut vec![], &mut vec![], &mut best);
    best
}

/// Variables of `m` outside `allowed`.
fn outside(m: &LiftedMono, allowed: &[usize]) -> Vec<usize> {
    (0..m.len()).filter(|&c| m[c] > 0 && !allowed.contains(&c)).collect()
}

/// For each equation in `eqs`, the variables x_l with a monomial (allowed part)·x_l, subject to `ok`.
fn linear_candidates(
    lifted: &[Vec<LiftedMono>; 2],
    allowed: &[usize],
    eqs: &[usize],
    skip: impl Fn(&LiftedMono) -> bool,
    ok: impl Fn(usize, usize) -> bool,
) -> Vec<(usize, usize)> {
    let cands: Vec<Vec<usize>> = eqs
        .iter()
        .map(|&h| {
            let mut s = vec![];
            for m in &lifted[h] {
                if skip(m) {
                    continue;
                }
                let o = outside(m, allowed);
                if o.len() == 1 && m[o[0]] == 1 && ok(h, o[0]) && !s.contains(&o[0]) {
                    s.push(o[0]);
                }
            }
            s
        })
        .collect();
    max_matching(&cands).into_iter().map(|(i, v)| (eqs[i], v)).collect()
}

fn only_in(m: &LiftedMono, allowed: &[usize]) -> bool {
    outside(m, allowed).is_empty()
}

struct Sides {
    b: Vec<usize>,
    w: Vec<usize>,
    a: Vec<usize>,
}

fn sides(b: &KawamataBlowup, rho: [i64; 2]) -> Sides {
    let mut s = Sides { b: vec![], w: vec![], a: vec![] };
    for (i, c) in b.ambient.columns.iter().enumerate() {
        match side(rho, c.v) {
            1 => s.b.push(i),
            0 => s.w.push(i),
            _ => s.a.push(i),
        }
    }
    s
}

/// Dimensions of the loci of Y contracted on either side of the wall; `None` when empty.
fn contracted_dims(b: &KawamataBlowup, rho: [i64; 2], s: &Sides) -> (Option<i64>, Option<i64>) {
    let (mut n_w, mut n_b, mut n_a) = (0i64, 0i64, 0i64);
    for h in 0..2 {
        let l = &b.lifted[h];
        match side(rho, b.eq_bidegrees[h]) {
            0 => {
                if l.iter().any(|m| only_in(m, &s.w)) {
                    n_w += 1;
                }
            }
            1 => {
                if l.iter().any(|m| !s.a.iter().any(|&c| m[c] > 0)) {
                    n_b += 1;
                }
            }
            _ => {
                if l.iter().any(|m| !s.b.iter().any(|&c| m[c] > 0)) {
                    n_a += 1;
                }
            }
        }
    }
    let base = s.w.len() as i64 - 1 - n_w;
    if base < 0 {
        return (None, None);
    }
    let dim = |n: usize, e: i64| {
        let fib = n as i64 - 1 - e;
        (fib >= 0).then_some(base + fib)
    };
    (dim(s.b.len(), n_b), dim(s.a.len(), n_a))
}

pub fn classify_wall(b: &KawamataBlowup, wall: [i64; 2]) -> Result<LinkStep> {
    let rho = primitive(wall);
    let ch = b.ambient.chambers()?;
    let idx = ch.ray_index(rho).ok_or(Error::RayNotFound(wall[0], wall[1]))?;
    if !ch.interior_walls().contains(&idx) {
        return Err(Error::WallOnBoundary(wall[0], wall[1]));
    }
    let s = sides(b, rho);
    let (dm, dp) = contracted_dims(b, rho, &s);
    let dm = dm.filter(|&d| d > 0);
    let dp = dp.filter(|&d| d > 0);
    match (dm, dp) {
        (None, None) => return Ok(LinkStep::Isomorphism { wall: rho }),
        (Some(1), Some(1)) => {}
        _ => {
            let show = |d: Option<i64>| d.map_or("none".to_string(), |d| d.to_string());
            return Ok(LinkStep::RequiresUnprojection {
                wall: rho,
                reason: format!("contracted loci of dimension {} and {}", show(dm), show(dp)),
            });
        }
    }
    let k = b.anticanonical;
    match side(rho, k) {
        0 => {
            let lam: Vec<i64> = s.w.iter().map(|&c| multiple(rho, b.ambient.columns[c].v)).collect();
            let mu = (0..2)
                .filter(|&h| det(rho, b.eq_bidegrees[h]) == 0 && b.lifted[h].iter().any(|m| only_in(m, &s.w)))
                .map(|h| multiple(rho, b.eq_bidegrees[h]))
                .next_back();
            let count = match (lam.as_slice(), mu) {
                (&[l1, l2], Some(mu)) => {
                    let g = l1.gcd(&l2);
                    Some(Q::new(mu, g) / Q::from_integer((l1 / g) * (l2 / g)))
                }
                _ => None,
            };
            Ok(LinkStep::Flop { wall: rho, count })
        }
        pos => {
            let el = linear_candidates(&b.lifted, &s.w, &[0, 1], |_| false, |_, _| true);
            let gone: Vec<usize> = el.iter().map(|e| e.1).collect();
            let mut weights: Vec<i64> = (0..b.ambient.columns.len())
                .filter(|c| !s.w.contains(c) && !gone.contains(c))
                .map(|c| -det(rho, b.ambient.columns[c].v))
                .collect();
            weights.sort();
            let degrees: Vec<i64> = (0..2)
                .filter(|h| !el.iter().any(|e| e.0 == *h) && det(rho, b.eq_bidegrees[*h]) != 0)
                .map(|h| -det(rho, b.eq_bidegrees[h]))
                .collect();
            let loci = b.ambient.wall_loci(rho)?;
            let eliminated = gone.iter().map(|&c| b.column_name(c).to_string()).collect();
            // −K_Y on the far side of the wall: the wall comes first, so K·C > 0 on the flipped curves
            if pos < 0 {
                Ok(LinkStep::Antiflip { wall: rho, weights, degrees, loci, eliminated })
            } else {
                Ok(LinkStep::Flip { wall: rho, weights, degrees, loci, eliminated })
            }
        }
    }
}

pub fn classify_end(b: &KawamataBlowup, ray: [i64; 2]) -> Result<LinkStep> {
    let rho = primitive(ray);
    let ch = b.ambient.chambers()?;
    let idx = ch.ray_index(rho).ok_or(Error::RayNotFound(ray[0], ray[1]))?;
    let Some((lo, hi)) = ch.mov else {
        return Err(Error::WallOnBoundary(ray[0], ray[1]));
    };
    if idx != hi && idx != lo {
        return Err(Error::WallOnBoundary(ray[0], ray[1]));
    }
    let cols: Vec<[i64; 2]> = b.ambient.vectors();
    let n = ch.rays.len();
    let wv = &ch.rays[idx].columns;
    let eqb = b.eq_bidegrees;
    let l = &b.lifted;
    let pure_w: Vec<usize> =
        (0..2).filter(|&h| det(rho, eqb[h]) == 0 && l[h].iter().any(|m| only_in(m, wv))).collect();
    let base_dim = wv.len() as i64 - 1 - pure_w.len() as i64;
    let lam: Vec<i64> = wv.iter().map(|&c| multiple(rho, cols[c])).collect();
    let mu: Vec<i64> = pure_w.iter().map(|&h| multiple(rho, eqb[h])).collect();

    if idx == n - 1 {
        let off: Vec<usize> = (0..cols.len()).filter(|c| !wv.contains(c)).collect();
        let rw = |c: usize| det(rho, cols[c]).abs();
        let eqs: Vec<usize> = (0..2).filter(|h| !pure_w.contains(h)).collect();
        let rd = |h: usize| det(rho, eqb[h]).abs();
        let el = linear_candidates(l, wv, &eqs, |_| false, |h, v| rw(v) == rd(h));
        let fiber_weights: Vec<i64> = off.iter().filter(|c| !el.iter().any(|e| e.1 == **c)).map(|&c| rw(c)).collect();
        let fiber_degrees: Vec<i64> = eqs.iter().filter(|h| !el.iter().any(|e| e.0 == **h)).map(|&h| rd(h)).collect();
        let fiber = match base_dim {
            2 => FiberKind::Conic,
            1 => {
                let sw: i64 = fiber_weights.iter().sum();
                let sd: i64 = fiber_degrees.iter().sum();
                let pd: i64 = fiber_degrees.iter().product();
                let pw: i64 = fiber_weights.iter().product();
                FiberKind::DelPezzo { degree: Q::new((sw - sd) * (sw - sd) * pd, pw) }
            }
            d => {
                return Err(Error::DegenerateFiber(format!("base of dimension {d} over ray ({},{})", rho[0], rho[1])))
            }
        };
        return Ok(LinkStep::Fibration { ray: rho, base_weights: lam, base_degrees: mu, fiber, fiber_weights, fiber_degrees });
    }
    if idx + 2 != n {
        return Err(Error::EndpointNotInterior);
    }
    let dn = ch.rays[n - 1].columns[0];
    let cd = cols[dn];
    let e = cd[0].gcd(&cd[1]);
    let pc = [cd[0] / e, cd[1] / e];
    let tw = |c: usize| det(pc, cols[c]);
    let td = |h: usize| det(pc, eqb[h]);
    let gel = linear_candidates(l, &[dn], &[0, 1], |_| false, |h, v| tw(v) == td(h));
    let remaining: Vec<usize> = (0..cols.len()).filter(|&c| c != dn && !gel.iter().any(|g| g.1 == c)).collect();
    let eqs_left: Vec<usize> = (0..2).filter(|h| !gel.iter().any(|g| g.0 == *h)).collect();
    let mut with_d: Vec<[i64; 2]> = remaining.iter().map(|&c| cols[c]).collect();
    with_d.push(cd);
    let residual_order = crate::toric::residual_order(&with_d);
    let gp = remaining.iter().fold(0i64, |g, &c| g.gcd(&tw(c))).max(1);
    let tw_red = |c: usize| tw(c) / gp;
    let mut target_weights: Vec<i64> = remaining.iter().map(|&c| tw_red(c)).collect();
    let mut target_degrees: Vec<i64> = eqs_left.iter().map(|&h| td(h) / gp).collect();
    let target_index = target_weights.iter().sum::<i64>() - target_degrees.iter().sum::<i64>();
    target_weights.sort();
    target_degrees.sort();
    let discrepancy = disc_of(b, rho, cd)?;
    let contracted = b.column_name(dn).to_string();

    if base_dim >= 1 {
        return Ok(LinkStep::DivisorialToCurve {
            ray: rho,
            contracted,
            target_weights,
            target_degrees,
            target_index,
            curve_weights: lam,
            curve_degrees: mu,
            discrepancy,
            residual_order,
        });
    }
    let ebw = -det(rho, cd);
    let lel = linear_candidates(l, wv, &[0, 1], |m| m[dn] > 0, |_, _| true);
    let locv: Vec<usize> =
        (0..cols.len()).filter(|c| !wv.contains(c) && *c != dn && !lel.iter().any(|x| x.1 == *c)).collect();
    let mut blowup_weights: Vec<i64> = locv.iter().map(|&c| det(rho, cols[c])).collect();
    blowup_weights.sort();
    let left: Vec<usize> = (0..2).filter(|h| !lel.iter().any(|x| x.0 == *h)).collect();
    let point = if left.is_empty() && wv.len() == 1 {
        let ww = tw_red(wv[0]);
        if ww == 1 {
            PointGerm::Smooth
        } else {
            let v: Vec<i64> = locv.iter().map(|&c| tw_red(c).rem_euclid(ww)).collect();
            let raw = Cqs::new(ww, [v[0], *v.get(1).unwrap_or(&0), *v.get(2).unwrap_or(&0)]);
            match (v.len(), wps::cqs_normal_form(&raw)) {
                (3, Ok(nf)) => PointGerm::Quotient { sing: nf, terminal: wps::is_terminal(&nf) },
                _ => PointGerm::Quotient { sing: raw, terminal: false },
            }
        }
    } else {
        PointGerm::Hypersurface {
            index: ebw,
            weights: blowup_weights.clone(),
            degrees: left.iter().map(|&h| det(rho, eqb[h])).collect(),
        }
    };
    Ok(LinkStep::DivisorialToPoint {
        ray: rho,
        contracted,
        target_weights,
        target_degrees,
        target_index,
        point,
        blowup_weights,
        blowup_index: ebw,
        discrepancy,
        residual_order,
    })
}

/// Discrepancy of the initial extraction read back from the ξ column and E.
///
/// The formula is applied in reverse: seen from X, the E-coordinates change sign.
pub fn initial_discrepancy(b: &KawamataBlowup) -> Result<Q> {
    let (m, n) = (b.class_of(b.ambient.columns[1].v), b.class_of([0, 1]));
    discrepancy(m.anti, m.exc, n.anti, n.exc)
}

pub fn run_link(f: &WciFamily, centre: &Centre) -> Result<SarkisovLink> {
    let b = blowup::blowup_at(f, centre)?;
    run_game(b)
}

/// Plays the game on an already constructed blowup.
pub fn run_game(b: KawamataBlowup) -> Result<SarkisovLink> {
    let ch = b.ambient.chambers()?;
    let initial_discrepancy = initial_discrepancy(&b)?;
    let (_, hi) = ch.mov.ok_or(Error::NonConvex)?;
    let annotated = COD4_CENTRES.iter().any(|(id, s)| *id == b.family.id && *s == b.sing);
    let mut steps = Vec::new();
    for idx in ch.interior_walls() {
        let step = classify_wall(&b, ch.rays[idx].dir)?;
        let stop = matches!(step, LinkStep::RequiresUnprojection { .. });
        steps.push(step);
        if stop {
            return Ok(SarkisovLink { blowup: b, steps, verdict: Verdict::RequiresUnprojection, initial_discrepancy });
        }
    }
    let end_ray = ch.rays[hi].dir;
    if annotated {
        steps.push(LinkStep::RequiresUnprojection {
            wall: end_ray,
            reason: "the contraction on Y leaves the ambient game; a codimension-4 model is needed".into(),
        });
        return Ok(SarkisovLink { blowup: b, steps, verdict: Verdict::RequiresUnprojection, initial_discrepancy });
    }
    let crepant_ray = primitive(b.anticanonical) == end_ray;
    let end = match classify_end(&b, end_ray) {
        Ok(s) => s,
        Err(Error::EndpointNotInterior) if crepant_ray => {
            steps.push(LinkStep::RequiresUnprojection { wall: end_ray, reason: "crepant endpoint".into() });
            return Ok(SarkisovLink { blowup: b, steps, verdict: Verdict::BadLink, initial_discrepancy });
        }
        Err(e) => return Err(e),
    };
    let verdict = match &end {
        _ if crepant_ray => Verdict::BadLink,
        LinkStep::Fibration { .. } => Verdict::TypeI,
        LinkStep::DivisorialToPoint { discrepancy, .. } | LinkStep::DivisorialToCurve { discrepancy, .. }
            if *discrepancy <= Q::from_integer(0) =>
        {
            Verdict::BadLink
        }
        LinkStep::DivisorialToPoint { target_weights, target_degrees, residual_order: 1, .. } => {
            let mut w = b.family.weights.to_vec();
            w.sort();
            let mut d = b.family.degrees.to_vec();
            d.sort();
            if *target_weights == w && *target_degrees == d {
                Verdict::BirationalInvolution
            } else {
                Verdict::TypeII
            }
        }
        _ => Verdict::TypeII,
    };
    steps.push(end);
    Ok(SarkisovLink { blowup: b, steps, verdict, initial_discrepancy })
}
