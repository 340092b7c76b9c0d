#![allow(dead_code)]

use birlinks_core::toric::ChamberDecomposition;
use birlinks_core::wps::Cqs;
use num_integer::Integer;
use rand::Rng;

fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn units(r: i64) -> impl Iterator<Item = i64> {
    (1..r).filter(move |u| u.gcd(&r) == 1)
}

/// Every unit multiple of `b` mod r, each sorted.
pub fn unit_multiples(r: i64, b: [i64; 3]) -> Vec<[i64; 3]> {
    units(r)
        .map(|u| {
            let mut c = b.map(|x| (x * u).rem_euclid(r));
            c.sort();
            c
        })
        .collect()
}

/// Terminal iff some unit multiple reads 1/r(1, a, r−a) up to order.
pub fn terminal_oracle(r: i64, b: [i64; 3]) -> bool {
    unit_multiples(r, b).iter().any(|c| {
        (0..3).any(|i| {
            let rest: Vec<i64> = (0..3).filter(|&k| k != i).map(|k| c[k]).collect();
            c[i] == 1 && (rest[0] + rest[1]) % r == 0
        })
    })
}

/// Least (1, p, q) over all unit multiples, preferring the terminal shape.
pub fn normal_form_oracle(r: i64, b: [i64; 3]) -> [i64; 3] {
    let mut cands: Vec<([i64; 3], bool)> = vec![];
    for c in unit_multiples(r, b) {
        if let Some(i) = c.iter().position(|&x| x == 1) {
            let mut rest: Vec<i64> = (0..3).filter(|&k| k != i).map(|k| c[k]).collect();
            rest.sort();
            cands.push(([1, rest[0], rest[1]], (rest[0] + rest[1]) % r == 0));
        }
    }
    let term = cands.iter().filter(|c| c.1).map(|c| c.0).min();
    term.or_else(|| cands.iter().map(|c| c.0).min()).expect("a unit sends some entry to 1")
}

/// All germs 1/r(b₁,b₂,b₃) with b₁ ≤ b₂ ≤ b₃ coprime to r.
pub fn all_germs(max_r: i64) -> Vec<Cqs> {
    let mut out = vec![];
    for r in 2..=max_r {
        let us: Vec<i64> = units(r).collect();
        for (i, &a) in us.iter().enumerate() {
            for (j, &b) in us.iter().enumerate().skip(i) {
                for &c in &us[j..] {
                    out.push(Cqs::new(r, [a, b, c]));
                }
            }
        }
    }
    out
}

#[derive(Debug, PartialEq, Eq)]
pub struct OracleChambers {
    pub rays: Vec<([i64; 2], Vec<usize>)>,
    pub mov: Option<(usize, usize)>,
}

fn primitive(v: [i64; 2]) -> [i64; 2] {
    let g = v[0].gcd(&v[1]);
    [v[0] / g, v[1] / g]
}

/// Floating-point angular sweep plus exact cone membership; `None` when the
/// columns do not span a strictly convex cone.
pub fn chambers_oracle(cols: &[[i64; 2]]) -> Option<OracleChambers> {
    if cols.is_empty() || cols.contains(&[0, 0]) {
        return None;
    }
    let r0 = cols[0];
    let ang = |c: [i64; 2]| (det(r0, c) as f64).atan2((r0[0] * c[0] + r0[1] * c[1]) as f64);
    let angles: Vec<f64> = cols.iter().map(|&c| ang(c)).collect();
    let hi = angles.iter().cloned().fold(f64::MIN, f64::max);
    let lo = angles.iter().cloned().fold(f64::MAX, f64::min);
    if hi - lo >= std::f64::consts::PI - 1e-9 {
        return None;
    }
    let mut rays: Vec<([i64; 2], Vec<usize>, f64)> = vec![];
    for (i, &c) in cols.iter().enumerate() {
        let p = primitive(c);
        match rays.iter_mut().find(|r| r.0 == p) {
            Some(r) => r.1.push(i),
            None => rays.push((p, vec![i], angles[i])),
        }
    }
    // counter-clockwise first
    rays.sort_by(|a, b| b.2.partial_cmp(&a.2).unwrap());
    let n = rays.len();
    let (f, l) = (rays[0].0, rays[n - 1].0);
    if n > 1 {
        let dfl = det(f, l);
        assert!(dfl < 0, "sweep endpoints out of order");
        for &c in cols {
            // c = αf + βl with α, β ≥ 0
            let (a, b) = (det(c, l) * dfl.signum(), det(f, c) * dfl.signum());
            assert!(a >= 0 && b >= 0, "column {c:?} outside the swept cone");
        }
    }
    let lo = if rays[0].1.len() > 1 { 0 } else { 1 };
    let hi = if rays[n - 1].1.len() > 1 { n - 1 } else { n.saturating_sub(2) };
    let mov = (lo <= hi && hi < n).then_some((lo, hi));
    Some(OracleChambers { rays: rays.into_iter().map(|r| (r.0, r.1)).collect(), mov })
}

pub fn matches_oracle(ch: &ChamberDecomposition, o: &OracleChambers) -> bool {
    let rays: Vec<([i64; 2], Vec<usize>)> = ch.rays.iter().map(|r| (r.dir, r.columns.clone())).collect();
    rays == o.rays && ch.mov == o.mov && ch.eff == (0, o.rays.len() - 1)
}

pub fn random_matrix(rng: &mut impl Rng) -> Vec<[i64; 2]> {
    let m = rng.gen_range(1..=7);
    (0..m).map(|_| [rng.gen_range(-12..=12), rng.gen_range(-12..=12)]).collect()
}

/// Random matrices biased towards convex input: half the draws use the first quadrant.
pub fn random_matrix_mixed(rng: &mut impl Rng) -> Vec<[i64; 2]> {
    if rng.gen_bool(0.5) {
        let m = rng.gen_range(1..=7);
        (0..m)
            .map(|_| loop {
                let v = [rng.gen_range(0..=12), rng.gen_range(-12..=12)];
                if v != [0, 0] && (v[0] > 0 || v[1] > 0) {
                    break v;
                }
            })
            .collect()
    } else {
        random_matrix(rng)
    }
}
