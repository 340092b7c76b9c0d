//! Rank-2 toric varieties given by a 2×m weight matrix.

use std::cmp::Ordering;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn content(v: [i64; 2]) -> i64 {
    v[0].gcd(&v[1])
}

pub fn primitive(v: [i64; 2]) -> [i64; 2] {
    let g = content(v);
    [v[0] / g, v[1] / g]
}

/// Angular order used everywhere: `a` comes first when det(a, b) < 0.
pub fn ray_cmp(a: [i64; 2], b: [i64; 2]) -> Ordering {
    det(a, b).cmp(&0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub v: [i64; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTwoToric {
    pub columns: Vec<Column>,
    /// Column indices of the two irrelevant-ideal blocks.
    pub partition: (Vec<usize>, Vec<usize>),
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub dir: [i64; 2],
    pub columns: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberDecomposition {
    pub rays: Vec<Ray>,
    /// Indices into `rays`.
    pub eff: (usize, usize),
    pub mov: Option<(usize, usize)>,
    pub chambers: Vec<(usize, usize)>,
}

impl ChamberDecomposition {
    pub fn ray_index(&self, dir: [i64; 2]) -> Option<usize> {
        let p = primitive(dir);
        self.rays.iter().position(|r| r.dir == p)
    }

    /// Rays strictly inside Mov.
    pub fn interior_walls(&self) -> Vec<usize> {
        match self.mov {
            Some((lo, hi)) if hi > lo + 1 => (lo + 1..hi).collect(),
            _ => vec![],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallLoci {
    pub contracted: Vec<i64>,
    pub extracted: Vec<i64>,
    pub base: Vec<i64>,
}

impl RankTwoToric {
    pub fn new(columns: Vec<Column>, partition: (Vec<usize>, Vec<usize>)) -> RankTwoToric {
        RankTwoToric { columns, partition, provenance: vec![] }
    }

    pub fn from_matrix(cols: &[[i64; 2]], split: usize) -> RankTwoToric {
        let columns = cols
            .iter()
            .enumerate()
            .map(|(i, &v)| Column { name: format!("c{i}"), v })
            .collect();
        RankTwoToric::new(columns, ((0..split).collect(), (split..cols.len()).collect()))
    }

    pub fn vectors(&self) -> Vec<[i64; 2]> {
        self.columns.iter().map(|c| c.v).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn chambers(&self) -> Result<ChamberDecomposition> {
        chambers_of(&self.vectors())
    }

    /// A unimodular A sending `ray` to a positive multiple of (1, 0), with the transformed variety.
    pub fn normalize_wall(&self, ray: [i64; 2]) -> Result<([[i64; 2]; 2], RankTwoToric)> {
        if ray == [0, 0] || !self.columns.iter().any(|c| det(c.v, ray) == 0 && dot(c.v, ray) > 0) {
            return Err(Error::RayNotFound(ray[0], ray[1]));
        }
        let p = primitive(ray);
        let e = p[0].extended_gcd(&p[1]);
        // e.gcd may come back negative
        let (s, t) = if e.gcd < 0 { (-e.x, -e.y) } else { (e.x, e.y) };
        let a = [[s, t], [-p[1], p[0]]];
        let mut out = self.clone();
        for c in &mut out.columns {
            c.v = apply(a, c.v);
        }
        if a != [[1, 0], [0, 1]] {
            out.provenance.push(format!("normalized wall ({},{}) by [[{},{}],[{},{}]]", ray[0], ray[1], s, t, -p[1], p[0]));
        }
        Ok((a, out))
    }

    /// Weighted projective loci swapped by crossing an interior wall.
    ///
    /// The contracted side is the side of the first block.
    pub fn wall_loci(&self, ray: [i64; 2]) -> Result<WallLoci> {
        let ch = self.chambers()?;
        let idx = ch.ray_index(ray).ok_or(Error::RayNotFound(ray[0], ray[1]))?;
        if !ch.interior_walls().contains(&idx) {
            return Err(Error::WallOnBoundary(ray[0], ray[1]));
        }
        let (_, t) = self.normalize_wall(ray)?;
        let first_side = self.partition.0.iter().map(|&i| t.columns[i].v[1].signum()).find(|&s| s != 0).unwrap_or(1);
        let mut loci = WallLoci { contracted: vec![], extracted: vec![], base: vec![] };
        for c in &t.columns {
            match c.v[1].signum() {
                0 => loci.base.push(c.v[0]),
                s if s == first_side => loci.contracted.push(c.v[1].abs()),
                _ => loci.extracted.push(c.v[1].abs()),
            }
        }
        Ok(loci)
    }
}

fn dot(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[0] + a[1] * b[1]
}

pub fn apply(a: [[i64; 2]; 2], v: [i64; 2]) -> [i64; 2] {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

/// Ray ordering, Eff and Mov of a column set.
///
/// A boundary ray of Eff carrying two or more columns stays movable, so Mov
/// shares it; otherwise Mov stops at the next ray in.
pub fn chambers_of(cols: &[[i64; 2]]) -> Result<ChamberDecomposition> {
    if cols.is_empty() || cols.contains(&[0, 0]) {
        return Err(Error::NonConvex);
    }
    let first = cols.iter().copied().find(|&f| cols.iter().all(|&c| det(f, c) <= 0 && (det(f, c) != 0 || dot(f, c) > 0)));
    let last = cols.iter().copied().find(|&l| cols.iter().all(|&c| det(c, l) <= 0 && (det(c, l) != 0 || dot(c, l) > 0)));
    let (Some(f), Some(l)) = (first, last) else {
        return Err(Error::NonConvex);
    };
    if det(f, l) > 0 || (det(f, l) == 0 && dot(f, l) < 0) {
        return Err(Error::NonConvex);
    }
    let mut rays: Vec<Ray> = Vec::new();
    for (i, &c) in cols.iter().enumerate() {
        let p = primitive(c);
        match rays.iter_mut().find(|r| r.dir == p) {
            Some(r) => r.columns.push(i),
            None => rays.push(Ray { dir: p, columns: vec![i] }),
        }
    }
    rays.sort_by(|a, b| ray_cmp(a.dir, b.dir));
    let n = rays.len();
    let lo = if rays[0].columns.len() > 1 { 0 } else { 1 };
    let hi = if rays[n - 1].columns.len() > 1 { n - 1 } else { n.saturating_sub(2) };
    let mov = (n > 0 && lo <= hi && hi < n).then_some((lo, hi));
    let chambers = match mov {
        Some((lo, hi)) => (lo..hi).map(|i| (i, i + 1)).collect(),
        None => vec![],
    };
    Ok(ChamberDecomposition { rays, eff: (0, n - 1), mov, chambers })
}

/// Divides rows by their content and reports the order of the residual cyclic action.
///
/// The last column is read as the contracted divisor D: with e the content of
/// D's column, g the gcd of det(D/e, c) over the other columns and i the gcd
/// of all 2×2 minors, the residual order is e·g/i.
pub fn well_form_rank2(t: &RankTwoToric) -> (RankTwoToric, i64) {
    let cols = t.vectors();
    let mut out = t.clone();
    for row in 0..2 {
        let g = cols.iter().fold(0i64, |g, c| g.gcd(&c[row]));
        if g > 1 {
            for c in &mut out.columns {
                c.v[row] /= g;
            }
            out.provenance.push(format!("divided row {} by {g}", row + 1));
        }
    }
    (out, residual_order(&cols))
}

pub fn residual_order(cols: &[[i64; 2]]) -> i64 {
    let Some((&d, rest)) = cols.split_last() else {
        return 1;
    };
    if rest.is_empty() || d == [0, 0] {
        return 1;
    }
    let e = content(d);
    let p = primitive(d);
    let g = rest.iter().fold(0i64, |g, &c| g.gcd(&det(p, c)));
    let mut idx = 0i64;
    for (i, &a) in cols.iter().enumerate() {
        for &b in &cols[i + 1..] {
            idx = idx.gcd(&det(a, b));
        }
    }
    if idx == 0 {
        return 1;
    }
    e * g / idx
}
