//! Serializable reports and Big-Table style markdown rows.

use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, WciFamily};
use crate::error::{Error, Result};
use crate::exclusion::{self, CurveVerdict};
use crate::game::{self, join, FiberKind, LinkStep, SarkisovLink, Verdict};
use crate::monomial::{Tag, NAMES};
use crate::tags::REGISTRY;
use crate::wps::{self, Cqs};
use crate::Q;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkSummary {
    pub centre: Cqs,
    pub coordinate: Option<String>,
    pub tags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assumption: Option<String>,
    pub steps: Vec<LinkStep>,
    pub verdict: Option<Verdict>,
    #[serde(with = "crate::qstr::opt")]
    pub initial_discrepancy: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl LinkSummary {
    pub fn from_link(link: &SarkisovLink, assumption: Option<&str>) -> LinkSummary {
        let b = &link.blowup;
        LinkSummary {
            centre: b.sing,
            coordinate: Some(NAMES[b.centre].to_string()),
            tags: b.tags.iter().map(Tag::to_string).collect(),
            assumption: assumption.map(str::to_string),
            steps: link.steps.clone(),
            verdict: Some(link.verdict),
            initial_discrepancy: Some(link.initial_discrepancy),
            error: None,
        }
    }

    pub fn from_error(centre: Cqs, assumption: Option<&str>, e: &Error) -> LinkSummary {
        LinkSummary {
            centre,
            coordinate: None,
            tags: vec![],
            assumption: assumption.map(str::to_string),
            steps: vec![],
            verdict: None,
            initial_discrepancy: None,
            error: Some(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentreExclusion {
    pub centre: Cqs,
    /// (−K_Y)²·(−K_Y − E).
    #[serde(with = "crate::qstr")]
    pub badlink_product: Q,
    /// (−K_Y)³ on the Kawamata blowup.
    #[serde(with = "crate::qstr")]
    pub anticanonical_cube: Q,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExclusionSummary {
    #[serde(with = "crate::qstr")]
    pub threshold: Q,
    pub curves: CurveVerdict,
    pub centres: Vec<CentreExclusion>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format: u32,
    pub family: u32,
    pub data_unverified: bool,
    pub assumptions: Vec<String>,
    pub links: Vec<LinkSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exclusion: Option<ExclusionSummary>,
}

impl Report {
    pub fn new(f: &WciFamily) -> Report {
        Report {
            format: FORMAT_VERSION,
            family: f.id,
            data_unverified: f.is_data_unverified(),
            assumptions: f.assumptions.clone(),
            links: vec![],
            exclusion: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Report> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn exclusion_summary(f: &WciFamily) -> Result<ExclusionSummary> {
    let k = exclusion::DivisorClass2::anticanonical();
    let mut seen: Vec<Cqs> = vec![];
    let mut centres = vec![];
    for b in &f.basket {
        let s = wps::cqs_normal_form(&b.sing())?;
        if seen.contains(&s) {
            continue;
        }
        seen.push(s);
        centres.push(CentreExclusion {
            centre: s,
            badlink_product: exclusion::badlink_product(f, &s)?,
            anticanonical_cube: exclusion::triple_product_at(f, &s, [k, k, k])?,
        });
    }
    Ok(ExclusionSummary {
        threshold: exclusion::isolating_threshold(f),
        curves: exclusion::curve_exclusion(f),
        centres,
        note: "bad-link conclusions are conditional on the irreducibility hypothesis for Γ".into(),
    })
}

/// One summary per distinct basket centre, then one per registry special member.
pub fn family_links(f: &WciFamily) -> Vec<LinkSummary> {
    let mut out = vec![];
    let mut seen: Vec<Cqs> = vec![];
    for b in &f.basket {
        let s = wps::cqs_normal_form(&b.sing()).unwrap_or(b.sing());
        if seen.contains(&s) {
            continue;
        }
        seen.push(s);
        out.push(link_summary(f, &s, &[], None));
    }
    for a in REGISTRY.iter().filter(|a| a.families.contains(&f.id)) {
        out.push(link_summary(f, &a.centre, &a.parsed_tags(), Some(a.name)));
    }
    out
}

pub fn link_summary(f: &WciFamily, s: &Cqs, tags: &[Tag], assumption: Option<&str>) -> LinkSummary {
    match wps::locate_centre(f, s, tags).and_then(|c| game::run_link(f, &c)) {
        Ok(link) => LinkSummary::from_link(&link, assumption),
        Err(e) => LinkSummary::from_error(*s, assumption, &e),
    }
}

pub fn table_report(cat: &Catalog, ids: &[u32]) -> Result<Vec<Report>> {
    let fams: Vec<&WciFamily> = if ids.is_empty() {
        cat.families().iter().collect()
    } else {
        ids.iter().map(|&id| cat.family(id)).collect::<Result<_>>()?
    };
    Ok(fams
        .into_iter()
        .map(|f| {
            let mut r = Report::new(f);
            r.links = family_links(f);
            r
        })
        .collect())
}

fn sub(n: i64) -> String {
    n.to_string()
        .chars()
        .map(|c| match c {
            '0'..='9' => char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap(),
            '-' => '₋',
            x => x,
        })
        .collect()
}

fn subs(v: &[i64]) -> String {
    v.iter().map(|&d| sub(d)).collect::<Vec<_>>().join(",")
}

fn signed(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string().replace('-', "−")).collect::<Vec<_>>().join(",")
}

pub fn step_label(s: &LinkStep) -> String {
    match s {
        LinkStep::Isomorphism { .. } => "iso".into(),
        LinkStep::Flop { count: Some(c), .. } => format!("{c} flops"),
        LinkStep::Flop { count: None, .. } => "flop".into(),
        LinkStep::Flip { weights, degrees, .. } | LinkStep::Antiflip { weights, degrees, .. } => {
            let name = if matches!(s, LinkStep::Flip { .. }) { "flip" } else { "antiflip" };
            if degrees.is_empty() {
                format!("{name} ({})", signed(weights))
            } else {
                format!("{name} ({};{})", signed(weights), signed(degrees))
            }
        }
        LinkStep::RequiresUnprojection { .. } => "requires unprojection".into(),
        other => endpoint_label(other),
    }
}

pub fn endpoint_label(s: &LinkStep) -> String {
    let model = |w: &[i64], d: &[i64], r: i64| {
        let q = if r > 1 { format!("/μ{}", sub(r)) } else { String::new() };
        format!("Z{} ⊂ ℙ({}){q}", subs(d), join(w))
    };
    match s {
        LinkStep::DivisorialToPoint { target_weights, target_degrees, point, residual_order, .. } => {
            format!("{}, {point}", model(target_weights, target_degrees, *residual_order))
        }
        LinkStep::DivisorialToCurve { target_weights, target_degrees, curve_weights, curve_degrees, residual_order, .. } => {
            let c = if curve_degrees.is_empty() {
                format!("ℙ({})", join(curve_weights))
            } else {
                format!("C{} ⊂ ℙ({})", subs(curve_degrees), join(curve_weights))
            };
            format!("{}, curve {c}", model(target_weights, target_degrees, *residual_order))
        }
        LinkStep::Fibration { base_weights, base_degrees, fiber, .. } => {
            let base = if base_degrees.is_empty() {
                format!("ℙ({})", join(base_weights))
            } else {
                format!("S{} ⊂ ℙ({})", subs(base_degrees), join(base_weights))
            };
            match fiber {
                FiberKind::Conic => format!("conic bundle / {base}"),
                FiberKind::DelPezzo { degree } if degree.is_integer() => {
                    format!("dP{} fibration / {base}", sub(degree.to_integer()))
                }
                FiberKind::DelPezzo { degree } => format!("dP({degree}) fibration / {base}"),
            }
        }
        LinkStep::RequiresUnprojection { reason, .. } => format!("requires unprojection ({reason})"),
        other => step_label(other),
    }
}

pub fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::TypeI => "type I",
        Verdict::TypeII => "type II",
        Verdict::BirationalInvolution => "birational involution",
        Verdict::BadLink => "bad link (excluded)",
        Verdict::RequiresUnprojection => "requires unprojection",
    }
}

pub const TABLE_HEADER: &str =
    "| family | centre | small modifications | blowup, discrepancy | endpoint | link |\n|---|---|---|---|---|---|";

pub fn markdown_row(family: &WciFamily, l: &LinkSummary) -> String {
    let fam = if family.is_data_unverified() {
        format!("{} (data-unverified)", family.id)
    } else {
        family.id.to_string()
    };
    let mut centre = l.centre.to_string();
    if let Some(c) = &l.coordinate {
        centre.push_str(&format!(" at p_{c}"));
    }
    if let Some(a) = &l.assumption {
        centre.push_str(&format!(" [{a}]"));
    }
    if let Some(e) = &l.error {
        return format!("| {fam} | {centre} | | | | error: {e} |");
    }
    let (small, last) = match l.steps.split_last() {
        Some((last, rest)) if !last.is_small() => (rest, Some(last)),
        _ => (&l.steps[..], None),
    };
    let small = small.iter().map(step_label).collect::<Vec<_>>().join(", ");
    let blow = match last {
        Some(LinkStep::DivisorialToPoint { blowup_weights, blowup_index, discrepancy, .. }) => {
            format!("1/{blowup_index}({}), {discrepancy}", join(blowup_weights))
        }
        Some(LinkStep::DivisorialToCurve { discrepancy, .. }) => format!("curve, {discrepancy}"),
        _ => String::new(),
    };
    let verdict = l.verdict.expect("summaries without error carry a verdict");
    let end = match (verdict, last) {
        (Verdict::BadLink, _) => String::new(),
        (_, Some(s)) => endpoint_label(s),
        (_, None) => String::new(),
    };
    format!("| {fam} | {centre} | {small} | {blow} | {end} | {} |", verdict_label(verdict))
}

pub fn markdown_table(cat: &Catalog, reports: &[Report]) -> String {
    let mut s = String::from(TABLE_HEADER);
    for r in reports {
        let f = cat.family(r.family).expect("report families come from the catalog");
        for l in &r.links {
            s.push('\n');
            s.push_str(&markdown_row(f, l));
        }
    }
    s
}
