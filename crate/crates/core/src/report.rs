//! Reports: ordered records of exact values rendered as text or JSON.
//!
//! JSON schema:
//!
//! ```text
//! { "command": string,
//!   "digest":  string,            // hex SHA-256 of the input
//!   "records": [ { "kind": string, "fields": { name: string, ... } }, ... ] }
//! ```
//!
//! Field order is significant and preserved. Exact values are strings in the
//! spec-file literal syntax; floats carry 12 significant digits and always sit
//! next to the exact value they approximate.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::angle::{Angle, Direction};
use crate::classify::{
    cc_count, cc_profile, detect_overtwisted, distinguish, CcProfile, DistinguishMode, DistinguishWitness,
    HomotopyCertificate, OvertwistedCertificate,
};
use crate::cut::{classify_lens, slice_by_ray, CutSpec, LensDescriptor};
use crate::standard::{alpha_k_spec, ex1_line, lens_spec};
use crate::symplectization::CommuteReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub kind: String,
    pub fields: IndexMap<String, String>,
}

impl Record {
    pub fn new(kind: impl Into<String>) -> Self {
        Record { kind: kind.into(), fields: IndexMap::new() }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.fields.insert(key.into(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.get(key).map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub digest: String,
    pub records: Vec<Record>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl Report {
    pub fn new(command: impl Into<String>, input: &[u8]) -> Self {
        let digest = Sha256::digest(input).iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        Report { command: command.into(), digest, records: Vec::new() }
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn records_of<'a>(&'a self, kind: &'a str) -> impl Iterator<Item = &'a Record> {
        self.records.iter().filter(move |r| r.kind == kind)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\ndigest: {}\n", self.command, self.digest);
        for r in &self.records {
            let _ = writeln!(out, "\n[{}]", r.kind);
            for (k, v) in &r.fields {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

/// 12 significant digits.
pub fn float(x: f64) -> String {
    format!("{x:.11e}")
}

fn pair(d: Direction) -> String {
    format!("({d})")
}

/// Appends `kind`, `slope` and `normal_form`.
pub fn with_lens(r: Record, d: &LensDescriptor) -> Record {
    let normal = d.normal_form.map_or("none".to_string(), |(q, p)| format!("({q},{p})"));
    r.with("kind", d.kind)
        .with("slope", d.slope_string())
        .with("normal_form", normal)
}

pub fn profile_record(p: &CcProfile) -> Record {
    let mut r = Record::new("profile").with("min", p.min_count).with("max", p.max_count);
    for (i, arc) in p.arcs.iter().enumerate() {
        let bracket = if arc.closed { "closed" } else { "open" };
        r = r.with(
            format!("arc{i}"),
            format!(
                "{bracket} from ({}) length {} ({} rad) count {}",
                arc.start,
                arc.length,
                float(arc.length.to_f64()),
                arc.count
            ),
        );
    }
    for (i, (d, c)) in p.points.iter().enumerate() {
        r = r.with(format!("point{i}"), format!("({d}) count {c}"));
    }
    r.with("integral", format!("{} ({} rad)", p.integral(), float(p.integral().to_f64())))
}

pub fn overtwisted_record(cert: Option<&OvertwistedCertificate>) -> Record {
    let r = Record::new("overtwisted");
    match cert {
        None => r.with("verdict", "none-found"),
        Some(c) => {
            let t_exact = c.crossing.t_exact.map_or("irrational".to_string(), |t| t.to_string());
            r.with("verdict", "yes")
                .with("side", c.side)
                .with("j", c.j)
                .with("phi(t*)", c.target_angle)
                .with("t*", t_exact)
                .with("t*~", float(c.crossing.t_approx))
                .with("collapse", pair(c.collapse))
                .with("fixed_coordinate", pair(c.fixed_coordinate))
        }
    }
}

pub fn witness_record(w: Option<&DistinguishWitness>, mode: DistinguishMode) -> Record {
    let r = Record::new("distinguish").with("mode", mode);
    match w {
        None => r.with("verdict", "indistinguishable by this invariant"),
        Some(DistinguishWitness::FixedAction { xi_plus, counts_plus, xi_minus, counts_minus }) => r
            .with("verdict", "distinct")
            .with("xi_plus", pair(*xi_plus))
            .with("counts_plus", format!("{} vs {}", counts_plus.0, counts_plus.1))
            .with("xi_minus", pair(*xi_minus))
            .with("counts_minus", format!("{} vs {}", counts_minus.0, counts_minus.1)),
        Some(DistinguishWitness::ModuloGl2z { summary_a, summary_b }) => r
            .with("verdict", "distinct")
            .with("profile_a", format!("min {} max {}", summary_a.0, summary_a.1))
            .with("profile_b", format!("min {} max {}", summary_b.0, summary_b.1)),
    }
}

pub fn homotopy_record(h: &HomotopyCertificate) -> Record {
    let mut r = Record::new("homotopy")
        .with("verdict", "homotopic as plane fields")
        .with("planar_zeros", h.planar_zeros.len());
    for (i, z) in h.planar_zeros.iter().enumerate() {
        let t = z.t_exact.map_or("irrational".to_string(), |t| t.to_string());
        let s = z.s_exact.map_or("irrational".to_string(), |s| s.to_string());
        let mut text = format!("t = {t} ({}) s = {s} ({}) dt-lift = {}", float(z.t_approx), float(z.s_approx), float(z.lift));
        if let Some(until) = z.t_until {
            text.push_str(&format!(" through t = {}", float(until)));
        }
        r = r.with(format!("zero{i}"), text);
    }
    r
}

pub fn commute_records(report: &CommuteReport) -> Vec<Record> {
    report
        .checks
        .iter()
        .map(|c| {
            Record::new("symplectization")
                .with("side", c.side)
                .with("collapse", pair(c.collapse))
                .with("check", c.kind)
                .with("result", if c.passed { "pass" } else { "FAIL" })
                .with("detail", &c.detail)
        })
        .collect()
}

/// `cc(m,n) = …` at the two probe rays.
fn probe_counts(r: Record, spec: &CutSpec) -> Record {
    let a = Direction::new(-1, 1).unwrap();
    r.with("cc(-1,1)", cc_count(spec, a)).with("cc(1,-1)", cc_count(spec, -a))
}

pub const DEFAULT_LENS_TABLE: [(i64, i64); 4] = [(1, 1), (2, 1), (1, 2), (2, 3)];

fn alpha_row(k: u32) -> Record {
    let spec = alpha_k_spec(k).expect("alpha_k is a valid cut");
    let lens = classify_lens(&spec);
    let profile = cc_profile(&spec);
    let cert = detect_overtwisted(&spec);
    let mut r = probe_counts(
        Record::new("alpha_k")
            .with("k", k)
            .with("sweep", spec.form().sweep())
            .with("lens", lens.kind)
            .with("slope", lens.slope_string()),
        &spec,
    )
    .with("profile.min", profile.min_count)
    .with("profile.max", profile.max_count)
    .with("overtwisted", if cert.is_some() { "yes" } else { "none-found" });
    if let Some(c) = &cert {
        r = r
            .with("t*", c.crossing.t_exact.map_or("irrational".to_string(), |t| t.to_string()))
            .with("t*~", float(c.crossing.t_approx));
    }
    if k == 0 {
        r = r.with("tag", "standard tight");
    }
    r
}

fn lens_rows(k: i64, l: i64) -> Vec<Record> {
    let specs: Vec<CutSpec> = (1..=3).map(|j| lens_spec(k, l, j).expect("lens data is a valid cut")).collect();
    let mut out: Vec<Record> = specs
        .iter()
        .zip(1..)
        .map(|(spec, j)| {
            let d = classify_lens(spec);
            let p = cc_profile(spec);
            with_lens(Record::new("lens").with("k", k).with("l", l).with("j", j), &d)
                .with("profile.min", p.min_count).with("profile.max", p.max_count)
        })
        .collect();
    for (i, a) in specs.iter().enumerate() {
        for (j, b) in specs.iter().enumerate().skip(i + 1) {
            let w = distinguish(a, b, DistinguishMode::FixedAction);
            let verified = w.as_ref().is_some_and(|w| w.verify(a, b));
            out.push(
                witness_record(w.as_ref(), DistinguishMode::FixedAction)
                    .with("pair", format!("L({k},{l}) j={} vs j={}", i + 1, j + 1))
                    .with("verified", verified),
            );
        }
    }
    out
}

fn slice_rows() -> Vec<Record> {
    let form = ex1_line(3).expect("line form");
    let eta = Direction::NORTH;
    let window = (Angle::half_turns(-3), Angle::half_turns(3));
    let pieces = slice_by_ray(&form, eta, window).expect("slices are valid cuts");
    let mut out = vec![Record::new("ex1-slice")
        .with("eta", pair(eta))
        .with("window", format!("[{}, {}]", window.0, window.1))
        .with("pieces", pieces.len())];
    for (i, piece) in pieces.iter().enumerate() {
        let lens = classify_lens(piece);
        out.push(
            Record::new("ex1-piece")
                .with("index", i)
                .with("phi", format!("[{}, {}]", piece.form().phi().start(), piece.form().phi().end()))
                .with("lens", lens.kind)
                .with("overtwisted", if detect_overtwisted(piece).is_some() { "yes" } else { "none-found" }),
        );
    }
    out
}

/// The full table: the rotating family, its pairwise distinguish matrix, the
/// lens family and the slicing of the line form.
pub fn reproduce_paper(kmax: u32, lens_table: &[(i64, i64)]) -> Report {
    let echo = format!("reproduce-paper --kmax {kmax} --lens-table {lens_table:?}");
    let mut report = Report::new("reproduce-paper", echo.as_bytes());
    report.command = echo;
    for k in 0..=kmax {
        report.push(alpha_row(k));
    }
    for k in 1..=kmax {
        for l in k + 1..=kmax {
            let (a, b) = (alpha_k_spec(k).unwrap(), alpha_k_spec(l).unwrap());
            for mode in [DistinguishMode::FixedAction, DistinguishMode::ModuloGl2z] {
                let w = distinguish(&a, &b, mode);
                let verified = w.as_ref().is_some_and(|w| w.verify(&a, &b));
                report.push(
                    witness_record(w.as_ref(), mode)
                        .with("pair", format!("alpha_{k} vs alpha_{l}"))
                        .with("verified", verified),
                );
            }
        }
    }
    for &(k, l) in lens_table {
        report.records.extend(lens_rows(k, l));
    }
    report.records.extend(slice_rows());
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduce_rows() {
        let r = reproduce_paper(3, &DEFAULT_LENS_TABLE);
        let rows: Vec<&Record> = r.records_of("alpha_k").collect();
        assert_eq!(rows.len(), 4);
        for (k, row) in rows.iter().enumerate().skip(1) {
            assert_eq!(row.get("cc(-1,1)"), Some(k.to_string().as_str()));
            assert_eq!(row.get("overtwisted"), Some("yes"));
        }
        assert_eq!(rows[0].get("lens"), Some("S3"));
        assert_eq!(rows[0].get("overtwisted"), Some("none-found"));
        assert_eq!(rows[0].get("tag"), Some("standard tight"));
        let lens21 = r
            .records_of("lens")
            .find(|x| x.get("k") == Some("2") && x.get("l") == Some("1"))
            .unwrap();
        assert_eq!(lens21.get("slope"), Some("-2/1"));
        assert!(r.records_of("distinguish").all(|x| x.get("verified") == Some("true")));
        assert_eq!(r.records_of("ex1-slice").next().unwrap().get("pieces"), Some("3"));
    }

    #[test]
    fn text_contains_counts() {
        let text = reproduce_paper(1, &[]).to_text();
        assert!(text.contains("cc(-1,1) = 1"));
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let r = reproduce_paper(2, &DEFAULT_LENS_TABLE);
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        assert_eq!(reproduce_paper(2, &DEFAULT_LENS_TABLE).to_json(), r.to_json());
        let empty = Report::new("check", b"");
        let v: serde_json::Value = serde_json::from_str(&empty.to_json()).unwrap();
        assert_eq!(v["command"], "check");
        assert_eq!(v["records"], serde_json::json!([]));
        assert_eq!(v["digest"], "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn float_has_twelve_significant_digits() {
        assert_eq!(float(std::f64::consts::PI), "3.14159265359e0");
        assert_eq!(float(2.0 / 9.0), "2.22222222222e-1");
    }
}
