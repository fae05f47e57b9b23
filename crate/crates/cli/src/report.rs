use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use vertexlab::constructions::{build_family, Family, FamilyCurve, FamilyParams};
use vertexlab::curves::{count_inflections, count_vertices_adaptive, curvature_profile, CurvatureProfile, Differentiation};
use vertexlab::maps::quotient_simplicity_check;
use vertexlab::verify::SuiteReport;

/// Output of a `build` or `verify` run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<FamilyParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inflections: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariance_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplicity: Option<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            command,
            family: None,
            params: None,
            samples: None,
            tol: None,
            period: None,
            vertices: None,
            inflections: None,
            invariance_residual: None,
            simplicity: None,
            notes: Vec::new(),
            suite: None,
            lines: Vec::new(),
            wall_time_s: None,
        }
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self)?;
        Ok(serde_json::to_string_pretty(&value)? + "\n")
    }
}

/// A built family member with its profile and counts.
pub struct Built {
    pub family: FamilyCurve,
    pub profile: CurvatureProfile,
    pub vertex_params: Vec<f64>,
    pub inflection_params: Vec<f64>,
}

pub fn build(family: Family, params: &FamilyParams, samples: usize, tol: f64, report: &mut RunReport) -> Result<Built> {
    let fc = build_family(family, params).with_context(|| format!("building {family}"))?;
    let (vertices, n) = count_vertices_adaptive(&fc.curve, samples, tol, Differentiation::Analytic)
        .with_context(|| format!("counting vertices of {family}"))?;
    let profile = curvature_profile(&fc.curve, n)?;
    let inflections = count_inflections(&profile, tol).with_context(|| format!("counting inflections of {family}"))?;
    if vertices.all_critical {
        report.notes.push("all_critical: geodesic curvature is constant along the curve".into());
    }
    if fc.curve.wrap_sign() < 0.0 {
        report.notes.push("glide closure: κ changes sign across the period; counts are per fundamental interval".into());
    }
    if n != samples {
        report.notes.push(format!("resampled to {n} points to separate close critical points"));
    }
    if fc.curve.ambient().chart().is_some() {
        let simple = quotient_simplicity_check(&fc.curve, fc.quotient.as_ref(), 2048)?;
        report.simplicity = Some(simple.to_json());
    }
    report.family = Some(family);
    report.params = Some(fc.params.clone());
    report.samples = Some(n);
    report.tol = Some(tol);
    report.period = Some(fc.curve.period());
    report.vertices = Some(vertices.to_json());
    report.inflections = Some(inflections.to_json());
    report.invariance_residual = fc.invariance_residual;
    Ok(Built {
        vertex_params: vertices.parameters(),
        inflection_params: inflections.inflections.iter().map(|i| i.t).collect(),
        family: fc,
        profile,
    })
}

/// CSV of suite checks: `suite,check,passed,count,detail`.
pub fn suite_csv(report: &SuiteReport) -> String {
    let mut out = String::from("suite,check,passed,count,detail\n");
    for c in &report.checks {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            report.suite,
            quote(&c.name),
            c.passed,
            c.count.map_or(String::new(), |n| n.to_string()),
            quote(&c.detail)
        ));
    }
    out
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let mut r = RunReport::new(vec!["x".into()]);
        r.tol = Some(1e-7);
        r.family = Some(Family::Cyl2v);
        let json = r.to_json().unwrap();
        let (c, f, t) = (json.find("command").unwrap(), json.find("family").unwrap(), json.find("tol").unwrap());
        assert!(c < f && f < t);
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.family, Some(Family::Cyl2v));
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(quote("a,b"), "\"a,b\"");
        assert_eq!(quote("plain"), "plain");
    }
}
