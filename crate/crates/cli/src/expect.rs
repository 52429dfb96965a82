//! `.expect` sidecars: `key = value` lines checked against a report.
//!
//! ```text
//! d = 3
//! exponents = 2, 2, 2, 2
//! tau = 1
//! verdict(0:0:1) = qh
//! ```
//! Keys: `n d m exponents second_degrees tau mu deg_j global_qh points qh
//! non_qh geometric_points residual_points residual_degree zf_class sf_class
//! witness_degree`, and per point `verdict(P) tau(P) mu(P) rank(P)`.

use qhsyz::poly::parse_field;
use qhsyz::singular::{ProjectivePoint, SingularityRecord, Verdict};

use crate::report::ReportDocument;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectations {
    entries: Vec<(usize, String, String)>,
}

impl Expectations {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected `key = value`", i + 1))?;
            entries.push((i + 1, k.trim().to_string(), v.trim().to_string()));
        }
        Ok(Self { entries })
    }

    /// Mismatches between the expectations and `doc`; an unknown key or a
    /// malformed value counts as a mismatch.
    pub fn check(&self, doc: &ReportDocument) -> Vec<String> {
        self.entries
            .iter()
            .filter_map(|(line, k, v)| match actual(doc, k) {
                Ok(a) if normalize(v) == a => None,
                Ok(a) => Some(format!("{k}: expected {v}, got {a}")),
                Err(e) => Some(format!("line {line}: {e}")),
            })
            .collect()
    }
}

fn normalize(v: &str) -> String {
    v.split(',').map(str::trim).collect::<Vec<_>>().join(",")
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn point<'a>(doc: &'a ReportDocument, spec: &str) -> Result<&'a SingularityRecord, String> {
    let field = parse_field(&doc.report.field).map_err(|e| e.to_string())?;
    let p = ProjectivePoint::parse(spec, &field)
        .map_err(|e| format!("point ({spec}): {e}"))?
        .ok_or_else(|| format!("point ({spec}) is zero"))?;
    let coords = p.to_strings(&field);
    doc.report
        .points
        .iter()
        .find(|r| r.point == coords)
        .ok_or_else(|| format!("no singular point ({spec}) in the report"))
}

fn actual(doc: &ReportDocument, key: &str) -> Result<String, String> {
    let r = &doc.report;
    let res = &r.resolution;
    if let Some((name, rest)) = key.split_once('(') {
        let spec = rest.strip_suffix(')').ok_or_else(|| format!("malformed key `{key}`"))?;
        let p = point(doc, spec)?;
        return Ok(match name.trim() {
            "verdict" => match p.verdict {
                Verdict::QuasiHomogeneous => "qh".into(),
                Verdict::NonQuasiHomogeneous => "non_qh".into(),
            },
            "tau" => p.tau.to_string(),
            "mu" => p.mu.to_string(),
            "rank" => p.rank_mf.to_string(),
            other => return Err(format!("unknown key `{other}(..)`")),
        });
    }
    let planar = || doc.planar.as_ref().ok_or_else(|| format!("`{key}` needs the planar report"));
    Ok(match key {
        "n" => r.n.to_string(),
        "d" => r.d.to_string(),
        "m" => res.m.to_string(),
        "exponents" => list(&res.exponents),
        "second_degrees" => list(&res.second_degrees),
        "tau" => r.tau_total.to_string(),
        "mu" => r.mu_total.to_string(),
        "deg_j" => r.jacobian_degree.to_string(),
        "global_qh" => r.global_all_qh.to_string(),
        "points" => r.points.len().to_string(),
        "qh" => doc.qh_count().to_string(),
        "non_qh" => doc.non_qh_count().to_string(),
        "geometric_points" => r.geometric_points.to_string(),
        "residual_points" => r.residual_points.to_string(),
        "residual_degree" => r.residual_locus_degree.to_string(),
        "witness_degree" => r.witness.as_ref().map_or("none".into(), |w| w.exponent.to_string()),
        "zf_class" => {
            let c = planar()?.classes.z_f;
            list(&[c.alpha, c.beta, c.gamma])
        }
        "sf_class" => {
            let c = planar()?.classes.s_f;
            list(&[c.alpha, c.beta, c.gamma])
        }
        _ => return Err(format!("unknown key `{key}`")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_poly_file;
    use crate::report::{run, RunOptions};

    #[test]
    fn checks_keys() {
        let input = parse_poly_file("ring x0..x2\nx1^2*x2 - x0^2*(x0+x2)", None).unwrap();
        let doc = run(&input, &RunOptions::default()).document().unwrap().clone();
        let good =
            Expectations::parse("d=3\nexponents = 2, 2,2,2\ntau = 1 # node\nverdict(0:0:1) = qh\nzf_class = 3,2,1")
                .unwrap();
        assert_eq!(good.check(&doc), Vec::<String>::new());
        let bad = Expectations::parse("tau = 2\ncolour = red\nmu(1:0:0) = 1\n").unwrap();
        assert_eq!(bad.check(&doc).len(), 3);
        assert!(Expectations::parse("tau 1").is_err());
    }
}
