//! Self-checks of one input: every structured answer is compared with a
//! brute-force or symbolic reference computation.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::derivation::{AlgebraElement, HomogeneousDerivation, Nilpotency, Operator, SemigroupAlgebra, SupportMode};
use crate::error::Result;
use crate::input::MonoidInputDocument;
use crate::invariants::{analyze, split_membership, InvariantReport};
use crate::lattice::{pair, rank_of_rows, LatticePoint, LatticeVector};
use crate::monoid::{AffineMonoid, Bounds};
use crate::oracle::{brute_force_holes, brute_force_members};
use crate::report::ReportDocument;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckReport {
    #[serde(with = "crate::wire::int")]
    pub degree_bound: BigInt,
    pub checks: Vec<CheckResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        for c in &self.checks {
            let _ = writeln!(o, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        o
    }
}

struct Suite {
    checks: Vec<CheckResult>,
}

impl Suite {
    fn record(&mut self, name: &str, failure: Option<String>, ok_detail: String) {
        let passed = failure.is_none();
        self.checks.push(CheckResult {
            name: name.into(),
            passed,
            detail: failure.unwrap_or(ok_detail),
        });
    }
}

/// Degree bound used by the checks: the analysis bound, capped to keep
/// brute-force enumeration small.
pub fn check_bound(monoid: &AffineMonoid, bounds: &Bounds) -> BigInt {
    let cap = BigInt::from(12).max(monoid.max_generator_degree() * 2);
    bounds.degree_bound.clone().min(cap)
}

/// Root-type derivations attached to the report: slice derivations and the
/// descending roots of almost saturated facets.
pub fn report_derivations(report: &InvariantReport) -> Vec<(String, HomogeneousDerivation)> {
    let sigma = report.monoid.sigma();
    let mut out = Vec::new();
    for c in &report.facets {
        if let Some(r) = &c.descending_root {
            out.push((format!("root of facet {}", c.facet), r.derivation(sigma)));
        }
        if let Some(s) = &c.slice {
            out.push((format!("slice derivation of facet {}", c.facet), s.derivation.clone()));
        }
    }
    out
}

/// Runs every check on one input.
pub fn run_checks(input: &MonoidInputDocument, monoid: &AffineMonoid, bounds: &Bounds, exact_only: bool) -> Result<CheckReport> {
    let report = analyze(monoid, bounds, exact_only)?;
    let b = check_bound(monoid, bounds);
    let mut s = Suite { checks: Vec::new() };
    let points = monoid.points_up_to(&b);
    let brute = brute_force_members(monoid, &b);

    let bad = points.iter().find(|p| monoid.membership(p) != brute.contains(*p));
    s.record(
        "membership-oracle",
        bad.map(|p| format!("solver and brute force disagree at {p}")),
        format!("{} points of degree <= {b}", points.len()),
    );
    let bad = points.iter().find(|p| monoid.contains(p) != brute.contains(*p));
    s.record(
        "structured-membership",
        bad.map(|p| format!("structured test and brute force disagree at {p}")),
        format!("{} points", points.len()),
    );
    let mut holes = monoid.holes_up_to(&b);
    let mut bf_holes = brute_force_holes(monoid, &b);
    holes.sort();
    bf_holes.sort();
    s.record(
        "hole-list",
        (holes != bf_holes).then(|| format!("{} holes listed, {} found by brute force", holes.len(), bf_holes.len())),
        format!("{} holes of degree <= {b}", holes.len()),
    );

    let mut failure = None;
    let mut n = 0;
    for c in &report.facets {
        if let Some(w) = c.saturation.status.saturation_witness() {
            n += 1;
            let on = pair(w, &c.normal) == BigInt::ZERO;
            let sat = monoid.is_saturation_point(w, &bounds.degree_bound).map(|v| v.is_yes()).unwrap_or(false);
            if !(monoid.contains(w) && on && sat) {
                failure = Some(format!("witness {w} of facet {} is not a saturation point on it", c.facet));
            }
        }
    }
    s.record("saturation-witnesses", failure, format!("{n} witnesses"));

    let mut failure = None;
    let mut n = 0;
    for c in &report.facets {
        if let Some(r) = &c.descending_root {
            n += 1;
            if !r.is_valid(monoid.sigma()) || !monoid.descends(&r.e, &bounds.degree_bound).is_yes() {
                failure = Some(format!("root {} of facet {} does not descend", r.e, c.facet));
            }
        }
    }
    s.record("descending-roots", failure, format!("{n} roots"));

    let alg = SemigroupAlgebra::new(monoid.clone(), SupportMode::Strict);
    let members: Vec<LatticePoint> = brute.iter().cloned().collect();
    let derivations = report_derivations(&report);
    let mut failure = None;
    'outer: for (name, d) in &derivations {
        let op: Operator = d.clone().into();
        for m in &members {
            let f = AlgebraElement::monomial(m.clone());
            let bound = usize::try_from(pair(m, &d.rho)).unwrap_or(0) + 2;
            if let Err(e) = alg.apply(&op, &f, bound) {
                failure = Some(format!("{name} on x^{m}: {e}"));
                break 'outer;
            }
            if op.nilpotency_index(&f, bound)?.index().is_none() {
                failure = Some(format!("{name} is not nilpotent on x^{m}"));
                break 'outer;
            }
        }
    }
    s.record(
        "derivations-preserve-algebra",
        failure,
        format!("{} derivations on {} monomials", derivations.len(), members.len()),
    );

    let mut failure = None;
    let mut n = 0;
    for c in &report.facets {
        if let Some(sl) = &c.slice {
            n += 1;
            let one = AlgebraElement::one(monoid.rank());
            let op: Operator = sl.derivation.clone().into();
            if op.apply(&AlgebraElement::monomial(sl.slice.clone()), 2)? != one {
                failure = Some(format!("slice x^{} of facet {} is not mapped to 1", sl.slice, c.facet));
            }
        }
    }
    s.record("slices", failure, format!("{n} slice derivations"));

    match &report.ml_face {
        Some(face) => {
            let mut failure = None;
            for (name, d) in &derivations {
                let op: Operator = d.clone().into();
                if !alg.vanishes_on_face(&op, face, &b, 4)? {
                    failure = Some(format!("{name} does not vanish on the ML face"));
                }
            }
            s.record(
                "ml-face-kernel",
                failure,
                format!("{} derivations vanish on the ML face up to degree {b}", derivations.len()),
            );
        }
        None => s.record("ml-face-kernel", None, "skipped: ML face undecided".into()),
    }

    s.record(
        "ml-in-ml-star",
        (report.ml_in_ml_star == Some(false)).then(|| "ML face is not a face of the ML* face".into()),
        match report.ml_in_ml_star {
            Some(_) => "ML face is a face of the ML* face".into(),
            None => "skipped: a face is undecided".into(),
        },
    );

    if let Some(split) = &report.split {
        let rows: Vec<Vec<BigInt>> = split.affine_vectors.iter().map(|v| v.coords().to_vec()).collect();
        let indep = rows.is_empty() || rank_of_rows(&rows) == rows.len();
        s.record(
            "affine-rays-independent",
            (!indep || split.k > monoid.rank()).then(|| "affine rays are dependent".into()),
            format!("k = {}", split.k),
        );
        let bad = points
            .iter()
            .find(|p| split_membership(&report, p) != Some(monoid.contains(p)));
        s.record(
            "split-reconstruction",
            bad.map(|p| format!("splitting disagrees with membership at {p}")),
            format!("{} points", points.len()),
        );
    }

    let doc = ReportDocument::new(input, &report);
    let json = doc.to_json();
    let again = ReportDocument::new(input, &analyze(monoid, bounds, exact_only)?).to_json();
    let round = ReportDocument::from_json(&json).ok();
    s.record(
        "report-round-trip",
        if round.as_ref() != Some(&doc) {
            Some("report does not parse back to itself".into())
        } else if again != json {
            Some("two runs gave different JSON".into())
        } else {
            None
        },
        format!("{} bytes", json.len()),
    );

    Ok(CheckReport {
        degree_bound: b,
        checks: s.checks,
    })
}

/// Nilpotency index predicted for a root derivation on `χ^m`.
pub fn predicted_index(d: &HomogeneousDerivation, m: &LatticePoint) -> Nilpotency {
    match usize::try_from(pair(m, &d.rho)) {
        Ok(k) => Nilpotency::Index(k + 1),
        Err(_) => Nilpotency::NeverVanishes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_suites_pass() {
        for text in [
            r#"{"rank":2,"generators":[[1,0],[0,2],[0,3]]}"#,
            r#"{"rank":2,"generators":[[1,0],[1,2],[0,3],[0,4],[0,5]]}"#,
            r#"{"rank":1,"generators":[[2],[3]]}"#,
        ] {
            let input = MonoidInputDocument::parse(text).unwrap();
            let m = input.monoid().unwrap();
            let b = input.bounds_override().resolve(&m);
            let r = run_checks(&input, &m, &b, false).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}
